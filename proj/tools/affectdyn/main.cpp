#include <iostream>

#include <affect/errors.hpp>

#include "common.hpp"

int main(int argc, char** argv) {
  using namespace affectdyn;
  CLI::App app{"affectdyn: affect-balance dynamics, bifurcations and series analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "affectdyn 0.1.0");

  GlobalOptions global;
  app.add_option("--seed", global.seed, "Master RNG seed (overrides the config)");
  app.add_option("--threads", global.threads, "Worker threads, 0 = all cores")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--output-dir", global.output_dir,
                 std::string("Default output directory (else $") + kOutputDirEnv + ")");

  add_bifurcation_commands(app, global);
  add_simulate_command(app, global);
  add_montecarlo_command(app, global);
  add_analyze_command(app, global);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const affect::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 2;
  } catch (const affect::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const affect::InvalidStep& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 2;
  } catch (const affect::ReductionAssumptionViolated& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 2;
  } catch (const affect::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
