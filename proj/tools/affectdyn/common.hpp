#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

namespace affectdyn {

using nlohmann::json;

inline constexpr const char* kOutputDirEnv = "AFFECT_OUTPUT_DIR";

/// Flags shared by every subcommand.
struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  std::string output_dir;
};

/// Usage problem detected after parsing (exit status 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Explicit --out, else --output-dir, else $AFFECT_OUTPUT_DIR, else ".".
/// The directory is created if missing.
std::filesystem::path resolve_output_dir(const std::string& explicit_dir,
                                         const GlobalOptions& global);

/// Seed from the command line, else from the config, else freshly generated
/// (announced on stderr).
std::uint64_t resolve_seed(const GlobalOptions& global, std::optional<std::uint64_t> config_seed);

/// Pretty JSON with a trailing newline.
std::string dump(const json& j);

void add_bifurcation_commands(CLI::App& app, const GlobalOptions& global);
void add_simulate_command(CLI::App& app, const GlobalOptions& global);
void add_montecarlo_command(CLI::App& app, const GlobalOptions& global);
void add_analyze_command(CLI::App& app, const GlobalOptions& global);

}  // namespace affectdyn
