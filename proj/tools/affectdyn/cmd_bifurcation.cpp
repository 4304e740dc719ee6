#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <affect/bifurcation.hpp>
#include <affect/errors.hpp>
#include <affect/io.hpp>

#include "common.hpp"

namespace affectdyn {
namespace {

std::vector<double> parse_sweep(const std::string& spec, const char* flag) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  try {
    while (std::getline(ss, item, ':')) parts.push_back(affect::parse_double(item));
  } catch (const affect::ParseError&) {
    throw UsageError(std::string(flag) + " expects start:end:step");
  }
  if (parts.size() != 3 || !(parts[2] > 0) || parts[1] < parts[0]) {
    throw UsageError(std::string(flag) + " expects start:end:step with step > 0 and end >= start");
  }
  std::vector<double> out;
  const double n = std::floor((parts[1] - parts[0]) / parts[2] + 1e-9);
  if (n > 1e7) throw UsageError(std::string(flag) + " has too many points");
  for (long i = 0; i <= static_cast<long>(n); ++i) out.push_back(parts[0] + double(i) * parts[2]);
  return out;
}

json fixed_point_json(double lambda, double beta) {
  const auto fp = affect::fixed_points(lambda, beta);
  json pts = json::array();
  auto add = [&](const char* name, const affect::FixedPoint& p) {
    pts.push_back({{"name", name}, {"p", p.p}, {"stability", affect::to_string(p.stability)}});
  };
  add("p0", fp.p0);
  if (fp.p_minus) add("p_minus", *fp.p_minus);
  if (fp.p_plus) add("p_plus", *fp.p_plus);
  return {{"lambda", lambda},
          {"beta", beta},
          {"region", affect::to_string(fp.region.region)},
          {"boundaries",
           {{"beta_eq_lambda_minus_1", fp.region.on_lambda_minus_one},
            {"beta_eq_lambda_sq_over_4", fp.region.on_lambda_squared_quarter},
            {"lambda_eq_2", fp.region.on_lambda_two}}},
          {"fixed_points", pts}};
}

void write_sweep(std::ostream& out, const std::vector<double>& lambdas,
                 const std::vector<double>& betas) {
  out << "lambda,beta,region,p_minus,p_plus,merged,on_beta_eq_lambda_minus_1,"
         "on_beta_eq_lambda_sq_over_4\n";
  for (double l : lambdas) {
    for (double b : betas) {
      if (!(l > 0) || !(b > 0)) continue;
      const auto fp = affect::fixed_points(l, b);
      const bool merged =
          fp.p_plus && fp.p_plus->stability == affect::Stability::kLeftUnstableSaddle;
      out << affect::format_double(l) << ',' << affect::format_double(b) << ','
          << affect::to_string(fp.region.region) << ','
          << (fp.p_minus ? affect::format_double(fp.p_minus->p) : "") << ','
          << (fp.p_plus ? affect::format_double(fp.p_plus->p) : "") << ',' << merged << ','
          << fp.region.on_lambda_minus_one << ',' << fp.region.on_lambda_squared_quarter << '\n';
    }
  }
}

json hopf_branch_json(double lambda, double beta, double g, int k) {
  const auto hp = affect::hopf_point(lambda, beta, g, k);
  json b = {{"k", k}, {"omega", hp->omega}, {"t0", hp->t0},
            {"dispersion_residual", hp->residual}};
  try {
    const double a = affect::lyapunov_general(lambda, beta, g, k);
    b["lyapunov"] = a;
    b["criticality"] = affect::to_string(a < 0   ? affect::Criticality::kSupercritical
                                         : a > 0 ? affect::Criticality::kSubcritical
                                                 : affect::Criticality::kUndetermined);
  } catch (const affect::LinearSolveFailure&) {
    b["lyapunov"] = nullptr;
    b["criticality"] = affect::to_string(affect::Criticality::kUndetermined);
  }
  return b;
}

}  // namespace

void add_bifurcation_commands(CLI::App& app, const GlobalOptions&) {
  {
    struct Opts {
      double lambda = 0;
      std::optional<double> beta;
      std::string beta_sweep, lambda_sweep, out;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = app.add_subcommand("fixed-points", "Equilibria and region of the reduced equation");
    auto* lambda = cmd->add_option("--lambda", o->lambda, "Effective drive");
    auto* beta = cmd->add_option("--beta", o->beta, "Sigmoid slope");
    auto* sweep = cmd->add_option("--beta-sweep", o->beta_sweep,
                                  "start:end:step; writes a region-map CSV");
    cmd->add_option("--lambda-sweep", o->lambda_sweep,
                    "start:end:step; with --beta-sweep gives a 2-D map (ignores --lambda)");
    cmd->add_option("--out", o->out, "CSV file for sweeps (default stdout)");
    beta->excludes(sweep);
    cmd->callback([o, lambda, beta, sweep] {
      if (beta->count() == 0 && sweep->count() == 0) {
        throw UsageError("fixed-points needs --beta or --beta-sweep");
      }
      if (lambda->count() == 0 && (o->beta || o->lambda_sweep.empty())) {
        throw UsageError("fixed-points needs --lambda (or --lambda-sweep with --beta-sweep)");
      }
      if (o->beta) {
        std::cout << dump(fixed_point_json(o->lambda, *o->beta));
        return;
      }
      const auto betas = parse_sweep(o->beta_sweep, "--beta-sweep");
      const auto lambdas = o->lambda_sweep.empty() ? std::vector<double>{o->lambda}
                                                   : parse_sweep(o->lambda_sweep, "--lambda-sweep");
      if (o->out.empty()) {
        write_sweep(std::cout, lambdas, betas);
      } else {
        std::ofstream f(o->out, std::ios::binary);
        if (!f) throw affect::Error("cannot open " + o->out);
        write_sweep(f, lambdas, betas);
      }
    });
  }
  {
    struct Opts {
      double lambda = 0, beta = 0, g = 1;
      int k_max = 0;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = app.add_subcommand("hopf", "Hopf points of the reduced equation");
    cmd->add_option("--lambda", o->lambda)->required();
    cmd->add_option("--beta", o->beta)->required();
    cmd->add_option("--g", o->g, "Self-comparison gain")->capture_default_str();
    cmd->add_option("--k-max", o->k_max, "Report branches k = 0..k_max")
        ->check(CLI::NonNegativeNumber);
    cmd->callback([o] {
      json out = {{"lambda", o->lambda}, {"beta", o->beta}, {"g", o->g}};
      out["exists"] = affect::hopf_exists(o->lambda, o->beta, o->g);
      json branches = json::array();
      if (out["exists"]) {
        for (int k = 0; k <= o->k_max; ++k) {
          branches.push_back(hopf_branch_json(o->lambda, o->beta, o->g, k));
        }
        const auto& b0 = branches.front();
        out["omega"] = b0["omega"];
        out["t0"] = b0["t0"];
      }
      out["branches"] = branches;
      std::cout << dump(out);
    });
  }
  {
    struct Opts {
      double lambda = 0, beta = 0, g = 1;
      int k = 0;
      std::string method = "general";
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = app.add_subcommand("lyapunov", "First Lyapunov coefficient at a Hopf point");
    cmd->add_option("--lambda", o->lambda)->required();
    cmd->add_option("--beta", o->beta)->required();
    cmd->add_option("--g", o->g)->capture_default_str();
    cmd->add_option("--k", o->k, "Hopf branch")->check(CLI::NonNegativeNumber);
    cmd->add_option("--method", o->method, "general (any g) or g1 (closed form, g = 1)")
        ->check(CLI::IsMember({"general", "g1"}))
        ->capture_default_str();
    cmd->callback([o] {
      json out = {{"lambda", o->lambda}, {"beta", o->beta}, {"g", o->g}, {"k", o->k},
                  {"method", o->method}};
      double a;
      if (o->method == "g1") {
        if (o->g != 1) throw UsageError("--method g1 requires --g 1");
        a = affect::lyapunov_g1(o->lambda, o->beta, o->k);
      } else {
        const auto nf = affect::center_manifold_terms(o->lambda, o->beta, o->g, o->k);
        a = nf.lyapunov;
        out["omega"] = nf.omega;
        out["t0"] = nf.t0;
        out["terms"] = {{"A0", nf.a0}, {"A1", nf.a1}, {"B2", nf.b2}, {"B3", nf.b3},
                        {"psi1", nf.psi1}, {"psi2", nf.psi2}, {"h11", nf.h11},
                        {"h12", nf.h12}, {"h22", nf.h22},
                        {"normal_form_coefficient", nf.lyapunov_from_normal_form}};
        if (o->g == 1) {
          try {
            out["g1_closed_form"] = affect::lyapunov_g1(o->lambda, o->beta, o->k);
          } catch (const affect::OutOfRegion&) {
          }
        }
      }
      out["coefficient"] = a;
      out["criticality"] = affect::to_string(a < 0   ? affect::Criticality::kSupercritical
                                             : a > 0 ? affect::Criticality::kSubcritical
                                                     : affect::Criticality::kUndetermined);
      std::cout << dump(out);
    });
  }
  {
    struct Opts {
      double lambda = 0, g = 1;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = app.add_subcommand("bt", "Bogdanov-Takens point");
    cmd->add_option("--lambda", o->lambda)->required();
    cmd->add_option("--g", o->g)->required();
    cmd->callback([o] {
      json out = {{"lambda", o->lambda}, {"g", o->g}};
      if (const auto bt = affect::bt_point(o->lambda, o->g)) {
        out["exists"] = true;
        out["beta"] = bt->beta;
        out["t0"] = bt->t0;
      } else {
        out["exists"] = false;
      }
      std::cout << dump(out);
    });
  }
}

}  // namespace affectdyn
