#include "affect/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "affect/errors.hpp"

namespace affect {
namespace {

using nlohmann::json;

std::size_t line_at(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
}

class Reader {
 public:
  explicit Reader(const std::string& text) : text_(text) {
    try {
      root_ = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(e.what(), line_at(text, e.byte == 0 ? 0 : e.byte - 1));
    }
    if (!root_.is_object()) throw ParseError("config must be a JSON object", 1);
  }

  const json& root() const { return root_; }

  [[noreturn]] void fail(const std::string& field, const std::string& msg) const {
    const std::size_t pos = text_.find("\"" + leaf(field) + "\"");
    const std::size_t line = pos == std::string::npos ? 1 : line_at(text_, pos);
    throw ValidationError("line " + std::to_string(line) + ": field '" + field + "' " + msg);
  }

  void only_keys(const json& obj, const std::string& where, std::set<std::string> allowed) const {
    if (!obj.is_object()) fail(where, "must be an object");
    for (const auto& [key, _] : obj.items()) {
      if (!allowed.count(key)) fail(join(where, key), "is not a recognized field");
    }
  }

  double number(const json& obj, const std::string& where, const std::string& key,
                double fallback) const {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number()) fail(join(where, key), "must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(join(where, key), "must be finite");
    return d;
  }

  std::optional<double> optional_number(const json& obj, const std::string& where,
                                        const std::string& key) const {
    if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
    return number(obj, where, key, 0.0);
  }

  std::size_t count(const json& obj, const std::string& where, const std::string& key,
                    std::size_t fallback) const {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      fail(join(where, key), "must be a nonnegative integer");
    }
    return v.get<std::size_t>();
  }

  std::optional<std::uint64_t> seed() const {
    if (!root_.contains("seed") || root_.at("seed").is_null()) return std::nullopt;
    const auto& v = root_.at("seed");
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      fail("seed", "must be a nonnegative integer");
    }
    return v.get<std::uint64_t>();
  }

  std::vector<double> numbers(const std::string& key) const {
    if (!root_.contains(key)) fail(key, "is required");
    const auto& arr = root_.at(key);
    if (!arr.is_array() || arr.empty()) fail(key, "must be a nonempty array of numbers");
    std::vector<double> out;
    for (const auto& v : arr) {
      if (!v.is_number()) fail(key, "must be a nonempty array of numbers");
      out.push_back(v.get<double>());
    }
    return out;
  }

  static std::string join(const std::string& where, const std::string& key) {
    return where.empty() ? key : where + "." + key;
  }

 private:
  static std::string leaf(const std::string& field) {
    const auto dot = field.rfind('.');
    std::string s = dot == std::string::npos ? field : field.substr(dot + 1);
    const auto bracket = s.find('[');
    return bracket == std::string::npos ? s : s.substr(0, bracket);
  }

  const std::string& text_;
  json root_;
};

FullModelParams read_full_params(const Reader& r) {
  FullModelParams p;
  if (!r.root().contains("params")) return p;
  const auto& o = r.root().at("params");
  r.only_keys(o, "params",
              {"alpha", "beta", "c", "lambda_prime", "tau_p", "tau_n", "g_prime", "t_d",
               "therapy_shift_a"});
  p.alpha = r.number(o, "params", "alpha", p.alpha);
  p.beta = r.number(o, "params", "beta", p.beta);
  p.c = r.number(o, "params", "c", p.c);
  p.lambda_prime = r.number(o, "params", "lambda_prime", p.lambda_prime);
  p.tau_p = r.number(o, "params", "tau_p", p.tau_p);
  p.tau_n = r.number(o, "params", "tau_n", p.tau_n);
  p.g_prime = r.number(o, "params", "g_prime", p.g_prime);
  p.t_d = r.number(o, "params", "t_d", p.t_d);
  p.therapy_shift_a = r.number(o, "params", "therapy_shift_a", p.therapy_shift_a);
  try {
    p.validate();
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    r.fail("params." + msg.substr(0, msg.find(' ')), msg.substr(msg.find(' ') + 1));
  }
  return p;
}

ReducedParams read_reduced_params(const Reader& r) {
  ReducedParams p;
  if (!r.root().contains("params")) return p;
  const auto& o = r.root().at("params");
  r.only_keys(o, "params", {"lambda", "beta", "g", "t0"});
  p.lambda = r.number(o, "params", "lambda", p.lambda);
  p.beta = r.number(o, "params", "beta", p.beta);
  p.g = r.number(o, "params", "g", p.g);
  p.t0 = r.number(o, "params", "t0", p.t0);
  try {
    p.validate();
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    r.fail("params." + msg.substr(0, msg.find(' ')), msg.substr(msg.find(' ') + 1));
  }
  return p;
}

StressScenario read_scenario(const Reader& r, const json& o) {
  StressScenario s;
  r.only_keys(o, "scenario",
              {"therapy_start", "therapy_end", "therapy_shift", "t_d_after_therapy",
               "stress_start", "stress_duration", "stress_multiplier", "horizon",
               "final_window"});
  s.therapy_start = r.number(o, "scenario", "therapy_start", s.therapy_start);
  s.therapy_end = r.number(o, "scenario", "therapy_end", s.therapy_end);
  s.therapy_shift = r.number(o, "scenario", "therapy_shift", s.therapy_shift);
  s.t_d_after_therapy = r.number(o, "scenario", "t_d_after_therapy", s.t_d_after_therapy);
  s.stress_start = r.number(o, "scenario", "stress_start", s.stress_start);
  s.stress_duration = r.number(o, "scenario", "stress_duration", s.stress_duration);
  s.stress_multiplier = r.number(o, "scenario", "stress_multiplier", s.stress_multiplier);
  s.horizon = r.number(o, "scenario", "horizon", s.horizon);
  s.final_window = r.number(o, "scenario", "final_window", s.final_window);
  if (!(s.final_window > 0)) r.fail("scenario.final_window", "must be positive");
  try {
    (void)s.schedule();
  } catch (const ValidationError& e) {
    r.fail("scenario", e.what());
  }
  return s;
}

InterventionSchedule read_schedule(const Reader& r, const json& arr) {
  if (!arr.is_array()) r.fail("schedule", "must be an array of segments");
  std::vector<ScheduleSegment> segs;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "schedule[" + std::to_string(i) + "]";
    const auto& o = arr[i];
    r.only_keys(o, where, {"t_start", "t_end", "a", "t_d", "neg_rate_multiplier"});
    if (!o.contains("t_start") || !o.contains("t_end")) {
      r.fail(where, "needs t_start and t_end");
    }
    ScheduleSegment s;
    s.t_start = r.number(o, where, "t_start", 0);
    s.t_end = r.number(o, where, "t_end", 0);
    s.a = r.number(o, where, "a", 0);
    s.t_d = r.optional_number(o, where, "t_d");
    s.neg_rate_multiplier = r.number(o, where, "neg_rate_multiplier", 1);
    segs.push_back(s);
  }
  try {
    return InterventionSchedule(std::move(segs));
  } catch (const ValidationError& e) {
    r.fail("schedule", e.what());
  }
}

}  // namespace

const char* to_string(SimulateConfig::Mode m) noexcept {
  switch (m) {
    case SimulateConfig::Mode::kJump: return "jump";
    case SimulateConfig::Mode::kFull: return "full";
    case SimulateConfig::Mode::kReduced: return "reduced";
  }
  return "?";
}

double default_dt(const SimulateConfig& cfg) {
  if (cfg.mode == SimulateConfig::Mode::kReduced) {
    return cfg.reduced.t0 > 0 ? cfg.reduced.t0 / 20 : 0.01;
  }
  return std::min(cfg.full.tau_p, cfg.full.tau_n) / 50;
}

SimulateConfig parse_simulate_config(const std::string& text) {
  const Reader r(text);
  const auto& root = r.root();
  r.only_keys(root, "",
              {"mode", "params", "initial", "t_end", "dt", "record_every", "jump_scale",
               "seed", "schedule", "scenario"});
  SimulateConfig cfg;
  if (root.contains("mode")) {
    const auto& m = root.at("mode");
    if (m == "jump") {
      cfg.mode = SimulateConfig::Mode::kJump;
    } else if (m == "full") {
      cfg.mode = SimulateConfig::Mode::kFull;
    } else if (m == "reduced") {
      cfg.mode = SimulateConfig::Mode::kReduced;
    } else {
      r.fail("mode", "must be \"jump\", \"full\" or \"reduced\"");
    }
  }
  const bool reduced = cfg.mode == SimulateConfig::Mode::kReduced;
  if (reduced) {
    cfg.reduced = read_reduced_params(r);
  } else {
    cfg.full = read_full_params(r);
  }

  std::optional<double> horizon;
  if (root.contains("schedule") && root.contains("scenario")) {
    r.fail("scenario", "cannot be combined with schedule");
  }
  if (root.contains("schedule")) {
    if (reduced) r.fail("schedule", "does not apply to the reduced equation");
    cfg.schedule = read_schedule(r, root.at("schedule"));
  }
  if (root.contains("scenario")) {
    if (reduced) r.fail("scenario", "does not apply to the reduced equation");
    const auto sc = read_scenario(r, root.at("scenario"));
    cfg.schedule = sc.schedule();
    horizon = sc.horizon;
  }

  if (root.contains("initial")) {
    const auto& o = root.at("initial");
    if (reduced) {
      r.only_keys(o, "initial", {"p"});
      cfg.initial_p = r.number(o, "initial", "p", 0.0);
      if (!(cfg.initial_p >= 0 && cfg.initial_p <= 1)) r.fail("initial.p", "must lie in [0, 1]");
    } else if (o.is_object() && o.contains("eb")) {
      r.only_keys(o, "initial", {"eb"});
      const double eb = r.number(o, "initial", "eb", 0.0);
      if (!(eb >= 0 && eb <= 1)) r.fail("initial.eb", "must lie in [0, 1]");
      const double total = equilibrium_total_affect(eb, cfg.full);
      if (!(total > kTotalAffectEpsilon)) r.fail("initial.eb", "gives zero total affect");
      cfg.initial = {total * eb, total * (1 - eb)};
    } else {
      r.only_keys(o, "initial", {"p", "n"});
      cfg.initial.p = r.number(o, "initial", "p", 0.0);
      cfg.initial.n = r.number(o, "initial", "n", 0.0);
      if (!(cfg.initial.p >= 0)) r.fail("initial.p", "must be >= 0");
      if (!(cfg.initial.n >= 0)) r.fail("initial.n", "must be >= 0");
      if (!(cfg.initial.p + cfg.initial.n > kTotalAffectEpsilon)) {
        r.fail("initial", "total affect must be positive");
      }
    }
  } else if (!reduced) {
    r.fail("initial", "is required");
  }

  if (root.contains("t_end")) {
    cfg.t_end = r.number(root, "", "t_end", 0.0);
  } else if (horizon) {
    cfg.t_end = *horizon;
  } else {
    r.fail("t_end", "is required");
  }
  if (!(cfg.t_end > 0)) r.fail("t_end", "must be positive");
  cfg.dt = r.optional_number(root, "", "dt");
  if (cfg.dt && !(*cfg.dt > 0)) r.fail("dt", "must be positive");
  cfg.record_every = r.count(root, "", "record_every", 1);
  if (cfg.record_every == 0) r.fail("record_every", "must be >= 1");
  cfg.jump_scale = r.number(root, "", "jump_scale", 1.0);
  if (!(cfg.jump_scale > 0)) r.fail("jump_scale", "must be positive");
  if (cfg.mode != SimulateConfig::Mode::kJump && root.contains("jump_scale")) {
    r.fail("jump_scale", "applies only to mode \"jump\"");
  }
  cfg.seed = r.seed();
  return cfg;
}

MonteCarloConfig parse_montecarlo_config(const std::string& text) {
  const Reader r(text);
  const auto& root = r.root();
  r.only_keys(root, "",
              {"params", "betas", "js", "runs_per_cell", "stress_duration", "scenario", "dt",
               "seed"});
  MonteCarloConfig cfg;
  cfg.base = read_full_params(r);
  cfg.betas = r.numbers("betas");
  cfg.js = r.numbers("js");
  for (double b : cfg.betas) {
    if (!(b > 0)) r.fail("betas", "values must be > 0");
  }
  for (double j : cfg.js) {
    if (!(j >= 1)) r.fail("js", "values must be >= 1");
  }
  auto has_duplicates = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) != v.end();
  };
  if (has_duplicates(cfg.betas)) r.fail("betas", "contains duplicate cells");
  if (has_duplicates(cfg.js)) r.fail("js", "contains duplicate cells");
  cfg.runs_per_cell = r.count(root, "", "runs_per_cell", cfg.runs_per_cell);
  if (cfg.runs_per_cell == 0) r.fail("runs_per_cell", "must be >= 1");
  cfg.stress_duration = r.number(root, "", "stress_duration", cfg.stress_duration);
  if (!(cfg.stress_duration > 0)) r.fail("stress_duration", "must be positive");
  if (root.contains("scenario")) cfg.scenario = read_scenario(r, root.at("scenario"));
  cfg.dt = r.number(root, "", "dt", cfg.dt);
  if (!(cfg.dt > 0)) r.fail("dt", "must be positive");
  cfg.seed = r.seed();
  {
    StressScenario check = cfg.scenario;
    check.stress_duration = cfg.stress_duration;
    try {
      (void)check.schedule();
    } catch (const ValidationError& e) {
      r.fail("stress_duration", e.what());
    }
  }
  return cfg;
}

}  // namespace affect
