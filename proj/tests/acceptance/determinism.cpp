#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include <affect/config.hpp>
#include <affect/io.hpp>
#include <affect/stochastic.hpp>

#include "acceptance/criteria.hpp"

namespace acceptance {

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace affect;

namespace {

int affectdyn(const std::string& args, const fs::path& log) {
  const std::string cmd = "'" AFFECTDYN_EXE "' " + args + " >'" + log.string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string quoted(const fs::path& p) { return "'" + p.string() + "'"; }

// Every field after the header must print back to the same text.
bool csv_lossless(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  for (std::size_t number = 2; std::getline(in, line); ++number) {
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      const auto field = line.substr(start, comma - start);
      if (format_double(parse_double(field, number)) != field) return false;
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return true;
}

bool json_lossless(const std::string& text) { return json::parse(text).dump(2) + "\n" == text; }

const char* kSimulateConfig = R"({
  "mode": "jump",
  "params": {"alpha": 10, "beta": 2.7, "c": 0.2, "lambda_prime": 4, "tau_p": 10, "tau_n": 10,
             "g_prime": 13, "t_d": 0},
  "initial": {"eb": 0.094552},
  "scenario": {},
  "dt": 0.1,
  "record_every": 70
})";

const char* kGridConfig = R"({
  "betas": [2.4, 2.8],
  "js": [1, 3],
  "runs_per_cell": 2,
  "scenario": {"horizon": 2100}
})";

}  // namespace

Outcome determinism_round_trip() {
  const auto root = fs::temp_directory_path() / "affect_acceptance_determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  const auto log = root / "log.txt";
  const auto sim_cfg = root / "simulate.json";
  const auto grid_cfg = root / "grid.json";
  write_text_file(sim_cfg, kSimulateConfig);
  write_text_file(grid_cfg, kGridConfig);

  Outcome o{true, {}};
  int codes = 0;
  for (const char* run : {"a", "b"}) {
    codes += affectdyn("--seed 42 simulate --config " + quoted(sim_cfg) + " --out " +
                           quoted(root / "sim" / run), log);
    codes += affectdyn("--seed 42 montecarlo --config " + quoted(grid_cfg) + " --out " +
                           quoted(root / "grid" / run), log);
    codes += affectdyn("analyze --input " + quoted(root / "sim" / "a" / "trajectory.csv") +
                           " --window 140 --oversample 1 --out " + quoted(root / "analyze" / run), log);
  }
  clause(o, codes == 0, fmt("exit codes sum %d", codes));
  if (codes != 0) return o;

  // Same config and seed, byte-identical files.
  int files = 0, differing = 0, csv_bad = 0, json_bad = 0;
  for (const char* dir : {"sim", "grid", "analyze"}) {
    for (const auto& entry : fs::directory_iterator(root / dir / "a")) {
      const auto name = entry.path().filename();
      const auto a = read_text_file(entry.path());
      ++files;
      differing += !fs::exists(root / dir / "b" / name) || read_text_file(root / dir / "b" / name) != a;
      if (name.extension() == ".csv") csv_bad += !csv_lossless(a);
      if (name.extension() == ".json") json_bad += !json_lossless(a);
    }
  }
  clause(o, differing == 0, fmt("%d/%d files differ between identical runs", differing, files));
  clause(o, csv_bad == 0 && json_bad == 0,
         fmt("lossless re-parse failures: %d csv, %d json", csv_bad, json_bad));

  // The written trajectory and events are exactly the library's.
  const auto cfg = parse_simulate_config(kSimulateConfig);
  JumpOptions opts;
  opts.record_every = cfg.record_every;
  const auto lib = simulate_jump(cfg.full, cfg.initial, cfg.t_end, *cfg.dt, cfg.schedule, 42, opts);
  const auto traj = read_trajectory_csv(root / "sim" / "a" / "trajectory.csv");
  const auto events = read_events_csv(root / "sim" / "a" / "events.csv");
  std::ostringstream traj_text, events_text;
  write_trajectory_csv(traj_text, traj);
  write_events_csv(events_text, events);
  clause(o, traj == lib.trajectory && events == lib.events,
         fmt("CLI output equals the library run (%zu samples, %zu events)", traj.size(),
             events.positive_times.size() + events.negative_times.size()));
  clause(o,
         traj_text.str() == read_text_file(root / "sim" / "a" / "trajectory.csv") &&
             events_text.str() == read_text_file(root / "sim" / "a" / "events.csv"),
         "parsed trajectory and events re-serialize to identical bytes");
  return o;
}

}  // namespace acceptance
