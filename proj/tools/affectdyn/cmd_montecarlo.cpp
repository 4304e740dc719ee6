#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include <affect/config.hpp>
#include <affect/errors.hpp>
#include <affect/io.hpp>
#include <affect/montecarlo.hpp>

#include "common.hpp"

namespace affectdyn {
namespace {

using CellKey = std::pair<std::size_t, std::size_t>;

struct Row {
  double fraction = 0;
  std::size_t runs = 0;
};

std::string grid_csv(const affect::MonteCarloConfig& cfg, const std::map<CellKey, Row>& done) {
  std::ostringstream out;
  out << "beta,j,fraction,runs\n";
  for (const auto& [key, row] : done) {
    out << affect::format_double(cfg.betas[key.first]) << ','
        << affect::format_double(cfg.js[key.second]) << ',' << affect::format_double(row.fraction)
        << ',' << row.runs << '\n';
  }
  return out.str();
}

void write_atomically(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  affect::write_text_file(tmp, text);
  std::filesystem::rename(tmp, path);
}

// Reads completed cells of an earlier (possibly partial) run of the same grid.
std::map<CellKey, Row> load_grid(const std::filesystem::path& path,
                                 const affect::MonteCarloConfig& cfg) {
  std::map<CellKey, Row> done;
  std::ifstream in(path, std::ios::binary);
  std::string line;
  std::size_t number = 0;
  if (!std::getline(in, line) || line != "beta,j,fraction,runs") {
    throw affect::ParseError("unexpected header in " + path.string(), 1);
  }
  number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (f.size() != 4) throw affect::ParseError("expected 4 fields", number);
    const double beta = affect::parse_double(f[0], number);
    const double j = affect::parse_double(f[1], number);
    Row row{affect::parse_double(f[2], number),
            static_cast<std::size_t>(affect::parse_double(f[3], number))};
    std::size_t bi = cfg.betas.size(), ji = cfg.js.size();
    for (std::size_t i = 0; i < cfg.betas.size(); ++i) {
      if (cfg.betas[i] == beta) bi = i;
    }
    for (std::size_t i = 0; i < cfg.js.size(); ++i) {
      if (cfg.js[i] == j) ji = i;
    }
    if (bi == cfg.betas.size() || ji == cfg.js.size()) {
      throw affect::ValidationError("line " + std::to_string(number) +
                                    ": cell is not part of the configured grid");
    }
    if (row.runs != cfg.runs_per_cell) {
      throw affect::ValidationError("line " + std::to_string(number) +
                                    ": runs differ from runs_per_cell; cannot resume");
    }
    if (!done.emplace(CellKey{bi, ji}, row).second) {
      throw affect::ValidationError("line " + std::to_string(number) + ": duplicate cell");
    }
  }
  return done;
}

}  // namespace

void add_montecarlo_command(CLI::App& app, const GlobalOptions& global) {
  struct Opts {
    std::string config, out;
    bool resume = false;
    std::size_t max_cells = 0;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("montecarlo", "Stress-resilience grid over (beta, j)");
  cmd->add_option("--config", o->config, "JSON grid configuration")->required();
  cmd->add_option("--out", o->out, "Output directory");
  cmd->add_flag("--resume", o->resume, "Keep cells already present in grid.csv");
  cmd->add_option("--max-cells", o->max_cells, "Stop after computing this many cells (0 = all)");
  cmd->callback([o, &global] {
    const std::string text = affect::read_text_file(o->config);
    const auto cfg = affect::parse_montecarlo_config(text);
    const auto dir = resolve_output_dir(o->out, global);
    const auto grid_path = dir / "grid.csv";
    const auto meta_path = dir / "metadata.json";
    std::optional<std::uint64_t> previous_seed;
    const bool resuming = o->resume && std::filesystem::exists(grid_path);
    if (resuming && std::filesystem::exists(meta_path)) {
      const auto old = json::parse(affect::read_text_file(meta_path));
      if (old.contains("seed")) previous_seed = old.at("seed").get<std::uint64_t>();
    }
    const std::uint64_t seed =
        !global.seed && !cfg.seed && previous_seed ? *previous_seed : resolve_seed(global, cfg.seed);
    if (previous_seed && *previous_seed != seed) {
      throw affect::ValidationError("existing grid was produced with a different seed");
    }

    json meta = {{"command", "montecarlo"},
                 {"version", "0.1.0"},
                 {"seed", seed},
                 {"runs_per_cell", cfg.runs_per_cell},
                 {"stress_duration", cfg.stress_duration},
                 {"dt", cfg.dt},
                 {"basin_rule", "mean EB over final window vs separatrix, +/-0.02 undecided"},
                 {"config", json::parse(text)}};

    std::map<CellKey, Row> done;
    if (resuming) done = load_grid(grid_path, cfg);
    affect::write_text_file(meta_path, dump(meta));

    std::vector<CellKey> todo;
    for (std::size_t bi = 0; bi < cfg.betas.size(); ++bi) {
      for (std::size_t ji = 0; ji < cfg.js.size(); ++ji) {
        if (!done.count({bi, ji})) todo.push_back({bi, ji});
      }
    }
    if (o->max_cells > 0 && todo.size() > o->max_cells) todo.resize(o->max_cells);

    affect::StressGridOptions opts;
    opts.scenario = cfg.scenario;
    opts.dt = cfg.dt;
    std::mutex mutex;
    write_atomically(grid_path, grid_csv(cfg, done));
    affect::parallel_for(todo.size(), global.threads, [&](std::size_t i) {
      const auto [bi, ji] = todo[i];
      const auto cell = affect::run_stress_cell(cfg.base, cfg.betas[bi], cfg.js[ji], bi, ji,
                                                cfg.runs_per_cell, cfg.stress_duration, seed,
                                                opts);
      std::lock_guard lock(mutex);
      done[{bi, ji}] = Row{cell.fraction(), cell.runs};
      write_atomically(grid_path, grid_csv(cfg, done));
    });
    std::cout << "wrote " << grid_path.string() << " (" << done.size() << "/"
              << cfg.betas.size() * cfg.js.size() << " cells)\n";
  });
}

}  // namespace affectdyn
