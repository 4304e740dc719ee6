#include <cmath>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>

#include <affect/errors.hpp>
#include <affect/io.hpp>
#include <affect/segmentation.hpp>
#include <affect/spectral.hpp>
#include <affect/statistics.hpp>

#include "common.hpp"

namespace affectdyn {
namespace {

using affect::format_double;

json skipped(const std::string& reason) {
  std::cerr << "notice: " << reason << '\n';
  return {{"skipped", true}, {"reason", reason}};
}

}  // namespace

void add_analyze_command(CLI::App& app, const GlobalOptions& global) {
  struct Opts {
    std::string input, out, column;
    double window = 20.0, threshold = 0.05, oversample = 4.0;
    std::size_t half_width = 3, min_phase = 2;
    std::optional<double> confirm;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("analyze",
                                 "Trend, variability, segmentation and oscillation analysis");
  cmd->add_option("--input", o->input, "Series CSV (t,value or t,p,n,eb)")->required();
  cmd->add_option("--out", o->out, "Output directory");
  cmd->add_option("--column", o->column, "Column to analyze (default eb if present, else first)");
  cmd->add_option("--window", o->window, "Sliding Lomb-Scargle window, in time units")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--threshold", o->threshold, "Significance level")
      ->check(CLI::Range(1e-12, 0.999999))
      ->capture_default_str();
  cmd->add_option("--confirm", o->confirm,
                  "Whole-span level that confirms an oscillation candidate (default --threshold)")
      ->check(CLI::Range(1e-12, 0.999999));
  cmd->add_option("--half-width", o->half_width, "Sliding mean/std half width, in samples")
      ->capture_default_str();
  cmd->add_option("--min-phase", o->min_phase, "Minimum samples per segment")
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();
  cmd->add_option("--oversample", o->oversample, "Frequency grid oversampling")
      ->check(CLI::Range(1.0, 64.0))
      ->capture_default_str();
  cmd->callback([o, &global] {
    const auto raw = affect::read_trajectory_csv(std::filesystem::path(o->input));
    std::string col = o->column;
    if (col.empty()) col = raw.has_column("eb") ? "eb" : raw.names().at(0);
    if (!raw.has_column(col)) throw UsageError("input has no column '" + col + "'");
    const auto series = affect::Trajectory::scalar(raw.times(), raw.column(col), col);
    if (series.empty()) throw affect::InsufficientData("input series is empty");
    const auto dir = resolve_output_dir(o->out, global);
    const std::size_t n = series.size();

    {
      const auto m = affect::sliding_mean(series, o->half_width);
      const auto s = n >= 2 ? affect::sliding_std(series, o->half_width).values()
                            : std::vector<double>(n, 0.0);
      std::ostringstream out;
      out << "t,value,sliding_mean,sliding_std\n";
      for (std::size_t i = 0; i < n; ++i) {
        out << format_double(series.times()[i]) << ',' << format_double(series.values()[i]) << ','
            << format_double(m.values()[i]) << ',' << format_double(s[i]) << '\n';
      }
      affect::write_text_file(dir / "sliding.csv", out.str());
    }

    json seg;
    if (n < 2 * o->min_phase) {
      seg = skipped("segmentation needs at least " + std::to_string(2 * o->min_phase) +
                    " samples, series has " + std::to_string(n));
    } else {
      const auto r = affect::segment_variance(series, o->min_phase, o->threshold, o->half_width);
      seg = {{"n_samples", n}, {"split_index", r.split_index},
             {"p_value", r.p_value}, {"significant", r.significant},
             {"threshold", o->threshold}, {"degenerate", r.degenerate}};
      seg["statistic"] = std::isfinite(r.statistic) ? json(r.statistic) : json(nullptr);
      if (!r.degenerate) {
        seg["split_time"] = series.times()[r.split_index - 1];
        const auto c = affect::centered_series(series, o->half_width).values();
        const std::span<const double> all(c);
        const auto a = all.first(r.split_index), b = all.subspan(r.split_index);
        seg["phase1"] = {{"n", a.size()}, {"std", std::sqrt(affect::sample_variance(a))}};
        seg["phase2"] = {{"n", b.size()}, {"std", std::sqrt(affect::sample_variance(b))}};
        try {
          const auto f = affect::f_test_variance(a, b);
          seg["f_test"] = {{"F", f.statistic}, {"p_value", f.p_value}};
        } catch (const affect::ZeroVariance&) {
          seg["f_test"] = nullptr;
        }
      }
    }
    affect::write_text_file(dir / "segmentation.json", dump(seg));

    json osc;
    std::vector<double> grid;
    bool spectral = n >= 3;
    if (spectral) {
      try {
        grid = affect::default_frequency_grid(series.times(), o->oversample);
        const auto pg = affect::lomb_scargle(series, grid);
        std::ostringstream out;
        out << "omega,power,false_alarm\n";
        for (std::size_t i = 0; i < grid.size(); ++i) {
          out << format_double(grid[i]) << ',' << format_double(pg.powers[i]) << ','
              << format_double(affect::false_alarm_probability(pg.powers[i],
                                                               double(pg.m_independent)))
              << '\n';
        }
        affect::write_text_file(dir / "periodogram.csv", out.str());
        osc["whole_series"] = {{"peak_omega", pg.peak_omega()},
                               {"peak_period", 2 * std::numbers::pi / pg.peak_omega()},
                               {"peak_power", pg.peak_power()},
                               {"false_alarm", pg.peak_false_alarm()}};
      } catch (const affect::ZeroVariance&) {
        spectral = false;
        osc = skipped("series is constant; no periodogram");
      } catch (const affect::InsufficientData& e) {
        spectral = false;
        osc = skipped(e.what());
      }
    } else {
      osc = skipped("periodogram needs at least 3 samples");
    }

    if (spectral) {
      if (series.times().back() - series.times().front() < o->window) {
        osc["sliding"] = skipped("series span is shorter than the sliding window");
      } else {
        const auto sl = affect::sliding_lomb_scargle(series, o->window, grid, global.threads);
        std::ostringstream out;
        out << "t,omega,power\n";
        for (std::size_t ci = 0; ci < sl.centers.size(); ++ci) {
          for (std::size_t wi = 0; wi < grid.size(); ++wi) {
            out << format_double(sl.centers[ci]) << ',' << format_double(grid[wi]) << ','
                << format_double(sl.power(ci, wi)) << '\n';
          }
        }
        affect::write_text_file(dir / "sliding_ls.csv", out.str());
        const auto d = affect::detect_oscillation_phase(series, o->window, o->threshold, grid, o->confirm);
        osc["present"] = d.present;
        osc["candidate"] = d.candidate;
        if (d.candidate) {
          osc["span_start"] = d.span_start;
          osc["span_end"] = d.span_end;
          osc["omega"] = d.omega;
          osc["period"] = d.period;
          osc["p_value"] = d.p_value;
        }
        osc["window"] = o->window;
        osc["threshold"] = o->threshold;
        osc["confirm"] = o->confirm.value_or(o->threshold);
      }
    }
    affect::write_text_file(dir / "oscillation.json", dump(osc));
    std::cout << "wrote analysis of '" << col << "' (" << n << " samples) to " << dir.string()
              << '\n';
  });
}

}  // namespace affectdyn
