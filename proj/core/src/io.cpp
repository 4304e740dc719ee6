#include "affect/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "affect/errors.hpp"

namespace affect {
namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Next non-blank line; returns false at end of input.
bool next_line(std::istream& in, std::string& line, std::size_t& number) {
  while (std::getline(in, line)) {
    ++number;
    if (!trim(line).empty()) return true;
  }
  return false;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(n));
}

double parse_double(std::string_view text, std::size_t line) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("not a number: '" + std::string(text) + "'", line);
  }
  if (!std::isfinite(v)) throw ParseError("non-finite value", line);
  return v;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << 't';
  for (const auto& name : traj.names()) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out << format_double(traj.times()[i]);
    for (std::size_t c = 0; c < traj.num_columns(); ++c) {
      out << ',' << format_double(traj.column(c)[i]);
    }
    out << '\n';
  }
}

Trajectory read_trajectory_csv(std::istream& in) {
  std::string line;
  std::size_t number = 0;
  if (!next_line(in, line, number)) throw ParseError("missing header", number + 1);
  auto header = split_commas(line);
  if (header.size() < 2 || trim(header[0]) != "t") {
    throw ParseError("header must start with 't' and name at least one column", number);
  }
  std::vector<std::string> names;
  for (std::size_t i = 1; i < header.size(); ++i) {
    const auto name = trim(header[i]);
    if (name.empty()) throw ParseError("empty column name", number);
    names.emplace_back(name);
  }
  Trajectory traj(names);
  std::vector<double> row(names.size());
  double prev_t = -INFINITY;
  while (next_line(in, line, number)) {
    const auto fields = split_commas(line);
    if (fields.size() != names.size() + 1) {
      throw ParseError("expected " + std::to_string(names.size() + 1) + " fields, found " +
                           std::to_string(fields.size()),
                       number);
    }
    const double t = parse_double(fields[0], number);
    if (t < prev_t) throw ParseError("time decreases", number);
    prev_t = t;
    for (std::size_t c = 0; c < names.size(); ++c) row[c] = parse_double(fields[c + 1], number);
    traj.push_back(t, row);
  }
  return traj;
}

void write_events_csv(std::ostream& out, const EventStream& events) {
  out << "t,sign\n";
  const auto& pos = events.positive_times;
  const auto& neg = events.negative_times;
  std::size_t i = 0, j = 0;
  while (i < pos.size() || j < neg.size()) {
    if (j == neg.size() || (i < pos.size() && pos[i] <= neg[j])) {
      out << format_double(pos[i++]) << ",1\n";
    } else {
      out << format_double(neg[j++]) << ",-1\n";
    }
  }
}

EventStream read_events_csv(std::istream& in) {
  std::string line;
  std::size_t number = 0;
  if (!next_line(in, line, number)) throw ParseError("missing header", number + 1);
  {
    const auto header = split_commas(line);
    if (header.size() != 2 || trim(header[0]) != "t" || trim(header[1]) != "sign") {
      throw ParseError("header must be 't,sign'", number);
    }
  }
  EventStream ev;
  while (next_line(in, line, number)) {
    const auto fields = split_commas(line);
    if (fields.size() != 2) throw ParseError("expected 2 fields", number);
    const double t = parse_double(fields[0], number);
    const auto sign = trim(fields[1]);
    if (sign == "1" || sign == "+1") {
      ev.positive_times.push_back(t);
    } else if (sign == "-1") {
      ev.negative_times.push_back(t);
    } else {
      throw ParseError("sign must be +1 or -1", number);
    }
  }
  return ev;
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
  auto out = open_out(path);
  write_trajectory_csv(out, traj);
  if (!out) throw Error("write failed: " + path.string());
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_trajectory_csv(in);
}

void write_events_csv(const std::filesystem::path& path, const EventStream& events) {
  auto out = open_out(path);
  write_events_csv(out, events);
  if (!out) throw Error("write failed: " + path.string());
}

EventStream read_events_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_events_csv(in);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  if (!out) throw Error("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace affect
