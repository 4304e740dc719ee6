#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "affect/stochastic.hpp"
#include "affect/trajectory.hpp"

namespace affect {

/// Shortest-safe text for a double: 17 significant digits, '.' separator.
std::string format_double(double v);

/// Strict full-string parse. Throws ParseError(line) on failure.
double parse_double(std::string_view text, std::size_t line = 0);

/// CSV with header "t,<column names>", LF line endings.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
/// Reads a CSV whose first column is "t". Throws ParseError naming the line.
Trajectory read_trajectory_csv(std::istream& in);

/// CSV "t,sign" with sign +1 or -1, merged in time order.
void write_events_csv(std::ostream& out, const EventStream& events);
EventStream read_events_csv(std::istream& in);

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);
Trajectory read_trajectory_csv(const std::filesystem::path& path);
void write_events_csv(const std::filesystem::path& path, const EventStream& events);
EventStream read_events_csv(const std::filesystem::path& path);

/// Writes the whole string in binary mode. Throws Error on I/O failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace affect
