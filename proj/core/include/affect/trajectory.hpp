#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace affect {

/// Time-stamped samples of one or more named variables.
///
/// Column 0 is the primary variable (what scalar analyses operate on).
/// Times are nondecreasing; values are finite.
class Trajectory {
 public:
  Trajectory() = default;
  explicit Trajectory(std::vector<std::string> names);

  static Trajectory scalar(std::vector<double> times, std::vector<double> values,
                           std::string name = "value");

  void reserve(std::size_t n);
  /// Appends one sample; `row` holds one value per column.
  void push_back(double t, std::span<const double> row);

  std::size_t size() const noexcept { return times_.size(); }
  bool empty() const noexcept { return times_.empty(); }
  std::size_t num_columns() const noexcept { return names_.size(); }

  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<double>& column(std::size_t i) const { return columns_.at(i); }
  /// Throws std::out_of_range for unknown names.
  const std::vector<double>& column(std::string_view name) const;
  bool has_column(std::string_view name) const noexcept;
  const std::vector<double>& values() const { return column(std::size_t{0}); }

  /// Samples with index range [first, last).
  Trajectory slice(std::size_t first, std::size_t last) const;
  /// Throws ValidationError if times decrease or any value is non-finite.
  void check_invariants() const;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<double> times_;
  std::vector<std::vector<double>> columns_;
};

}  // namespace affect
