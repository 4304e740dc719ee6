#include "affect/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "affect/errors.hpp"

namespace affect {

Trajectory::Trajectory(std::vector<std::string> names)
    : names_(std::move(names)), columns_(names_.size()) {}

Trajectory Trajectory::scalar(std::vector<double> times, std::vector<double> values,
                              std::string name) {
  if (times.size() != values.size()) {
    throw ValidationError("times and values differ in length");
  }
  Trajectory out({std::move(name)});
  out.times_ = std::move(times);
  out.columns_[0] = std::move(values);
  return out;
}

void Trajectory::reserve(std::size_t n) {
  times_.reserve(n);
  for (auto& col : columns_) col.reserve(n);
}

void Trajectory::push_back(double t, std::span<const double> row) {
  if (row.size() != columns_.size()) {
    throw std::invalid_argument("row width does not match column count");
  }
  times_.push_back(t);
  for (std::size_t i = 0; i < row.size(); ++i) columns_[i].push_back(row[i]);
}

const std::vector<double>& Trajectory::column(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) {
    throw std::out_of_range("no column named " + std::string(name));
  }
  return columns_[static_cast<std::size_t>(it - names_.begin())];
}

bool Trajectory::has_column(std::string_view name) const noexcept {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

Trajectory Trajectory::slice(std::size_t first, std::size_t last) const {
  last = std::min(last, size());
  first = std::min(first, last);
  Trajectory out(names_);
  out.times_.assign(times_.begin() + first, times_.begin() + last);
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    out.columns_[c].assign(columns_[c].begin() + first, columns_[c].begin() + last);
  }
  return out;
}

void Trajectory::check_invariants() const {
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (times_[i] < times_[i - 1]) {
      throw ValidationError("times decrease at sample " + std::to_string(i));
    }
  }
  for (const auto& col : columns_) {
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (!std::isfinite(col[i])) {
        throw ValidationError("non-finite value at sample " + std::to_string(i));
      }
    }
  }
}

}  // namespace affect
