#pragma once

#include <stdexcept>
#include <string>

namespace affect {

/// Base class for every failure reported by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter or config field violates its documented invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// P + N collapsed below the degeneracy threshold, so EB is undefined.
class DegenerateState : public Error {
 public:
  using Error::Error;
};

/// reduce_params was called with tau_p != tau_n.
class ReductionAssumptionViolated : public Error {
 public:
  using Error::Error;
};

/// Integration step is non-positive or too coarse for the delay.
class InvalidStep : public Error {
 public:
  using Error::Error;
};

class NonFiniteState : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// Parameters lie outside the region where a closed form is valid.
class OutOfRegion : public Error {
 public:
  using Error::Error;
};

/// The center-manifold boundary system is singular.
class LinearSolveFailure : public Error {
 public:
  using Error::Error;
};

/// Brown-Forsythe statistic is 0/0 (all deviations identical in both groups).
class DegenerateGroup : public Error {
 public:
  using Error::Error;
};

class ZeroVariance : public Error {
 public:
  using Error::Error;
};

/// Input file could not be parsed; the message names the line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace affect
