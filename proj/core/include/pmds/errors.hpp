#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pmds {

/// Malformed edge-list input. Carries the 1-based line number (0 when the
/// error is not tied to a line, e.g. "no edges").
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An iterative solver hit its iteration cap without certifying optimality.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_bound)
      : std::runtime_error(what), best_bound_(best_bound) {}

  /// Best bound on the objective known when the solver gave up.
  double best_bound() const noexcept { return best_bound_; }

 private:
  double best_bound_;
};

}  // namespace pmds
