#pragma once

#include <stdexcept>
#include <string>

namespace motzkin {

// Malformed arguments: bad alphabet symbol, out-of-range parameter, string not in class.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Request exceeds a configured size cap (enumeration, full-space build).
class ResourceError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Iterative solver gave up; carries the best residual seen.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

// A proven property failed to hold; indicates a bug, not bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace motzkin
