#pragma once

#include <stdexcept>
#include <string>

namespace tailcens {

// Bad inputs: malformed files, out-of-range parameters, broken preconditions.
class validation_error : public std::invalid_argument {
 public:
  explicit validation_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Statistically degenerate states: all top observations censored, tail index
// at or above one when a finite mean is required.
class estimation_error : public std::runtime_error {
 public:
  explicit estimation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical machinery failures: quadrature non-convergence, bracket failures.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace tailcens
