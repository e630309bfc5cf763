#pragma once

#include <stdexcept>
#include <string>

namespace anglerank {

// Enumeration requested beyond the t <= 10 guard (10! is the practical limit).
class SizeError : public std::runtime_error {
 public:
  explicit SizeError(const std::string& msg) : std::runtime_error(msg) {}
};

// Mean resultant length r = 0: the mean direction is undefined.
class DegenerateDataError : public std::runtime_error {
 public:
  explicit DegenerateDataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Mean resultant length r = 1: kappa diverges.
class SaturationError : public std::runtime_error {
 public:
  explicit SaturationError(const std::string& msg) : std::runtime_error(msg) {}
};

class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

// The second-order expansion behind the predictive density is invalid
// at this point (b + r(y) <= 0 or a nonpositive Gamma shape).
class PredictiveExpansionError : public std::runtime_error {
 public:
  explicit PredictiveExpansionError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace anglerank
