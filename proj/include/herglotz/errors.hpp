#pragma once

#include <stdexcept>
#include <string>

namespace herglotz {

// Evaluation request hit a pole (an atom of the spectral measure).
struct PoleError : std::domain_error {
  explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

// Input outside the operation's domain (|w| >= 1, |x| > W, ...).
struct DomainError : std::domain_error {
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A numerical routine failed to reach its accuracy target; carries the
// achieved estimate so callers can decide whether to proceed anyway.
struct AccuracyError : std::runtime_error {
  AccuracyError(const std::string& what, double achieved_error)
      : std::runtime_error(what), achieved(achieved_error) {}
  double achieved;
};

// Iterative solver did not converge within its iteration bound.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace herglotz
