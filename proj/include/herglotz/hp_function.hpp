#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "herglotz/atomic_measure.hpp"
#include "herglotz/disk.hpp"
#include "herglotz/point_process.hpp"

namespace herglotz {

// F(z) = b + a z + sum_j w_j [1/(u_j - z) - u_j/(u_j^2 + 1)].
struct Represented {
  AtomicMeasure mu;
  double a = 0.0;  // linear coefficient, must be >= 0
  double b = 0.0;
};

// F(z) = -pi cot(pi z); poles at the integers.
struct Periodic {};

// F(z) = -sum_j alpha_j cot(beta_j z + theta_j), alpha_j >= 0.
struct QuasiPeriodic {
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<double> theta;
};

// Window-regularized Stieltjes transform of a realized point process:
// F(z) = F^{(n)}(z) in the corrected (integration-by-parts) form at
// truncation n = window.
struct ProcessTruncated {
  PointSample sample;
  double window = 0.0;  // truncation radius n <= sample window
};

// Evaluable analytic map from the open upper half-plane into its
// closure, in one of the four concrete shapes above.
class HPFunction {
 public:
  using Variant = std::variant<Represented, Periodic, QuasiPeriodic, ProcessTruncated>;

  HPFunction(Represented r);      // NOLINT: implicit by design
  HPFunction(Periodic p);         // NOLINT
  HPFunction(QuasiPeriodic q);    // NOLINT
  HPFunction(ProcessTruncated t); // NOLINT

  const Variant& variant() const { return variant_; }

  template <typename T>
  const T* get_if() const {
    return std::get_if<T>(&variant_);
  }

 private:
  Variant variant_;
};

// F(z) for Im z >= 0; real z must stay off poles/atoms (PoleError).
std::complex<double> evaluate(const HPFunction& f, std::complex<double> z);

// Distance from real x to the nearest pole of f (+inf if pole-free).
double pole_distance(const HPFunction& f, double x);

// Half-plane -> disk conversion for the Represented variant: atom
// (u, w) -> angle theta with u = -cot(theta/2) and mass w/(u^2+1);
// the linear coefficient a becomes the mass of sigma at angle 0.
DiskHP to_disk(const HPFunction& f);

// Poisson smoothing Psi(F)(x + i eta) for Psi(v) = -1/(v + i):
// integral of Psi(F(u + i0)) * eta / (pi ((u-x)^2 + eta^2)) du.
struct SmoothResult {
  std::complex<double> value;
  double error_estimate = 0.0;  // quadrature + tail truncation bound
};

// `tolerance` is the requested absolute error; the integration window
// starts at 50 eta on each side and doubles until the Cauchy-kernel
// tail bound drops below tolerance/2 (AccuracyError if the budget of
// doublings is exhausted first).
SmoothResult poisson_smooth(const HPFunction& f, double x, double eta,
                            double tolerance = 1e-5);

}  // namespace herglotz
