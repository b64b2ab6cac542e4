#pragma once

#include <complex>
#include <optional>
#include <utility>

#include "herglotz/atomic_measure.hpp"
#include "herglotz/point_process.hpp"

namespace herglotz {

// Windowed Stieltjes transform value with its correction breakdown.
struct TransformResult {
  struct Breakdown {
    std::complex<double> reference;  // rho_ref * log((n-z)/(-n-z))
    std::complex<double> boundary;   // dN(n)/(n-z) - dN(-n)/(-n-z)
    std::complex<double> integral;   // int_{-n}^{n} dN(x)/(x-z)^2 dx
  };

  std::complex<double> value;
  double window = 0.0;
  std::optional<Breakdown> breakdown;   // present for the corrected route
  double truncation_error = 0.0;        // |dN(n)|/n + |dN(-n)|/n heuristic
};

// Direct pole sum over |u_j| <= n.  Valid for Im z > 0, or Im z = 0 with
// z off all points (real z is the boundary limit from above).
TransformResult truncated_transform(const PointSample& s, std::complex<double> z, double n);

// Integration-by-parts form: reference log term + counting-discrepancy
// boundary terms + exact piecewise integral of dN(x)/(x-z)^2 (dN is
// affine between points, so every segment has a closed form).  Equal to
// truncated_transform as an algebraic identity.
TransformResult corrected_transform(const PointSample& s, std::complex<double> z, double n);

// Sampled boundary value F(x+i0): real part of the corrected transform
// at z = x; asserts |Im| < 1e-8.  Requires |x| <= n/2 and distance from
// x to the points at least 1e-9 (throws PoleError otherwise; the caller
// resamples x).
double boundary_value(const PointSample& s, double x, double n);

// Shifted sample: points of T_a mu (translated by -a), window shrunk to
// W - |a|.  Requires |a| <= W/2.
PointSample shift_sample(const PointSample& s, double a);

// Cocycle Q(u, mu) = sum_j w_j [1/(x_j - u - i) - 1/(x_j - i)].
std::complex<double> cocycle_Q(double u, const AtomicMeasure& mu);

// Shift action on the representation pair (mu, beta):
//   (T_u mu, beta + Q(u, mu) + u * a)  with  a = Im beta - |mu|_H.
std::pair<AtomicMeasure, std::complex<double>> shift_hp(const AtomicMeasure& mu,
                                                        std::complex<double> beta, double u);

// |F_{T_a mu}^{(n)}(z) - F_mu^{(n)}(z + a)| at matched windows; a
// convergence diagnostic for shift covariance.
double shift_covariance_check(const PointSample& s, double a, std::complex<double> z, double n);

}  // namespace herglotz
