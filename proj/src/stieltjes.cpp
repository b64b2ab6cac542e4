#include "herglotz/stieltjes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "herglotz/errors.hpp"

namespace herglotz {
namespace {

using cplx = std::complex<double>;

// log(w - z) as the boundary limit Im z -> 0+ : the argument then sits
// on the lower edge of the cut, so negative reals get -i pi.
cplx log_from_above(double w, cplx z) {
  if (z.imag() > 0.0) return std::log(w - z);
  const double r = w - z.real();
  if (r > 0.0) return cplx(std::log(r), 0.0);
  if (r < 0.0) return cplx(std::log(-r), -std::numbers::pi);
  throw PoleError("log branch point hit");
}

void check_z(const PointSample& s, cplx z, double n) {
  if (!(n > 0.0) || n > s.window() * (1.0 + 1e-12))
    throw DomainError("transform: require 0 < n <= W");
  if (z.imag() < 0.0) throw DomainError("transform: Im z must be >= 0");
  if (z.imag() == 0.0 && s.distance_to_points(z.real()) < 1e-300)
    throw PoleError("transform: z coincides with a point");
}

double trunc_estimate(const PointSample& s, double n) {
  return std::abs(s.delta_N(n)) / n + std::abs(s.delta_N(-n)) / n;
}

}  // namespace

TransformResult truncated_transform(const PointSample& s, cplx z, double n) {
  check_z(s, z, n);
  cplx sum = 0.0;
  for (double u : s.points()) {
    if (std::abs(u) > n) continue;
    const cplx den = u - z;
    if (std::abs(den) < 1e-300) throw PoleError("truncated_transform: z at a point");
    sum += 1.0 / den;
  }
  TransformResult r;
  r.value = sum;
  r.window = n;
  r.truncation_error = trunc_estimate(s, n);
  return r;
}

TransformResult corrected_transform(const PointSample& s, cplx z, double n) {
  check_z(s, z, n);
  const double rho = s.reference_intensity();

  TransformResult::Breakdown parts;
  parts.reference = rho * (log_from_above(n, z) - log_from_above(-n, z));
  parts.boundary = s.delta_N(n) / (n - z) - s.delta_N(-n) / (-n - z);

  // Segment breakpoints: -n, points strictly inside, n.  On each open
  // segment dN(x) = N_seg - rho x is affine, so
  //   int dN/(x-z)^2 = (N_seg - rho z)[-1/(x-z)] - rho [log(x-z)].
  std::vector<double> breaks;
  breaks.push_back(-n);
  for (double u : s.points())
    if (u > -n && u < n) breaks.push_back(u);
  breaks.push_back(n);

  cplx integral = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double a = breaks[k], b = breaks[k + 1];
    if (b - a < 1e-300) continue;
    if (z.imag() == 0.0 && (std::abs(a - z.real()) < 1e-13 || std::abs(b - z.real()) < 1e-13))
      throw PoleError("corrected_transform: z too close to a breakpoint");
    const double n_seg = static_cast<double>(s.counting(0.5 * (a + b)));
    integral += (n_seg - rho * z) * (1.0 / (a - z) - 1.0 / (b - z));
    integral -= rho * (log_from_above(b, z) - log_from_above(a, z));
  }
  parts.integral = integral;

  TransformResult r;
  r.value = parts.reference + parts.boundary + parts.integral;
  r.window = n;
  r.breakdown = parts;
  r.truncation_error = trunc_estimate(s, n);
  return r;
}

double boundary_value(const PointSample& s, double x, double n) {
  if (std::abs(x) > 0.5 * n) throw DomainError("boundary_value: require |x| <= n/2");
  if (s.distance_to_points(x) < 1e-9)
    throw PoleError("boundary_value: x within 1e-9 of a point");
  const TransformResult r = corrected_transform(s, cplx(x, 0.0), n);
  if (std::abs(r.value.imag()) > 1e-8)
    throw NumericalError("boundary_value: imaginary part above 1e-8");
  return r.value.real();
}

PointSample shift_sample(const PointSample& s, double a) {
  if (std::abs(a) > 0.5 * s.window())
    throw DomainError("shift_sample: |a| exceeds W/2, window exhausted");
  const double new_window = s.window() - std::abs(a);
  std::vector<double> pts;
  pts.reserve(s.points().size());
  for (double p : s.points()) {
    const double q = p - a;
    if (std::abs(q) <= new_window) pts.push_back(q);
  }
  return PointSample(std::move(pts), new_window, s.reference_intensity(), s.seed());
}

std::complex<double> cocycle_Q(double u, const AtomicMeasure& mu) {
  cplx q = 0.0;
  const cplx i(0.0, 1.0);
  for (const auto& atom : mu.atoms())
    q += atom.weight * (1.0 / (atom.position - u - i) - 1.0 / (atom.position - i));
  return q;
}

std::pair<AtomicMeasure, std::complex<double>> shift_hp(const AtomicMeasure& mu, cplx beta,
                                                        double u) {
  const double a_coef = beta.imag() - mu.herglotz_norm();
  std::vector<AtomicMeasure::Atom> shifted;
  shifted.reserve(mu.size());
  for (const auto& atom : mu.atoms()) shifted.push_back({atom.position - u, atom.weight});
  return {AtomicMeasure(std::move(shifted)), beta + cocycle_Q(u, mu) + u * a_coef};
}

double shift_covariance_check(const PointSample& s, double a, cplx z, double n) {
  if (!(z.imag() > 0.0)) throw DomainError("shift_covariance_check: Im z must be positive");
  const PointSample shifted = shift_sample(s, a);
  const cplx lhs = truncated_transform(shifted, z, n).value;
  const cplx rhs = truncated_transform(s, z + a, n).value;
  return std::abs(lhs - rhs);
}

}  // namespace herglotz
