#include "herglotz/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "herglotz/errors.hpp"

namespace herglotz {
namespace {

constexpr double kPi = std::numbers::pi;

double adaptive_simpson_real(const std::function<double(double)>& f, double a, double b,
                             double fa, double fm, double fb, double whole, double tol,
                             int depth) {
  const double m = 0.5 * (a + b);
  const double fl = f(0.5 * (a + m));
  const double fr = f(0.5 * (m + b));
  const double left = (m - a) / 6.0 * (fa + 4.0 * fl + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * fr + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson_real(f, a, m, fa, fl, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_real(f, m, b, fm, fr, fb, right, 0.5 * tol, depth - 1);
}

double integrate_real(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_real(f, a, b, fa, fm, fb, whole, tol, 32);
}

}  // namespace

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples)
    : samples_(std::move(samples)) {
  std::sort(samples_.begin(), samples_.end());
}

double EmpiricalDistribution::cdf(double x) const {
  if (samples_.empty()) throw DomainError("EmpiricalDistribution: empty");
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
  return static_cast<double>(it - samples_.begin()) / static_cast<double>(samples_.size());
}

double EmpiricalDistribution::quantile(double p) const {
  if (samples_.empty()) throw DomainError("EmpiricalDistribution: empty");
  if (p < 0.0 || p > 1.0) throw DomainError("quantile: p outside [0, 1]");
  const double idx = p * static_cast<double>(samples_.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(idx);
  if (lo + 1 >= samples_.size()) return samples_.back();
  const double frac = idx - static_cast<double>(lo);
  return samples_[lo] * (1.0 - frac) + samples_[lo + 1] * frac;
}

double cauchy_cdf(double x, const CauchyParams& gamma) {
  if (!(gamma.im_gamma > 0.0)) throw DomainError("cauchy_cdf: degenerate Gamma");
  return 0.5 + std::atan((x - gamma.re_gamma) / gamma.im_gamma) / kPi;
}

double cauchy_quantile(double p, const CauchyParams& gamma) {
  if (!(gamma.im_gamma > 0.0)) throw DomainError("cauchy_quantile: degenerate Gamma");
  return gamma.re_gamma + gamma.im_gamma * std::tan(kPi * (p - 0.5));
}

EmpiricalDistribution shift_distribution(const std::function<double(double)>& boundary,
                                         double length, int n_samples, RngStream rng,
                                         bool stratified, ShiftSampleStats* stats) {
  if (!(length > 0.0) || n_samples < 1) throw DomainError("shift_distribution: bad arguments");
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n_samples));
  std::size_t rejections = 0;
  for (int k = 0; k < n_samples; ++k) {
    for (int attempt = 0;; ++attempt) {
      if (attempt == 1000)
        throw AccuracyError("shift_distribution: persistent pole rejections", 1.0);
      const double u = rng.uniform();
      const double x = stratified
                           ? -0.5 * length + (static_cast<double>(k) + u) * length / n_samples
                           : -0.5 * length + u * length;
      try {
        values.push_back(boundary(x));
        break;
      } catch (const PoleError&) {
        ++rejections;
      }
    }
  }
  const std::size_t draws = static_cast<std::size_t>(n_samples) + rejections;
  if (stats) *stats = ShiftSampleStats{rejections, draws};
  const double rate = static_cast<double>(rejections) / static_cast<double>(draws);
  if (rate > 1e-3)
    throw AccuracyError("shift_distribution: pole rejection rate above 1e-3", rate);
  return EmpiricalDistribution(std::move(values));
}

CauchyParams fit_cauchy_quantile(const EmpiricalDistribution& d) {
  if (d.size() < 100) throw DomainError("fit_cauchy_quantile: need at least 100 samples");
  CauchyParams p;
  p.re_gamma = d.quantile(0.5);
  p.im_gamma = 0.5 * (d.quantile(0.75) - d.quantile(0.25));
  return p;
}

CauchyParams fit_cauchy_charfn(const EmpiricalDistribution& d, std::span<const double> t_grid) {
  if (d.size() < 1000) throw DomainError("fit_cauchy_charfn: need at least 1000 samples");
  if (t_grid.empty()) throw DomainError("fit_cauchy_charfn: empty t grid");
  const double n = static_cast<double>(d.size());
  const double noise_floor = 3.0 / std::sqrt(n);

  double stt = 0.0, st_logmag = 0.0, st_arg = 0.0;
  double prev_arg = 0.0;
  bool any_usable = false;
  for (double t : t_grid) {
    if (!(t > 0.0)) throw DomainError("fit_cauchy_charfn: t grid must be positive");
    std::complex<double> phi = 0.0;
    for (double x : d.samples()) phi += std::complex<double>(std::cos(t * x), std::sin(t * x));
    phi /= n;
    // Unwrap the phase against the previous grid point so Re Gamma is
    // not limited to |Re Gamma| < pi / t.
    double arg = std::arg(phi);
    arg += 2.0 * kPi * std::round((prev_arg - arg) / (2.0 * kPi));
    prev_arg = arg;
    if (std::abs(phi) <= noise_floor) continue;
    any_usable = true;
    stt += t * t;
    st_logmag += t * std::log(std::abs(phi));
    st_arg += t * arg;
  }
  if (!any_usable)
    throw NumericalError("fit_cauchy_charfn: characteristic function below noise floor");
  CauchyParams p;
  p.im_gamma = std::max(0.0, -st_logmag / stt);
  p.re_gamma = st_arg / stt;
  return p;
}

GofReport ks_test_cauchy(const EmpiricalDistribution& d, const CauchyParams& gamma) {
  if (!(gamma.im_gamma > 0.0)) throw DomainError("ks_test_cauchy: degenerate Gamma");
  if (d.size() == 0) throw DomainError("ks_test_cauchy: empty sample");
  const double n = static_cast<double>(d.size());
  double dmax = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double f = cauchy_cdf(d.samples()[i], gamma);
    dmax = std::max(dmax, static_cast<double>(i + 1) / n - f);
    dmax = std::max(dmax, f - static_cast<double>(i) / n);
  }
  // Asymptotic Kolmogorov tail with the Stephens small-sample tweak.
  const double lambda = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * dmax;
  double q = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = 2.0 * std::exp(-2.0 * k * k * lambda * lambda);
    q += (k % 2 == 1) ? term : -term;
  }
  q = std::clamp(q, 0.0, 1.0);
  return GofReport{dmax, q, d.size(), gamma, "ks-cauchy"};
}

std::complex<double> estimate_gamma_inverse(const EmpiricalDistribution& d) {
  if (d.size() < 1000) throw DomainError("estimate_gamma_inverse: need at least 1000 samples");
  const std::complex<double> i(0.0, 1.0);
  std::complex<double> mean = 0.0;
  for (double x : d.samples()) mean += 1.0 / (x + i);
  mean /= static_cast<double>(d.size());
  if (std::abs(mean) < 1e-12)
    throw NumericalError("estimate_gamma_inverse: mean modulus below 1e-12");
  return 1.0 / mean - i;
}

std::vector<std::complex<double>> estimate_gamma_height(
    const std::function<std::complex<double>(std::complex<double>)>& f, double x,
    std::span<const double> eta_grid) {
  std::vector<std::complex<double>> values;
  values.reserve(eta_grid.size());
  for (double eta : eta_grid) {
    if (!(eta > 0.0)) throw DomainError("estimate_gamma_height: eta grid must be positive");
    values.push_back(f(std::complex<double>(x, eta)));
  }
  return values;
}

BooleResult boole_verify(const AtomicMeasure& mu, double t) {
  if (mu.empty()) throw DomainError("boole_verify: empty measure");
  if (!(t > 0.0)) throw DomainError("boole_verify: t must be positive");
  const auto& atoms = mu.atoms();
  const auto f = [&](double x) {
    double s = 0.0;
    for (const auto& a : atoms) s += a.weight / (a.position - x);
    return s;
  };
  // F is strictly increasing on each interval between consecutive
  // atoms; {F > t} is the union of (x_k, u_k) with F(x_k) = t.
  const auto bisect = [&](double lo, double hi) {
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (f(mid) < t ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };

  const double total = mu.total_weight();
  double measure = 0.0;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    double lo;
    if (k == 0) {
      lo = atoms[0].position - total / t - 1.0;  // F(lo) < t by the mass bound
      if (f(lo) >= t) throw NumericalError("boole_verify: left bracket failed");
    } else {
      lo = atoms[k - 1].position;
    }
    const double root = bisect(lo, atoms[k].position);
    measure += atoms[k].position - root;
  }
  const double exact = total / t;
  return BooleResult{measure, exact, std::abs(measure - exact) / exact};
}

std::vector<double> star_modulus(
    const std::function<std::function<double(double)>(RngStream)>& realization, double x,
    std::span<const double> delta_grid, int n_samples, RngStream rng) {
  if (n_samples < 1) throw DomainError("star_modulus: need at least one sample");
  std::vector<double> sum(delta_grid.size(), 0.0);
  std::vector<std::size_t> count(delta_grid.size(), 0);
  const std::complex<double> i(0.0, 1.0);
  for (int s = 0; s < n_samples; ++s) {
    const auto f = realization(rng.substream(static_cast<std::uint64_t>(s)));
    double base;
    try {
      base = f(x);
    } catch (const PoleError&) {
      continue;  // the random realization put a pole at x; skip it
    }
    for (std::size_t j = 0; j < delta_grid.size(); ++j) {
      try {
        const double shifted = f(x + delta_grid[j]);
        sum[j] += std::abs(1.0 / (shifted + i) - 1.0 / (base + i));
        ++count[j];
      } catch (const PoleError&) {
      }
    }
  }
  std::vector<double> out(delta_grid.size(), 0.0);
  for (std::size_t j = 0; j < delta_grid.size(); ++j) {
    if (count[j] < static_cast<std::size_t>(n_samples) / 2)
      throw AccuracyError("star_modulus: too many pole rejections",
                          1.0 - static_cast<double>(count[j]) / n_samples);
    out[j] = sum[j] / static_cast<double>(count[j]);
  }
  return out;
}

double principal_value_integral(const std::function<double(double)>& f, double e0, double lo,
                                double hi) {
  if (!(lo < e0 && e0 < hi)) throw DomainError("principal_value_integral: e0 must be interior");
  const double room = std::min(e0 - lo, hi - e0);
  const double h0 = 0.125 * room;
  const auto g = [&](double v) { return f(v) / (v - e0); };
  const auto excluded = [&](double h) {
    return integrate_real(g, lo, e0 - h, 1e-11) + integrate_real(g, e0 + h, hi, 1e-11);
  };
  // Symmetric exclusion misses 2 f'(e0) h + O(h^3) + O(h^5); three
  // Richardson levels cancel the h, h^3 and h^5 terms.
  const double i0 = excluded(h0);
  const double i1 = excluded(0.5 * h0);
  const double i2 = excluded(0.25 * h0);
  const double i3 = excluded(0.125 * h0);
  const double r1 = 2.0 * i1 - i0;
  const double r2 = 2.0 * i2 - i1;
  const double r3 = 2.0 * i3 - i2;
  const double s1 = (8.0 * r2 - r1) / 7.0;
  const double s2 = (8.0 * r3 - r2) / 7.0;
  return (32.0 * s2 - s1) / 31.0;
}

double pole_sum(std::span<const double> points, double x) {
  double s = 0.0;
  for (double p : points) {
    const double d = p - x;
    if (std::abs(d) < 1e-12) throw PoleError("pole_sum: x within 1e-12 of a point");
    s += 1.0 / d;
  }
  return s;
}

}  // namespace herglotz
