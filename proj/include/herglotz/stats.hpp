#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "herglotz/atomic_measure.hpp"
#include "herglotz/rng.hpp"

namespace herglotz {

// Sorted cache of real-valued samples with CDF/quantile queries.
class EmpiricalDistribution {
 public:
  EmpiricalDistribution() = default;
  explicit EmpiricalDistribution(std::vector<double> samples);

  const std::vector<double>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }

  // Right-continuous empirical CDF.
  double cdf(double x) const;

  // Interpolated order statistic, p in [0, 1].
  double quantile(double p) const;

 private:
  std::vector<double> samples_;  // sorted ascending
};

// Analytic baricenter Gamma = (Re, Im >= 0); Im = 0 is the degenerate
// point mass.
struct CauchyParams {
  double re_gamma = 0.0;
  double im_gamma = 0.0;
};

struct GofReport {
  double ks_statistic = 0.0;
  double p_value = 1.0;
  std::size_t sample_size = 0;
  CauchyParams fitted;
  std::string route;
};

double cauchy_cdf(double x, const CauchyParams& gamma);
double cauchy_quantile(double p, const CauchyParams& gamma);

// Draws N boundary values F(x) at x uniform (or stratified) over
// [-L/2, L/2].  The sampler throws PoleError when x lands too close to
// a pole; such x are rejected and redrawn.  The rejection fraction
// must stay below 1e-3 (AccuracyError otherwise).
struct ShiftSampleStats {
  std::size_t rejections = 0;
  std::size_t draws = 0;
};
EmpiricalDistribution shift_distribution(const std::function<double(double)>& boundary,
                                         double length, int n_samples, RngStream rng,
                                         bool stratified = false,
                                         ShiftSampleStats* stats = nullptr);

// re = sample median; im = half the interquartile range.
CauchyParams fit_cauchy_quantile(const EmpiricalDistribution& d);

// Least-squares fit of log|E e^{itF}| = -t Im and arg E e^{itF} = t Re
// through the origin over the t grid.
CauchyParams fit_cauchy_charfn(const EmpiricalDistribution& d, std::span<const double> t_grid);

// Exact Kolmogorov-Smirnov statistic against Cauchy(gamma) with the
// asymptotic Kolmogorov p-value (series truncated at 100 terms).
GofReport ks_test_cauchy(const EmpiricalDistribution& d, const CauchyParams& gamma);

// {mean of 1/(F_k + i)}^{-1} - i; equals Gamma for true Cauchy data.
std::complex<double> estimate_gamma_inverse(const EmpiricalDistribution& d);

// F(x + i eta) along an increasing eta grid; the last entry is the
// Gamma estimate.
std::vector<std::complex<double>> estimate_gamma_height(
    const std::function<std::complex<double>(std::complex<double>)>& f, double x,
    std::span<const double> eta_grid);

// Level sets of F(x) = sum w_j / (u_j - x) (no Herglotz re-centering):
// Lebesgue measure of {F > t} vs the exact value mu(R)/t.
struct BooleResult {
  double level_set_measure = 0.0;
  double exact = 0.0;
  double relative_error = 0.0;
};
BooleResult boole_verify(const AtomicMeasure& mu, double t);

// Monte-Carlo modulus of *-continuity: mean over realizations of
// |1/(F(x+delta)+i) - 1/(F(x)+i)| per delta.  `realization` maps an
// rng substream to a boundary evaluator for one random F.
std::vector<double> star_modulus(
    const std::function<std::function<double(double)>(RngStream)>& realization, double x,
    std::span<const double> delta_grid, int n_samples, RngStream rng);

// PV integral of f(v)/(v - e0) over [lo, hi] by symmetric exclusion
// with Richardson extrapolation in the exclusion half-width.
double principal_value_integral(const std::function<double(double)>& f, double e0, double lo,
                                double hi);

// sum_j 1/(p_j - x) over a full point list (the rescaled trace).
double pole_sum(std::span<const double> points, double x);

}  // namespace herglotz
