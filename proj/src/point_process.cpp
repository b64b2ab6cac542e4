#include "herglotz/point_process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "herglotz/errors.hpp"

namespace herglotz {

PointSample::PointSample(std::vector<double> points, double window, double reference_intensity,
                         SeedRecord seed)
    : points_(std::move(points)), window_(window), reference_intensity_(reference_intensity),
      seed_(seed) {
  if (!(window_ > 0.0)) throw DomainError("PointSample: window must be positive");
  if (reference_intensity_ < 0.0) throw DomainError("PointSample: negative reference intensity");
  std::sort(points_.begin(), points_.end());
  for (double p : points_)
    if (std::abs(p) > window_ * (1.0 + 1e-12))
      throw DomainError("PointSample: point outside window");
}

long long PointSample::counting(double x) const {
  if (std::abs(x) > window_ * (1.0 + 1e-12)) throw DomainError("counting: |x| > W");
  // #points in (0, x] minus #points in (x, 0]; both cases reduce to
  // rank differences in the sorted array.
  const auto begin = points_.begin(), end = points_.end();
  const auto le = [&](double v) {
    return static_cast<long long>(std::upper_bound(begin, end, v) - begin);
  };
  if (x >= 0.0) return le(x) - le(0.0);
  return -(le(0.0) - le(x));
}

double PointSample::delta_N(double x) const {
  return static_cast<double>(counting(x)) - reference_intensity_ * x;
}

double PointSample::distance_to_points(double x) const {
  if (points_.empty()) return std::numeric_limits<double>::infinity();
  auto it = std::lower_bound(points_.begin(), points_.end(), x);
  double d = std::numeric_limits<double>::infinity();
  if (it != points_.end()) d = std::min(d, std::abs(*it - x));
  if (it != points_.begin()) d = std::min(d, std::abs(*std::prev(it) - x));
  return d;
}

PointSample sample_poisson(double window, double intensity, RngStream rng) {
  if (!(window > 0.0) || !(intensity > 0.0))
    throw DomainError("sample_poisson: window and intensity must be positive");
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(2.2 * window * intensity) + 16);
  double x = -window + rng.exponential(intensity);
  while (x <= window) {
    pts.push_back(x);
    x += rng.exponential(intensity);
  }
  return PointSample(std::move(pts), window, intensity, SeedRecord{rng.seed(), "poisson"});
}

NumberVarianceEstimate number_variance(const std::function<PointSample(RngStream)>& sampler,
                                       std::span<const double> x_grid, int n_samples,
                                       RngStream rng) {
  if (n_samples < 2) throw DomainError("number_variance: need at least 2 samples");
  const std::size_t m = x_grid.size();
  std::vector<double> mean(m, 0.0), m2(m, 0.0);
  for (int i = 0; i < n_samples; ++i) {
    PointSample s = sampler(rng.substream(static_cast<std::uint64_t>(i)));
    for (std::size_t j = 0; j < m; ++j) {
      // Welford update keeps the variance single-pass and stable.
      const double v = s.delta_N(x_grid[j]);
      const double d = v - mean[j];
      mean[j] += d / static_cast<double>(i + 1);
      m2[j] += d * (v - mean[j]);
    }
  }
  NumberVarianceEstimate est;
  est.x_grid.assign(x_grid.begin(), x_grid.end());
  est.variance.resize(m);
  for (std::size_t j = 0; j < m; ++j) est.variance[j] = m2[j] / (n_samples - 1);
  est.sample_count = static_cast<std::size_t>(n_samples);

  if (m >= 2) {
    double sl = 0, sv = 0, sll = 0, slv = 0;
    for (std::size_t j = 0; j < m; ++j) {
      const double l = std::log(x_grid[j]);
      sl += l;
      sv += est.variance[j];
      sll += l * l;
      slv += l * est.variance[j];
    }
    const double n = static_cast<double>(m);
    const double det = n * sll - sl * sl;
    if (det > 0) {
      LogFit fit;
      fit.slope = (n * slv - sl * sv) / det;
      fit.intercept = (sv - fit.slope * sl) / n;
      est.fit = fit;
    }
  }
  return est;
}

}  // namespace herglotz
