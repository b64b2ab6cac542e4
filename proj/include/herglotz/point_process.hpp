#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "herglotz/rng.hpp"

namespace herglotz {

struct SeedRecord {
  std::uint64_t seed = 0;
  const char* sampler = "none";
};

// One realized point-process window: sorted points in [-W, W] together
// with the reference intensity used for the counting discrepancy.
class PointSample {
 public:
  PointSample() = default;
  PointSample(std::vector<double> points, double window, double reference_intensity,
              SeedRecord seed = {});

  const std::vector<double>& points() const { return points_; }
  double window() const { return window_; }
  double reference_intensity() const { return reference_intensity_; }
  const SeedRecord& seed() const { return seed_; }

  // Signed counting function: #points in (0, x] for x >= 0 and
  // -#points in (x, 0] for x < 0.  Requires |x| <= W.
  long long counting(double x) const;

  // delta N(x) = N(x) - rho_ref * x.
  double delta_N(double x) const;

  double distance_to_points(double x) const;

 private:
  std::vector<double> points_;
  double window_ = 0.0;
  double reference_intensity_ = 0.0;
  SeedRecord seed_;
};

// Homogeneous Poisson process of intensity rho restricted to [-W, W];
// generated by sequential exponential gaps, so points come out sorted.
PointSample sample_poisson(double window, double intensity, RngStream rng);

// Least-squares fit of variance against log x.
struct LogFit {
  double slope = 0.0;
  double intercept = 0.0;
};

struct NumberVarianceEstimate {
  std::vector<double> x_grid;
  std::vector<double> variance;
  std::size_t sample_count = 0;
  std::optional<LogFit> fit;  // absent for degenerate (size < 2) grids
};

// Sample variance of delta N(x) over independent realizations produced
// by `sampler` (called with substream i for realization i).
NumberVarianceEstimate number_variance(const std::function<PointSample(RngStream)>& sampler,
                                       std::span<const double> x_grid, int n_samples,
                                       RngStream rng);

}  // namespace herglotz
