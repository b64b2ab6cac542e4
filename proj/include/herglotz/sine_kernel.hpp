#pragma once

#include "herglotz/point_process.hpp"
#include "herglotz/rng.hpp"

namespace herglotz {

// Diagnostics of the cached discretized-kernel model for one (W, h).
struct SineKernelModelInfo {
  int grid_size = 0;
  double window = 0.0;            // effective half-width (grid-aligned)
  double spacing = 0.0;
  int sure_count = 0;             // eigenvalues treated as exactly 1
  int transition_count = 0;       // eigenvalues kept with 0 < lambda < 1
  double expected_points = 0.0;   // kernel trace = n * h
  double clipped_mass = 0.0;      // eigenvalue mass clipped into [0, 1]
  double unaccounted_mass = 0.0;  // |trace - (sure + sum of kept lambdas)|
};

// One realization of the determinantal point process with kernel
// sin(pi (x - y)) / (pi (x - y)) restricted to [-W, W].
//
// The kernel is discretized on a grid of spacing h (K_ij = h sinc);
// eigenvalues are clipped to [0, 1], eigenvectors are Bernoulli-selected
// with probability lambda_k, and points are drawn sequentially from the
// diagonal of the running projection with Gram-Schmidt downdating.
// Points land on distinct grid cells; reference intensity is 1.
//
// Preconditions: h <= 0.1 and 2W/h <= 4e4 (memory guard).  Throws
// AccuracyError when clipped or unaccounted eigenvalue mass exceeds
// 1e-3.  The eigendecomposition is cached per (W, h).
PointSample sample_sine_kernel(double window, double spacing, RngStream rng);

// Forces construction of the cached model and returns its diagnostics.
SineKernelModelInfo sine_kernel_model_info(double window, double spacing);

}  // namespace herglotz
