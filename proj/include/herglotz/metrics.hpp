#pragma once

#include <complex>
#include <span>
#include <vector>

#include "herglotz/disk.hpp"

namespace herglotz {

// Total variation of the signed difference (atoms matched by angle
// within 1e-12).
double variational_distance(const CircleMeasure& s1, const CircleMeasure& s2);

// 1-Wasserstein distance on the circle with arc-length ground metric.
// Requires equal total mass (within 1e-12); measures are normalized to
// probabilities for the transport step and the result is scaled back
// by the common mass.
double wasserstein_circle(const CircleMeasure& s1, const CircleMeasure& s2);

// Flat distance: infimum over equal-mass surrogate pairs of
// TV(s1, s1') + TV(s2, s2') + W(s1', s2').  Computed by rebalancing
// the heavier measure through removals in units of (mass gap)/64
// (greedy over removal sites, exact W per step), capped by the trivial
// TV bound; an upper-bound optimizer, exact on small instances.
double flat_distance(const CircleMeasure& s1, const CircleMeasure& s2);

// Pointwise-difference bound check: lhs = |G1(w) - G2(w)|, rhs =
// |Re dG(0)| + |Im dG(0)| 2/(1-|w|)
//   + (sigma1(S)+sigma2(S))/2 * W(normalized) * 2|w|/(1-|w|)^2.
struct GboundResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};
GboundResult gbound_check(const DiskHP& g1, const DiskHP& g2, std::complex<double> w);

// Convergence diagnostic for a sequence G_n -> G: the value gap at 0,
// weak-convergence surrogates against a fixed dictionary of 16
// trigonometric test functions (plus mass-at-angle-0 bookkeeping,
// which weak convergence does NOT control), and the max pointwise gap
// over the probe set.
struct ConvergenceStep {
  double value_at_zero_gap = 0.0;   // |G_n(0) - G(0)|
  double weak_gap = 0.0;            // max_g |sigma_n(g) - sigma(g)|
  double mass_at_zero_gap = 0.0;    // |sigma_n({0}) - sigma({0})|
  double pointwise_gap = 0.0;       // max over probes |G_n(w) - G(w)|
};
struct ConvergenceReport {
  std::vector<ConvergenceStep> steps;
  // Set when the measure-level gaps shrink but the pointwise gap does
  // not, which would contradict the equivalence of the two modes.
  bool inconsistent = false;
};
ConvergenceReport convergence_diagnostic(std::span<const DiskHP> sequence, const DiskHP& target,
                                         std::span<const std::complex<double>> probes);

}  // namespace herglotz
