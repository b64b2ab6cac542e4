// End-to-end statistical acceptance runs.  Each criterion prints one
// PASS/FAIL line; the process exits nonzero if any criterion fails.
// Tolerances are pinned here on purpose: they are the contract.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <vector>

#include "herglotz/errors.hpp"
#include "herglotz/hp_function.hpp"
#include "herglotz/metrics.hpp"
#include "herglotz/point_process.hpp"
#include "herglotz/rmt.hpp"
#include "herglotz/rng.hpp"
#include "herglotz/sine_kernel.hpp"
#include "herglotz/stats.hpp"
#include "herglotz/stieltjes.hpp"

using namespace herglotz;
using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

namespace {

int failures = 0;

void report(int criterion, const char* label, bool pass, const std::string& detail) {
  std::printf("CRITERION %d (%s): %s  [%s]\n", criterion, label, pass ? "PASS" : "FAIL",
              detail.c_str());
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

// Boundary samples of the rescaled random-matrix trace at jittered
// evaluation points (one matrix per sample).
template <typename PointsOf>
std::vector<double> matrix_boundary_samples(int n_samples, PointsOf&& points_of, RngStream rng) {
  std::vector<double> values;
  values.reserve(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    RngStream sub = rng.substream(static_cast<std::uint64_t>(k));
    RngStream xjit = rng.substream(static_cast<std::uint64_t>(k) + 0x8000000000000000ull);
    const std::vector<double> pts = points_of(sub);
    for (int attempt = 0; attempt < 1000; ++attempt) {
      const double x = (xjit.uniform() - 0.5) * 0.01;
      try {
        values.push_back(pole_sum(pts, x));
        break;
      } catch (const PoleError&) {
      }
    }
  }
  return values;
}

std::vector<double> gaps_of(const std::vector<double>& pts, double lo, double hi) {
  std::vector<double> g;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i - 1] >= lo && pts[i] <= hi) g.push_back(pts[i] - pts[i - 1]);
  return g;
}

double two_sample_ks(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double ks = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    ks = std::max(ks, std::abs(static_cast<double>(i) / a.size() -
                               static_cast<double>(j) / b.size()));
  }
  return ks;
}

// --------------------------------------------------------------------------

void criterion_1_level_sets() {
  RngStream rng(1001);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<AtomicMeasure::Atom> atoms;
    const int n = 1 + static_cast<int>(rng.uniform() * 50.0);
    for (int k = 0; k < n; ++k)
      atoms.push_back({rng.uniform(-100.0, 100.0), rng.uniform(1e-3, 10.0)});
    const double t = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
    worst = std::max(worst, boole_verify(AtomicMeasure(std::move(atoms)), t).relative_error);
  }
  report(1, "level-set identity, 100 random pole sums", worst < 1e-9,
         fmt("max rel err %.3e", worst));
}

void criterion_2_periodic() {
  HPFunction f((Periodic()));
  const auto boundary = [&](double x) {
    if (pole_distance(f, x) < 1e-9) throw PoleError("near pole");
    return evaluate(f, cplx(x, 0.0)).real();
  };
  EmpiricalDistribution d = shift_distribution(boundary, 1000.0, 100000, RngStream(1002));
  const CauchyParams fit = fit_cauchy_quantile(d);
  const GofReport gof = ks_test_cauchy(d, {0.0, kPi});
  const bool pass = std::abs(fit.re_gamma) <= 0.05 && std::abs(fit.im_gamma - kPi) <= 0.05 &&
                    gof.p_value > 0.01;
  report(2, "periodic closed form: Cauchy(0, pi) at N=1e5", pass,
         fmt("re %.4f im %.4f p %.3f", fit.re_gamma, fit.im_gamma, gof.p_value));
}

void criterion_3_poisson() {
  RngStream rng(1003);
  const double window = 1000.0;
  std::vector<double> values;
  values.reserve(10000);
  std::uint64_t realization = 0;
  while (values.size() < 10000) {
    const PointSample s = sample_poisson(window, 1.0, rng.substream(realization));
    RngStream xs = rng.substream(realization + 0x8000000000000000ull);
    for (int k = 0; k < 20 && values.size() < 10000; ++k) {
      for (int attempt = 0; attempt < 1000; ++attempt) {
        const double x = xs.uniform(-0.5 * window, 0.5 * window);
        try {
          values.push_back(boundary_value(s, x, window));
          break;
        } catch (const PoleError&) {
        }
      }
    }
    ++realization;
  }
  EmpiricalDistribution d(std::move(values));
  const CauchyParams fit = fit_cauchy_quantile(d);
  const GofReport gof = ks_test_cauchy(d, {0.0, kPi});
  const bool pass = std::abs(fit.re_gamma) <= 0.1 && std::abs(fit.im_gamma - kPi) <= 0.1 &&
                    gof.ks_statistic < 0.02;
  report(3, "poisson transform: Cauchy(0, pi), W=1e3, N=1e4", pass,
         fmt("re %.4f im %.4f ks %.4f", fit.re_gamma, fit.im_gamma, gof.ks_statistic));
}

void criterion_4_number_variance() {
  const auto t0 = std::chrono::steady_clock::now();
  // x_max sits 50 units inside the window so the count variance at the
  // largest grid point is free of boundary effects.
  const double window = 550.0, spacing = 0.1;
  const int n_samples = 500;
  std::vector<double> grid;
  for (int k = 0; k < 12; ++k) grid.push_back(10.0 * std::pow(50.0, k / 11.0));

  // Count variance over an interval of M cells, averaged over every
  // translate of the interval inside the window.  The expected count of
  // any M-cell block is exactly M*h (the kernel diagonal is constant),
  // so squared deviations from that known mean give an unbiased variance
  // estimate with far less noise than a single anchored interval.
  const int n_cells = static_cast<int>(std::llround(2.0 * window / spacing)) + 1;
  std::vector<int> cell_counts(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k)
    cell_counts[k] = static_cast<int>(std::llround(grid[k] / spacing));
  std::vector<double> vhat(grid.size(), 0.0);
  std::vector<int> prefix(n_cells + 1);
  RngStream rng(1004);
  for (int i = 0; i < n_samples; ++i) {
    const PointSample s = sample_sine_kernel(window, spacing, rng.substream(i));
    std::vector<int> occ(n_cells, 0);
    for (double p : s.points()) {
      const int c = static_cast<int>(std::llround((p + window) / spacing));
      if (c >= 0 && c < n_cells) occ[c] = 1;
    }
    prefix[0] = 0;
    for (int c = 0; c < n_cells; ++c) prefix[c + 1] = prefix[c] + occ[c];
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const int m = cell_counts[k];
      const double mu = m * spacing;
      double acc = 0.0;
      for (int c = 0; c + m <= n_cells; ++c) {
        const double d = (prefix[c + m] - prefix[c]) - mu;
        acc += d * d;
      }
      vhat[k] += acc / static_cast<double>(n_cells - m + 1);
    }
  }
  double sl = 0.0, sv = 0.0, sll = 0.0, slv = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double l = std::log(grid[k]);
    const double v = vhat[k] / n_samples;
    sl += l;
    sv += v;
    sll += l * l;
    slv += l * v;
  }
  const double m = static_cast<double>(grid.size());
  const double slope = (m * slv - sl * sv) / (m * sll - sl * sl);
  const double elapsed = seconds_since(t0);
  const double expected = 1.0 / (kPi * kPi);
  const bool pass = std::abs(slope - expected) <= 0.15 * expected && elapsed < 1800.0;
  report(4, "sine-kernel number variance slope ~ 1/pi^2", pass,
         fmt("slope %.5f expected %.5f wall %.0fs", slope, expected, elapsed));
}

void criterion_5_gue() {
  // 12500 matrices x 2 antithetic draws: the +-0.1 gate on the fitted
  // location then sits at ~3 sigma of the median estimator instead of
  // ~1.6 sigma at 5000 draws.
  const int n = 500, n_samples = 12500;
  bool all_pass = true;
  std::string detail;
  for (double e0 : {0.0, 1.0}) {
    const double rho = semicircle_density(e0);
    // Each matrix contributes two draws: its spectrum and the mirrored
    // spectrum (GUE is invariant under E -> -E, so the mirror is an
    // equally valid ensemble draw).  At E0 = 0 this symmetrizes the
    // sample exactly; at E0 = 1 the two draws use disjoint spectral
    // regions and are nearly independent.
    RngStream rng(1005 + static_cast<std::uint64_t>(e0));
    std::vector<double> values;
    values.reserve(2 * n_samples);
    for (int k = 0; k < n_samples; ++k) {
      RngStream sub = rng.substream(static_cast<std::uint64_t>(k));
      RngStream xjit = rng.substream(static_cast<std::uint64_t>(k) + 0x8000000000000000ull);
      const Spectrum spec = sample_gue_spectrum(n, sub);
      for (double sign : {1.0, -1.0}) {
        std::vector<double> pts;
        pts.reserve(spec.eigenvalues.size());
        for (double e : spec.eigenvalues) pts.push_back(n * rho * (sign * e - e0));
        for (int attempt = 0; attempt < 1000; ++attempt) {
          const double x = (xjit.uniform() - 0.5) * 0.01;
          try {
            values.push_back(pole_sum(pts, x));
            break;
          } catch (const PoleError&) {
          }
        }
      }
    }
    EmpiricalDistribution d(std::move(values));
    const CauchyParams predicted{-e0 / (2.0 * rho), kPi};
    const CauchyParams fit = fit_cauchy_quantile(d);
    const GofReport gof = ks_test_cauchy(d, predicted);
    const bool pass = std::abs(fit.re_gamma - predicted.re_gamma) <= 0.1 &&
                      std::abs(fit.im_gamma - predicted.im_gamma) <= 0.1 &&
                      gof.ks_statistic < 0.03;
    all_pass = all_pass && pass;
    detail += fmt("E0=%.0f: re %.3f (exp %.3f) im %.3f ks %.4f; ", e0, fit.re_gamma,
                  predicted.re_gamma, fit.im_gamma, gof.ks_statistic);
  }
  report(5, "GUE rescaled trace: Cauchy law at E0 in {0, 1}", all_pass, detail);
}

void criterion_6_diagonal() {
  const int n = 2000, n_samples = 10000;
  const DensitySpec density = standard_normal_density();
  bool all_pass = true;
  std::string detail;
  for (double e0 : {0.0, 0.5}) {
    const double pv = principal_value_integral(density.pdf, e0, e0 - 15.0, e0 + 15.0);
    const CauchyParams predicted{pv / density.pdf(e0), kPi};
    EmpiricalDistribution d(matrix_boundary_samples(
        n_samples,
        [&](RngStream sub) { return sample_diagonal_rescaled(n, density, e0, sub).points(); },
        RngStream(1106 + static_cast<std::uint64_t>(10.0 * e0))));
    const CauchyParams fit = fit_cauchy_quantile(d);
    const bool pass = std::abs(fit.re_gamma - predicted.re_gamma) <= 0.1 &&
                      std::abs(fit.im_gamma - predicted.im_gamma) <= 0.1;
    all_pass = all_pass && pass;
    detail += fmt("E0=%.1f: re %.3f (exp %.3f) im %.3f; ", e0, fit.re_gamma, predicted.re_gamma,
                  fit.im_gamma);
  }
  report(6, "diagonal ensemble rescaled trace: Cauchy law", all_pass, detail);
}

void criterion_7_gap_agreement() {
  RngStream rng(1007);
  std::vector<double> sine_gaps, gue_gaps;
  for (int k = 0; k < 100; ++k) {
    const PointSample s = sample_sine_kernel(50.0, 0.02, rng.substream(k));
    const std::vector<double> g = gaps_of(s.points(), -45.0, 45.0);
    sine_gaps.insert(sine_gaps.end(), g.begin(), g.end());
  }
  const int n = 500;
  const double rho = semicircle_density(0.0);
  // Keep to the central bulk so the semicircle density is flat to <1%
  // across the comparison window.
  for (int k = 0; k < 200; ++k) {
    const Spectrum spec = sample_gue_spectrum(n, rng.substream(1000 + k));
    std::vector<double> pts;
    for (double e : spec.eigenvalues) pts.push_back(n * rho * e);
    const std::vector<double> g = gaps_of(pts, -30.0, 30.0);
    gue_gaps.insert(gue_gaps.end(), g.begin(), g.end());
  }
  const double ks = two_sample_ks(sine_gaps, gue_gaps);
  const bool pass = ks < 0.05 && sine_gaps.size() > 5000 && gue_gaps.size() > 5000;
  report(7, "sine-kernel vs GUE bulk gap laws", pass,
         fmt("two-sample ks %.4f (n1 %.0f, n2 %.0f)", ks, static_cast<double>(sine_gaps.size()),
             static_cast<double>(gue_gaps.size())));
}

void criterion_8_property_suites() {
  const auto t0 = std::chrono::steady_clock::now();
  RngStream rng(1008);
  bool ok = true;

  // Mobius round trips
  for (int k = 0; k < 200 && ok; ++k) {
    const cplx z(rng.uniform(-10.0, 10.0), rng.uniform(1e-3, 10.0));
    ok = std::abs(mobius_to_halfplane(mobius_to_disk(z)) - z) < 1e-12 * std::max(1.0, std::abs(z));
  }
  // corrected == truncated transform identity
  for (int k = 0; k < 50 && ok; ++k) {
    const PointSample s = sample_poisson(50.0, 1.0, rng.substream(200 + k));
    const cplx z(rng.uniform(-5.0, 5.0), rng.uniform(0.1, 3.0));
    ok = std::abs(truncated_transform(s, z, 40.0).value - corrected_transform(s, z, 40.0).value) <
         1e-9;
  }
  // wasserstein triangle inequality + pointwise bound
  for (int k = 0; k < 200 && ok; ++k) {
    std::vector<CircleMeasure::Atom> raw[3];
    for (auto& set : raw) {
      double total = 0.0;
      for (int j = 0; j < 4; ++j) {
        set.push_back({rng.uniform(0.0, 2.0 * kPi), rng.uniform(0.05, 1.0)});
        total += set.back().mass;
      }
      for (auto& a : set) a.mass /= total;
    }
    CircleMeasure p1(raw[0]), p2(raw[1]), p3(raw[2]);
    ok = wasserstein_circle(p1, p2) <=
         wasserstein_circle(p1, p3) + wasserstein_circle(p3, p2) + 1e-9;
    if (ok) {
      const DiskHP g1{p1, rng.uniform(-1.0, 1.0)}, g2{p2, rng.uniform(-1.0, 1.0)};
      ok = gbound_check(g1, g2, std::polar(rng.uniform(0.0, 0.9), rng.uniform(0.0, 2.0 * kPi)))
               .holds;
    }
  }
  // shift composition
  for (int k = 0; k < 50 && ok; ++k) {
    AtomicMeasure mu({{rng.uniform(-5.0, 5.0), rng.uniform(0.1, 2.0)},
                      {rng.uniform(-5.0, 5.0), rng.uniform(0.1, 2.0)}});
    const cplx beta(rng.uniform(-1.0, 1.0), mu.herglotz_norm() + rng.uniform(0.0, 1.0));
    const double u1 = rng.uniform(-2.0, 2.0), u2 = rng.uniform(-2.0, 2.0);
    const auto [m1, b1] = shift_hp(mu, beta, u1);
    const auto [m2, b2] = shift_hp(m1, b1, u2);
    const auto [md, bd] = shift_hp(mu, beta, u1 + u2);
    ok = std::abs(b2 - bd) < 1e-10;
  }
  // level sets again at acceptance scale
  for (int k = 0; k < 100 && ok; ++k) {
    std::vector<AtomicMeasure::Atom> atoms;
    for (int j = 0; j < 20; ++j) atoms.push_back({rng.uniform(-50.0, 50.0), rng.uniform(0.1, 5.0)});
    ok = boole_verify(AtomicMeasure(std::move(atoms)), 1.7).relative_error < 1e-9;
  }

  const double elapsed = seconds_since(t0);
  report(8, "randomized property suites under 2 minutes", ok && elapsed < 120.0,
         fmt("properties ok %.0f, wall %.1fs", ok ? 1.0 : 0.0, elapsed));
}

}  // namespace

int main() {
  criterion_1_level_sets();
  criterion_2_periodic();
  criterion_3_poisson();
  criterion_4_number_variance();
  criterion_5_gue();
  criterion_6_diagonal();
  criterion_7_gap_agreement();
  criterion_8_property_suites();
  if (failures > 0) {
    std::printf("ACCEPTANCE: %d criterion(s) FAILED\n", failures);
    return 1;
  }
  std::printf("ACCEPTANCE: all criteria passed\n");
  return 0;
}
