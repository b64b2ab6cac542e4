#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "herglotz/disk.hpp"
#include "herglotz/errors.hpp"
#include "herglotz/metrics.hpp"
#include "herglotz/rng.hpp"

using namespace herglotz;
using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

namespace {

CircleMeasure random_probability_measure(RngStream& rng, int max_atoms = 6) {
  const int n = 1 + static_cast<int>(rng.uniform() * max_atoms);
  std::vector<CircleMeasure::Atom> atoms;
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    atoms.push_back({rng.uniform(0.0, 2.0 * kPi), rng.uniform(0.05, 1.0)});
    total += atoms.back().mass;
  }
  for (auto& a : atoms) a.mass /= total;
  return CircleMeasure(std::move(atoms));
}

}  // namespace

TEST_CASE("variational distance examples") {
  CircleMeasure a({{1.0, 2.0}, {3.0, 1.0}});
  CHECK(variational_distance(a, a) == 0.0);
  CircleMeasure b({{1.0, 0.5}, {4.0, 1.0}});
  // matched at angle 1 (|2 - 0.5|), unmatched 1.0 each at angles 3, 4
  CHECK(variational_distance(a, b) == doctest::Approx(3.5));
  CHECK(variational_distance(a, CircleMeasure()) == doctest::Approx(3.0));
}

TEST_CASE("wasserstein examples") {
  CircleMeasure a({{1.0, 1.0}});
  CHECK(wasserstein_circle(a, a) == 0.0);
  CHECK(wasserstein_circle(a, CircleMeasure({{1.3, 1.0}})) == doctest::Approx(0.3));
  CHECK(wasserstein_circle(CircleMeasure({{0.0, 1.0}}), CircleMeasure({{kPi, 1.0}})) ==
        doctest::Approx(kPi));
  // transport through the seam
  CHECK(wasserstein_circle(CircleMeasure({{0.1, 1.0}}),
                           CircleMeasure({{2.0 * kPi - 0.1, 1.0}})) == doctest::Approx(0.2));
  // split source against a midpoint target
  CHECK(wasserstein_circle(CircleMeasure({{1.0, 0.5}, {2.0, 0.5}}),
                           CircleMeasure({{1.5, 1.0}})) == doctest::Approx(0.5));
  // linear scaling in the common mass
  CHECK(wasserstein_circle(CircleMeasure({{1.0, 3.0}}), CircleMeasure({{1.3, 3.0}})) ==
        doctest::Approx(0.9));
  CHECK_THROWS_AS(wasserstein_circle(CircleMeasure({{1.0, 1.0}}),
                                     CircleMeasure({{1.0, 2.0}})),
                  DomainError);
}

TEST_CASE("wasserstein symmetry and triangle inequality on random measures") {
  RngStream rng(211);
  for (int trial = 0; trial < 1000; ++trial) {
    const CircleMeasure a = random_probability_measure(rng);
    const CircleMeasure b = random_probability_measure(rng);
    const CircleMeasure c = random_probability_measure(rng);
    const double ab = wasserstein_circle(a, b);
    const double ba = wasserstein_circle(b, a);
    CHECK(std::abs(ab - ba) < 1e-12);
    CHECK(ab <= wasserstein_circle(a, c) + wasserstein_circle(c, b) + 1e-9);
    CHECK(ab <= kPi + 1e-12);  // diameter bound
  }
}

TEST_CASE("flat distance: equal-mass and trivial cases") {
  CircleMeasure a({{1.0, 1.0}});
  CHECK(flat_distance(a, a) == 0.0);
  // equal masses: min of TV and W
  CHECK(flat_distance(a, CircleMeasure({{1.05, 1.0}})) == doctest::Approx(0.05));
  CHECK(flat_distance(a, CircleMeasure({{1.0 + kPi, 1.0}})) == doctest::Approx(2.0));
  // one extra atom of mass delta costs exactly delta
  CircleMeasure plus({{1.0, 1.0}, {2.0, 0.25}});
  CHECK(flat_distance(a, plus) == doctest::Approx(0.25));
  // zero-mass edge case
  CHECK(flat_distance(CircleMeasure(), a) == doctest::Approx(1.0));
}

TEST_CASE("flat distance matches the exact two-atom rebalancing oracle") {
  // heavy: two atoms; light: one atom.  After removing the mass gap,
  // everything transports to the light atom, so the cost is linear in
  // the removal split and the exact optimum sits at a corner.
  RngStream rng(223);
  const auto arc = [](double t1, double t2) {
    const double d = std::abs(t1 - t2);
    return std::min(d, 2.0 * kPi - d);
  };
  for (int trial = 0; trial < 200; ++trial) {
    const double th1 = rng.uniform(0.0, 2.0 * kPi), th2 = rng.uniform(0.0, 2.0 * kPi);
    const double tl = rng.uniform(0.0, 2.0 * kPi);
    const double m1 = rng.uniform(0.1, 2.0), m2 = rng.uniform(0.1, 2.0);
    const double gap = rng.uniform(0.01, 0.9) * std::min(m1 + m2 - 0.01, m1 + m2);
    const double light_mass = m1 + m2 - gap;
    if (light_mass <= 0.01) continue;
    CircleMeasure heavy({{th1, m1}, {th2, m2}});
    CircleMeasure light({{tl, light_mass}});

    const double d1 = arc(th1, tl), d2 = arc(th2, tl);
    // removal split x from atom 1, gap - x from atom 2; linear cost
    const double x_lo = std::max(0.0, gap - m2), x_hi = std::min(gap, m1);
    const auto cost = [&](double x) {
      return gap + (m1 - x) * d1 + (m2 - (gap - x)) * d2;
    };
    const double oracle = std::min({variational_distance(heavy, light), cost(x_lo), cost(x_hi)});
    CHECK(flat_distance(heavy, light) == doctest::Approx(oracle).epsilon(1e-6));
  }
}

TEST_CASE("flat distance never exceeds total variation") {
  RngStream rng(227);
  for (int trial = 0; trial < 200; ++trial) {
    CircleMeasure a = random_probability_measure(rng);
    std::vector<CircleMeasure::Atom> batoms = random_probability_measure(rng).atoms();
    for (auto& at : batoms) at.mass *= rng.uniform(0.2, 3.0);
    CircleMeasure b(std::move(batoms));
    const double f = flat_distance(a, b);
    CHECK(f <= variational_distance(a, b) + 1e-12);
    CHECK(f >= std::abs(a.total_mass() - b.total_mass()) - 1e-12);
  }
}

TEST_CASE("pointwise bound: trivial and randomized") {
  DiskHP g{CircleMeasure({{1.0, 1.0}}), 0.5};
  const GboundResult trivial = gbound_check(g, g, cplx(0.3, 0.2));
  CHECK(trivial.lhs == 0.0);
  CHECK(trivial.holds);
  CHECK_THROWS_AS(gbound_check(g, g, cplx(1.0, 0.0)), DomainError);

  RngStream rng(229);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<CircleMeasure::Atom> a1, a2;
    const int n1 = 1 + static_cast<int>(rng.uniform() * 4.0);
    const int n2 = 1 + static_cast<int>(rng.uniform() * 4.0);
    for (int k = 0; k < n1; ++k) a1.push_back({rng.uniform(0.0, 2.0 * kPi), rng.uniform(0.05, 2.0)});
    for (int k = 0; k < n2; ++k) a2.push_back({rng.uniform(0.0, 2.0 * kPi), rng.uniform(0.05, 2.0)});
    DiskHP g1{CircleMeasure(std::move(a1)), rng.uniform(-2.0, 2.0)};
    DiskHP g2{CircleMeasure(std::move(a2)), rng.uniform(-2.0, 2.0)};
    const cplx w = std::polar(rng.uniform(0.0, 0.95), rng.uniform(0.0, 2.0 * kPi));
    CHECK(gbound_check(g1, g2, w).holds);
  }
}

TEST_CASE("convergence diagnostic: exact sequence reports zero gaps") {
  DiskHP target{CircleMeasure({{2.0, 1.0}}), 0.3};
  std::vector<DiskHP> seq(3, target);
  const std::vector<cplx> probes{cplx(0.0, 0.0), cplx(0.5, 0.2), cplx(-0.7, 0.0)};
  const ConvergenceReport rep = convergence_diagnostic(seq, target, probes);
  REQUIRE(rep.steps.size() == 3);
  for (const auto& s : rep.steps) {
    CHECK(s.value_at_zero_gap == 0.0);
    CHECK(s.weak_gap == 0.0);
    CHECK(s.mass_at_zero_gap == 0.0);
    CHECK(s.pointwise_gap < 1e-14);
  }
  CHECK_FALSE(rep.inconsistent);
}

TEST_CASE("convergence diagnostic: atoms sliding to angle zero") {
  // Weak convergence holds but the mass at the single angle 0 never
  // transfers; the bookkeeping channel must show the persistent gap.
  DiskHP target{CircleMeasure({{0.0, 1.0}}), 0.0};
  std::vector<DiskHP> seq;
  for (double eps : {0.4, 0.2, 0.1, 0.05})
    seq.push_back(DiskHP{CircleMeasure({{eps, 1.0}}), 0.0});
  const std::vector<cplx> probes{cplx(0.0, 0.0), cplx(0.3, 0.3), cplx(-0.5, 0.1)};
  const ConvergenceReport rep = convergence_diagnostic(seq, target, probes);
  REQUIRE(rep.steps.size() == 4);
  for (std::size_t k = 1; k < 4; ++k) {
    CHECK(rep.steps[k].weak_gap < rep.steps[k - 1].weak_gap);
    CHECK(rep.steps[k].pointwise_gap < rep.steps[k - 1].pointwise_gap);
    CHECK(rep.steps[k].mass_at_zero_gap == doctest::Approx(1.0));
  }
  CHECK_FALSE(rep.inconsistent);
}

TEST_CASE("convergence diagnostic: flags measure convergence without pointwise convergence") {
  // Probing close to the atom keeps the pointwise gap large while the
  // moment gaps collapse; the report must call that out.
  DiskHP target{CircleMeasure({{0.0, 1.0}}), 0.0};
  std::vector<DiskHP> seq{DiskHP{CircleMeasure({{0.1, 1.0}}), 0.0},
                          DiskHP{CircleMeasure({{0.02, 1.0}}), 0.0}};
  const std::vector<cplx> probes{cplx(0.999, 0.0)};
  const ConvergenceReport rep = convergence_diagnostic(seq, target, probes);
  CHECK(rep.inconsistent);
}
