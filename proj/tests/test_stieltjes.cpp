#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "herglotz/errors.hpp"
#include "herglotz/hp_function.hpp"
#include "herglotz/point_process.hpp"
#include "herglotz/rng.hpp"
#include "herglotz/stieltjes.hpp"

using namespace herglotz;
using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

TEST_CASE("truncated transform: single point and empty sample") {
  PointSample s({1.0}, 2.0, 0.0);
  const TransformResult r = truncated_transform(s, cplx(0.0, 1.0), 2.0);
  CHECK(std::abs(r.value - cplx(0.5, 0.5)) < 1e-15);

  PointSample empty({}, 2.0, 0.0);
  CHECK(std::abs(truncated_transform(empty, cplx(0.0, 1.0), 2.0).value) == 0.0);
  CHECK(std::abs(corrected_transform(empty, cplx(0.0, 1.0), 2.0).value) == 0.0);
}

TEST_CASE("corrected equals truncated on random poisson samples") {
  RngStream rng(71);
  for (int k = 0; k < 100; ++k) {
    const PointSample s = sample_poisson(50.0, 1.0, rng.substream(k));
    const cplx z(rng.uniform(-10.0, 10.0), rng.uniform(0.1, 5.0));
    const double n = rng.uniform(20.0, 50.0);
    const TransformResult a = truncated_transform(s, z, n);
    const TransformResult b = corrected_transform(s, z, n);
    CHECK(std::abs(a.value - b.value) < 1e-10 * std::max(1.0, std::abs(a.value)));
    REQUIRE(b.breakdown.has_value());
    const cplx parts = b.breakdown->reference + b.breakdown->boundary + b.breakdown->integral;
    CHECK(std::abs(parts - b.value) < 1e-12 * std::max(1.0, std::abs(b.value)));
    CHECK(b.value.imag() > -1e-12);  // Herglotz property in the upper half-plane
  }
}

TEST_CASE("reference part of the corrected transform tends to i pi") {
  PointSample empty({}, 2000.0, 1.0);
  const TransformResult r = corrected_transform(empty, cplx(0.0, 1.0), 2000.0);
  REQUIRE(r.breakdown.has_value());
  CHECK(std::abs(r.breakdown->reference - cplx(0.0, kPi)) < 2e-3);
  // With no points the integral's log term cancels the reference and the
  // boundary terms cancel the remainder: the total is the truncated value 0.
  CHECK(std::abs(r.value) < 1e-12);
  CHECK(std::abs(r.breakdown->boundary + r.breakdown->integral + cplx(0.0, kPi)) < 2e-3);
}

TEST_CASE("window-doubling convergence against the half-integer lattice closed form") {
  // Points at k + 1/2 give F(z) = pi tan(pi z); at z = i this is
  // i pi tanh(pi).
  std::vector<double> pts;
  for (int k = -4000; k < 4000; ++k) pts.push_back(k + 0.5);
  PointSample s(std::move(pts), 4000.0, 1.0);
  const cplx exact(0.0, kPi * std::tanh(kPi));
  double prev = 1e9;
  for (double n : {500.0, 1000.0, 2000.0}) {
    const double err = std::abs(corrected_transform(s, cplx(0.0, 1.0), n).value - exact);
    CHECK(err < 4.0 / n);
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("boundary values") {
  PointSample s({-1.0, 1.0}, 4.0, 0.0);
  CHECK(std::abs(boundary_value(s, 0.0, 4.0)) < 1e-12);
  PointSample t({2.0}, 4.0, 0.0);
  CHECK(boundary_value(t, 1.0, 4.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(boundary_value(t, 2.0 - 1e-12, 4.0), PoleError);
  CHECK_THROWS_AS(boundary_value(t, 3.0, 4.0), DomainError);  // |x| > n/2
}

TEST_CASE("shift_sample translates points and shrinks the window") {
  PointSample s({-1.0, 0.5, 2.0}, 4.0, 1.0);
  const PointSample t = shift_sample(s, 1.0);
  CHECK(t.window() == doctest::Approx(3.0));
  REQUIRE(t.points().size() == 3);
  CHECK(t.points()[0] == doctest::Approx(-2.0));
  CHECK(t.points()[1] == doctest::Approx(-0.5));
  CHECK(t.points()[2] == doctest::Approx(1.0));
  CHECK_THROWS_AS(shift_sample(s, 3.0), DomainError);

  const PointSample id = shift_sample(s, 0.0);
  CHECK(id.window() == s.window());
  for (std::size_t i = 0; i < 3; ++i) CHECK(id.points()[i] == s.points()[i]);
}

TEST_CASE("cocycle values") {
  AtomicMeasure delta0({{0.0, 1.0}});
  CHECK(std::abs(cocycle_Q(0.0, delta0)) == 0.0);
  CHECK(std::abs(cocycle_Q(1.0, delta0) - cplx(-0.5, -0.5)) < 1e-15);
}

TEST_CASE("shift action: explicit example") {
  AtomicMeasure delta0({{0.0, 1.0}});
  const cplx beta(0.3, 2.0);  // a = Im beta - |mu|_H = 1
  const auto [mu, beta2] = shift_hp(delta0, beta, 1.0);
  REQUIRE(mu.size() == 1);
  CHECK(mu.atoms()[0].position == doctest::Approx(-1.0));
  CHECK(std::abs(beta2 - (beta + cocycle_Q(1.0, delta0) + cplx(1.0, 0.0))) < 1e-15);
}

TEST_CASE("shift action composes additively") {
  RngStream rng(73);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<AtomicMeasure::Atom> atoms;
    const int n = 1 + static_cast<int>(rng.uniform() * 5.0);
    for (int k = 0; k < n; ++k)
      atoms.push_back({rng.uniform(-5.0, 5.0), rng.uniform(0.1, 2.0)});
    AtomicMeasure mu(std::move(atoms));
    const cplx beta(rng.uniform(-2.0, 2.0), mu.herglotz_norm() + rng.uniform(0.0, 2.0));
    const double u1 = rng.uniform(-3.0, 3.0), u2 = rng.uniform(-3.0, 3.0);

    const auto [m1, b1] = shift_hp(mu, beta, u1);
    const auto [m12, b12] = shift_hp(m1, b1, u2);
    const auto [m_direct, b_direct] = shift_hp(mu, beta, u1 + u2);
    REQUIRE(m12.size() == m_direct.size());
    for (std::size_t k = 0; k < m12.size(); ++k) {
      CHECK(std::abs(m12.atoms()[k].position - m_direct.atoms()[k].position) < 1e-12);
      CHECK(std::abs(m12.atoms()[k].weight - m_direct.atoms()[k].weight) < 1e-12);
    }
    CHECK(std::abs(b12 - b_direct) < 1e-11);
  }
}

TEST_CASE("shift action realizes F_shift(z) = F(z + u)") {
  AtomicMeasure mu({{-2.0, 1.0}, {1.0, 0.5}});
  const double a = 0.7, b = -0.4;
  const cplx beta(b, a + mu.herglotz_norm());  // beta = F(i)
  const double u = 1.3;
  const auto [mu_s, beta_s] = shift_hp(mu, beta, u);

  HPFunction f(Represented{mu, a, b});
  HPFunction g(Represented{mu_s, beta_s.imag() - mu_s.herglotz_norm(), beta_s.real()});
  RngStream rng(79);
  for (int k = 0; k < 20; ++k) {
    const cplx z(rng.uniform(-5.0, 5.0), rng.uniform(0.1, 4.0));
    CHECK(std::abs(evaluate(g, z) - evaluate(f, z + u)) <
          1e-12 * std::max(1.0, std::abs(evaluate(f, z + u))));
  }
}

TEST_CASE("shift covariance diagnostic") {
  RngStream rng(83);
  const PointSample s = sample_poisson(2000.0, 1.0, rng);
  const cplx z(0.2, 1.0);
  CHECK(shift_covariance_check(s, 0.0, z, 500.0) < 1e-14);
  // the defect vanishes as the truncation window grows
  const double d_small = shift_covariance_check(s, 5.0, z, 100.0);
  const double d_large = shift_covariance_check(s, 5.0, z, 900.0);
  CHECK(d_large < 0.1);
  CHECK(d_large < d_small + 0.05);
}
