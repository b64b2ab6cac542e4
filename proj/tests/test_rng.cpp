#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "herglotz/rng.hpp"

using herglotz::RngStream;

TEST_CASE("identical seeds give identical streams") {
  RngStream a(42), b(42);
  for (int i = 0; i < 1000; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("substream derivation is stateless") {
  RngStream root(7);
  RngStream s1 = root.substream(3);
  root.next();  // advancing the parent must not affect child derivation
  RngStream s2 = root.substream(3);
  for (int i = 0; i < 100; ++i) CHECK(s1.next() == s2.next());
}

TEST_CASE("distinct substreams differ") {
  RngStream root(7);
  RngStream a = root.substream(0), b = root.substream(1);
  int agree = 0;
  for (int i = 0; i < 64; ++i)
    if (a.next() == b.next()) ++agree;
  CHECK(agree == 0);
}

TEST_CASE("uniform moments") {
  RngStream r(11);
  double sum = 0.0, sum2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
    sum2 += u * u;
  }
  CHECK(std::abs(sum / n - 0.5) < 0.005);
  CHECK(std::abs(sum2 / n - 1.0 / 3.0) < 0.005);
}

TEST_CASE("normal moments") {
  RngStream r(13);
  double sum = 0.0, sum2 = 0.0, sum4 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = r.normal();
    sum += x;
    sum2 += x * x;
    sum4 += x * x * x * x;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(std::abs(sum2 / n - 1.0) < 0.02);
  CHECK(std::abs(sum4 / n - 3.0) < 0.1);  // Gaussian kurtosis
}

TEST_CASE("exponential mean") {
  RngStream r(17);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += r.exponential(2.0);
  CHECK(std::abs(sum / n - 0.5) < 0.01);
}

TEST_CASE("gamma moments for several shapes") {
  RngStream r(19);
  for (double shape : {1.0, 2.5, 7.0}) {
    double sum = 0.0, sum2 = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
      const double x = r.gamma(shape);
      sum += x;
      sum2 += x * x;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean - shape) < 0.05 * shape + 0.02);
    CHECK(std::abs(var - shape) < 0.1 * shape + 0.05);
  }
}

TEST_CASE("chi squared mean: E[chi_k^2] = k") {
  RngStream r(23);
  for (double dof : {2.0, 6.0, 40.0}) {
    double sum2 = 0.0;
    const int n = 50000;
    for (int i = 0; i < n; ++i) {
      const double x = r.chi(dof);
      sum2 += x * x;
    }
    CHECK(std::abs(sum2 / n - dof) < 0.05 * dof);
  }
}
