#include "herglotz/rmt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "herglotz/errors.hpp"

namespace herglotz {
namespace {

// One QL sweep family (eigenvalues-only implicit shift); d and e are
// modified in place, e has length n with a trailing scratch slot.
void tqli_eigenvalues(std::vector<double>& d, std::vector<double>& e) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return;
  e.push_back(0.0);
  constexpr double kDeflate = 1e-15;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double scale = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kDeflate * scale) break;
      }
      if (m == l) break;
      if (iter++ == 50)
        throw NumericalError("tridiag_eigenvalues: QL iteration cap exceeded");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);  // Wilkinson shift
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      int i;
      for (i = m - 1; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (r == 0.0 && i >= l) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
  e.pop_back();
}

// Cyclic Jacobi, eigenvalues only, on a dense symmetric matrix stored
// row-major.
void jacobi_symmetric(std::vector<double>& a, int n) {
  auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
  double norm = 0.0;
  for (double v : a) norm += v * v;
  norm = std::sqrt(norm);
  if (norm == 0.0) return;

  for (int sweep = 0; sweep < 50; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += 2.0 * at(i, j) * at(i, j);
    if (std::sqrt(off) <= 1e-13 * norm) return;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double tau = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, tau) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const double app = at(p, p), aqq = at(q, q);
        at(p, p) = app - t * apq;
        at(q, q) = aqq + t * apq;
        at(p, q) = 0.0;
        at(q, p) = 0.0;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
          at(p, k) = at(k, p);
          at(q, k) = at(k, q);
        }
      }
    }
  }
  throw NumericalError("dense_hermitian_eigenvalues: Jacobi sweep cap exceeded");
}

}  // namespace

std::vector<double> tridiag_eigenvalues(std::vector<double> diagonal,
                                        std::vector<double> offdiagonal) {
  if (offdiagonal.size() + 1 != diagonal.size() && !(diagonal.size() == 0 && offdiagonal.empty()))
    throw DomainError("tridiag_eigenvalues: off-diagonal length must be n - 1");
  tqli_eigenvalues(diagonal, offdiagonal);
  std::sort(diagonal.begin(), diagonal.end());
  return diagonal;
}

std::vector<double> dense_hermitian_eigenvalues(const std::vector<std::complex<double>>& matrix,
                                                int n) {
  if (n <= 0 || n > 256) throw DomainError("dense_hermitian_eigenvalues: require 1 <= n <= 256");
  if (matrix.size() != static_cast<std::size_t>(n) * n)
    throw DomainError("dense_hermitian_eigenvalues: size mismatch");
  double scale = 0.0;
  for (const auto& v : matrix) scale = std::max(scale, std::abs(v));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto d = matrix[static_cast<std::size_t>(i) * n + j] -
                     std::conj(matrix[static_cast<std::size_t>(j) * n + i]);
      if (std::abs(d) > 1e-12 * std::max(1.0, scale))
        throw DomainError("dense_hermitian_eigenvalues: input is not Hermitian");
    }

  // Real-symmetric embedding of H = X + iY: [[X, -Y], [Y, X]]; its
  // spectrum is that of H with every eigenvalue doubled.
  const int m = 2 * n;
  std::vector<double> a(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto h = matrix[static_cast<std::size_t>(i) * n + j];
      a[static_cast<std::size_t>(i) * m + j] = h.real();
      a[static_cast<std::size_t>(i) * m + (n + j)] = -h.imag();
      a[static_cast<std::size_t>(n + i) * m + j] = h.imag();
      a[static_cast<std::size_t>(n + i) * m + (n + j)] = h.real();
    }
  jacobi_symmetric(a, m);
  std::vector<double> eig(m);
  for (int i = 0; i < m; ++i) eig[i] = a[static_cast<std::size_t>(i) * m + i];
  std::sort(eig.begin(), eig.end());
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = 0.5 * (eig[2 * i] + eig[2 * i + 1]);
  return out;
}

double semicircle_density(double E) {
  if (std::abs(E) > 2.0) throw DomainError("semicircle_density: require |E| <= 2");
  return std::sqrt(1.0 - 0.25 * E * E) / std::numbers::pi;
}

Spectrum sample_gue_spectrum(int n, RngStream rng) {
  if (n < 2) throw DomainError("sample_gue_spectrum: require n >= 2");
  std::vector<double> diag(n), off(n - 1);
  for (int i = 0; i < n; ++i) diag[i] = rng.normal();
  const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
  for (int k = 0; k < n - 1; ++k) off[k] = rng.chi(2.0 * (n - 1 - k)) * inv_sqrt2;
  std::vector<double> eig = tridiag_eigenvalues(std::move(diag), std::move(off));
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (double& e : eig) e *= scale;
  return Spectrum{std::move(eig), n, "gue-tridiagonal", SeedRecord{rng.seed(), "gue-tridiagonal"}};
}

Spectrum sample_gue_dense(int n, RngStream rng) {
  if (n < 2 || n > 256) throw DomainError("sample_gue_dense: require 2 <= n <= 256");
  std::vector<std::complex<double>> h(static_cast<std::size_t>(n) * n);
  const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
  for (int i = 0; i < n; ++i) {
    h[static_cast<std::size_t>(i) * n + i] = rng.normal();
    for (int j = i + 1; j < n; ++j) {
      const std::complex<double> v(rng.normal() * inv_sqrt2, rng.normal() * inv_sqrt2);
      h[static_cast<std::size_t>(i) * n + j] = v;
      h[static_cast<std::size_t>(j) * n + i] = std::conj(v);
    }
  }
  std::vector<double> eig = dense_hermitian_eigenvalues(h, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (double& e : eig) e *= scale;
  return Spectrum{std::move(eig), n, "gue-dense", SeedRecord{rng.seed(), "gue-dense"}};
}

PointSample microscopic_rescale(const Spectrum& spec, double e0, double density_at_e0) {
  if (std::abs(e0) > 1.8)
    throw DomainError("microscopic_rescale: |E0| <= 1.8 (bulk energies only)");
  if (!(density_at_e0 > 0.0)) throw DomainError("microscopic_rescale: density must be positive");
  const double scale = spec.n * density_at_e0;
  const double window = scale * (2.0 - std::abs(e0));
  std::vector<double> pts;
  pts.reserve(spec.eigenvalues.size());
  for (double e : spec.eigenvalues) {
    const double p = scale * (e - e0);
    if (std::abs(p) <= window) pts.push_back(p);
  }
  return PointSample(std::move(pts), window, 1.0,
                     SeedRecord{spec.seed.seed, "microscopic-rescale"});
}

DensitySpec standard_normal_density() {
  const double c = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  return DensitySpec{[](RngStream& rng) { return rng.normal(); },
                     [c](double v) { return c * std::exp(-0.5 * v * v); }};
}

PointSample sample_diagonal_rescaled(int n, const DensitySpec& density, double e0,
                                     RngStream rng) {
  if (n < 1) throw DomainError("sample_diagonal_rescaled: require n >= 1");
  const double rho0 = density.pdf(e0);
  if (!(rho0 > 0.0)) throw DomainError("sample_diagonal_rescaled: density vanishes at E0");
  const double scale = n * rho0;
  std::vector<double> pts(n);
  double max_abs = 0.0;
  for (int j = 0; j < n; ++j) {
    pts[j] = scale * (density.sample(rng) - e0);
    max_abs = std::max(max_abs, std::abs(pts[j]));
  }
  return PointSample(std::move(pts), max_abs + 1.0, 1.0,
                     SeedRecord{rng.seed(), "diagonal-rescaled"});
}

}  // namespace herglotz
