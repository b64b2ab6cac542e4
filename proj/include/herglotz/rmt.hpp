#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "herglotz/point_process.hpp"
#include "herglotz/rng.hpp"

namespace herglotz {

// A realized random-matrix spectrum, sorted ascending.  All ensembles
// here are normalized so the bulk occupies [-2, 2] (making the
// semicircle density exact as printed).
struct Spectrum {
  std::vector<double> eigenvalues;
  int n = 0;
  const char* ensemble = "none";
  SeedRecord seed;
};

// Eigenvalues of the symmetric tridiagonal matrix with the given
// diagonal (length n) and off-diagonal (length n-1); eigenvalues-only
// implicit-shift QL with Wilkinson shifts.  Throws NumericalError if
// any eigenvalue needs more than 50 iterations.
std::vector<double> tridiag_eigenvalues(std::vector<double> diagonal,
                                        std::vector<double> offdiagonal);

// Eigenvalues of a complex Hermitian matrix (row-major, n x n, n <=
// 256) via cyclic Jacobi on the real-symmetric 2n embedding
// [[X, -Y], [Y, X]].  Input must be Hermitian within 1e-12.
std::vector<double> dense_hermitian_eigenvalues(const std::vector<std::complex<double>>& matrix,
                                                int n);

// rho_sc(E) = sqrt(1 - (E/2)^2) / pi on [-2, 2].
double semicircle_density(double E);

// GUE spectrum via the beta = 2 tridiagonal (Hermite) model: diagonal
// i.i.d. N(0,1), off-diagonal chi_{2(n-k)} / sqrt(2), eigenvalues
// scaled by 1/sqrt(n) so the empirical density converges to rho_sc.
Spectrum sample_gue_spectrum(int n, RngStream rng);

// Dense-matrix GUE oracle (explicit complex Hermitian entries + Jacobi
// eigensolver); O(n^3), intended for small-n cross-checks only.
Spectrum sample_gue_dense(int n, RngStream rng);

// Microscopic rescaling around a bulk energy: points n rho(E0) (E_j -
// E0), window W = n rho(E0) (2 - |E0|); eigenvalues that rescale
// outside [-W, W] (spectral-edge outliers) are dropped.  Requires
// |E0| <= 1.8 to stay away from the edge.
PointSample microscopic_rescale(const Spectrum& spec, double e0, double density_at_e0);

// An i.i.d. diagonal-entry distribution: a sampler plus its density.
struct DensitySpec {
  std::function<double(RngStream&)> sample;
  std::function<double(double)> pdf;
};

DensitySpec standard_normal_density();

// Draws V_1..V_n i.i.d. from the density and rescales around E0:
// points n rho(E0) (V_j - E0).  The window is widened to contain every
// point, so nothing is dropped.
PointSample sample_diagonal_rescaled(int n, const DensitySpec& density, double e0,
                                     RngStream rng);

}  // namespace herglotz
