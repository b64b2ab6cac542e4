#include "herglotz/sine_kernel.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

#include "herglotz/errors.hpp"

namespace herglotz {
namespace {

using cplx = std::complex<double>;

// In-place iterative radix-2 FFT (inverse = conjugate trick by caller).
void fft(std::vector<cplx>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    const cplx wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cplx w(1.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cplx u = a[i + k];
        const cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse)
    for (auto& x : a) x /= static_cast<double>(n);
}

// Entry of the discretized kernel at cell offset m: sin(pi h m)/(pi m).
double kernel_entry(double h, long long offset) {
  if (offset == 0) return h;
  const double m = static_cast<double>(offset);
  return std::sin(std::numbers::pi * h * m) / (std::numbers::pi * m);
}

struct Model {
  int n = 0;
  double h = 0.0;
  double window = 0.0;  // grid-aligned effective half-width
  int sure_count = 0;
  std::vector<double> trans_lambda;           // kept transition eigenvalues
  std::vector<std::vector<double>> trans_vec; // matching eigenvectors (length n)
  SineKernelModelInfo info;
};

// y = K v via circulant embedding; spec holds FFT(first circulant column).
struct ToeplitzMultiplier {
  std::size_t L;
  std::vector<cplx> spec;

  ToeplitzMultiplier(int n, double h) {
    L = 1;
    while (L < 2 * static_cast<std::size_t>(n)) L <<= 1;
    std::vector<cplx> c(L, 0.0);
    for (int j = 0; j < n; ++j) {
      const double v = kernel_entry(h, j);
      c[static_cast<std::size_t>(j)] = v;
      if (j > 0) c[L - static_cast<std::size_t>(j)] = v;
    }
    fft(c, false);
    spec = std::move(c);
  }

  std::vector<double> apply(const std::vector<double>& v) const {
    std::vector<cplx> a(L, 0.0);
    for (std::size_t j = 0; j < v.size(); ++j) a[j] = v[j];
    fft(a, false);
    for (std::size_t j = 0; j < L; ++j) a[j] *= spec[j];
    fft(a, true);
    std::vector<double> y(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) y[j] = a[j].real();
    return y;
  }
};

std::shared_ptr<const Model> build_model(double window, double h) {
  if (!(h > 0.0) || h > 0.1) throw DomainError("sample_sine_kernel: require 0 < h <= 0.1");
  if (!(window > 0.0)) throw DomainError("sample_sine_kernel: window must be positive");
  if (2.0 * window / h > 4.0e4) throw DomainError("sample_sine_kernel: 2W/h exceeds 4e4");

  auto model = std::make_shared<Model>();
  const int n = static_cast<int>(std::llround(2.0 * window / h)) + 1;
  model->n = n;
  model->h = h;
  model->window = 0.5 * (n - 1) * h;

  // The grid kernel commutes with the classic tridiagonal
  //   T_ii = ((n-1-2i)/2)^2 cos(pi h),   T_{i,i+1} = (i+1)(n-1-i)/2,
  // so its eigenvectors can be computed in O(n^2) from T; ordering of
  // T-eigenvalues (descending) matches ordering of kernel eigenvalues.
  // Only the transition block of the spectrum is needed explicitly:
  // eigenvalues above it are exponentially close to 1, below it to 0.
  const double trace = n * h;
  const double cosph = std::cos(std::numbers::pi * h);
  const ToeplitzMultiplier mult(n, h);

  int buffer = 120;
  for (;; buffer *= 2) {
    const int k_lo = std::max(1, static_cast<int>(std::floor(trace)) - buffer);
    const int k_hi = std::min(n, static_cast<int>(std::ceil(trace)) + buffer);
    const int il = n - k_hi + 1;  // ascending LAPACK indices
    const int iu = n - k_lo + 1;
    const int m_req = iu - il + 1;

    std::vector<double> diag(n), off(std::max(0, n - 1));
    for (int i = 0; i < n; ++i) {
      const double c = 0.5 * (n - 1 - 2 * i);
      diag[i] = c * c * cosph;
    }
    for (int i = 0; i + 1 < n; ++i) off[i] = 0.5 * (i + 1.0) * (n - 1.0 - i);

    std::vector<double> w(n);
    std::vector<double> z(static_cast<std::size_t>(n) * m_req);
    std::vector<lapack_int> isuppz(2 * std::max(1, m_req));
    lapack_int m_found = 0;
    const lapack_int ret = LAPACKE_dstevr(
        LAPACK_COL_MAJOR, 'V', 'I', n, diag.data(), off.data(), 0.0, 0.0, il, iu, 0.0, &m_found,
        w.data(), z.data(), n, isuppz.data());
    if (ret != 0 || m_found != m_req)
      throw NumericalError("sine kernel: tridiagonal eigensolver failed");

    // Column j (ascending T order) corresponds to kernel rank k_hi - j.
    std::vector<double> lambda(m_req);
    std::vector<double> vbuf(n);
    for (int j = 0; j < m_req; ++j) {
      std::copy_n(&z[static_cast<std::size_t>(j) * n], n, vbuf.begin());
      const auto kv = mult.apply(vbuf);
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += vbuf[i] * kv[i];
      lambda[j] = dot;
    }

    // Window must actually bracket the transition.
    const bool top_ok = k_lo == 1 || lambda[m_req - 1] > 1.0 - 1e-10;
    const bool bot_ok = k_hi == n || lambda[0] < 1e-10;
    if ((!top_ok || !bot_ok) && buffer < n) continue;

    constexpr double kEdge = 1e-12;
    double clipped = 0.0, accounted = 0.0;
    int sure_in_window = 0;
    for (int j = m_req - 1; j >= 0; --j) {
      double lam = lambda[j];
      if (lam > 1.0) {
        clipped += lam - 1.0;
        lam = 1.0;
      } else if (lam < 0.0) {
        clipped += -lam;
        lam = 0.0;
      }
      if (lam >= 1.0 - kEdge) {
        ++sure_in_window;
        accounted += 1.0;
      } else if (lam > kEdge) {
        model->trans_lambda.push_back(lam);
        auto& vec = model->trans_vec.emplace_back(n);
        std::copy_n(&z[static_cast<std::size_t>(j) * n], n, vec.begin());
        accounted += lam;
      }
    }
    model->sure_count = (k_lo - 1) + sure_in_window;

    auto& info = model->info;
    info.grid_size = n;
    info.window = model->window;
    info.spacing = h;
    info.sure_count = model->sure_count;
    info.transition_count = static_cast<int>(model->trans_lambda.size());
    info.expected_points = trace;
    info.clipped_mass = clipped;
    info.unaccounted_mass = std::abs(trace - (model->sure_count + (accounted - sure_in_window)));
    if (info.clipped_mass > 1e-3)
      throw AccuracyError("sine kernel: clipped eigenvalue mass exceeds 1e-3", info.clipped_mass);
    if (info.unaccounted_mass > 1e-3)
      throw AccuracyError("sine kernel: unaccounted eigenvalue mass exceeds 1e-3",
                          info.unaccounted_mass);
    return model;
  }
}

std::shared_ptr<const Model> get_model(double window, double h) {
  static std::mutex mu;
  static std::map<std::pair<double, double>, std::shared_ptr<const Model>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(window, h);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto model = build_model(window, h);
  cache.emplace(key, model);
  return model;
}

}  // namespace

PointSample sample_sine_kernel(double window, double spacing, RngStream rng) {
  const auto model = get_model(window, spacing);
  const int n = model->n;
  const double h = model->h;
  const std::size_t m_trans = model->trans_lambda.size();

  // Bernoulli selection of transition eigenvectors.  The selected-rank
  // projection kernel is never formed: columns are generated on demand
  // as P e_i = K e_i - sum_t (lambda_t - s_t) v_t(i) v_t, with sure
  // eigenvalues taken as exactly 1.
  std::vector<double> weight(m_trans);  // lambda_t - s_t
  int k_sel = model->sure_count;
  for (std::size_t t = 0; t < m_trans; ++t) {
    const bool selected = rng.uniform() < model->trans_lambda[t];
    weight[t] = model->trans_lambda[t] - (selected ? 1.0 : 0.0);
    if (selected) ++k_sel;
  }

  std::vector<double> d(n, h);
  for (std::size_t t = 0; t < m_trans; ++t) {
    const auto& v = model->trans_vec[t];
    const double wt = weight[t];
    for (int i = 0; i < n; ++i) d[i] -= wt * v[i] * v[i];
  }
  for (auto& x : d)
    if (x < 0.0) x = 0.0;

  // Sequential sampling: pick a cell from the projection diagonal, add
  // the normalized kernel column as a Cholesky/Gram-Schmidt column, and
  // downdate the diagonal.  The column store is float; the diagonal and
  // all accumulations stay in double.
  std::vector<float> chol(static_cast<std::size_t>(n) * k_sel);
  std::vector<double> p(n), row(k_sel), corr(m_trans);
  std::vector<int> chosen;
  chosen.reserve(k_sel);
  double total = 0.0;
  for (double x : d) total += x;

  for (int t = 0; t < k_sel; ++t) {
    if ((t & 63) == 0) {  // refresh against drift
      total = 0.0;
      for (double x : d) total += x;
    }
    int pick = -1;
    for (int attempt = 0; attempt < 64 && pick < 0; ++attempt) {
      double r = rng.uniform() * total;
      int last_pos = -1;
      for (int i = 0; i < n; ++i) {
        if (d[i] <= 0.0) continue;
        last_pos = i;
        r -= d[i];
        if (r <= 0.0) {
          pick = i;
          break;
        }
      }
      if (pick < 0) pick = last_pos;
      if (pick >= 0 && d[pick] < 1e-11) pick = -1;  // numerically exhausted cell
    }
    if (pick < 0) throw NumericalError("sine kernel: projection diagonal exhausted");

    // p = P e_pick
    for (int i = 0; i < n; ++i) p[i] = kernel_entry(h, i - pick);
    for (std::size_t s = 0; s < m_trans; ++s) corr[s] = weight[s] * model->trans_vec[s][pick];
    for (std::size_t s = 0; s < m_trans; ++s) {
      const double cs = corr[s];
      if (cs == 0.0) continue;
      const auto& v = model->trans_vec[s];
      for (int i = 0; i < n; ++i) p[i] -= cs * v[i];
    }
    // p -= C[:, 0..t) * C[pick, 0..t)
    for (int s = 0; s < t; ++s) row[s] = chol[static_cast<std::size_t>(s) * n + pick];
    int s = 0;
    for (; s + 4 <= t; s += 4) {
      const float* c0 = &chol[static_cast<std::size_t>(s) * n];
      const float* c1 = c0 + n;
      const float* c2 = c1 + n;
      const float* c3 = c2 + n;
      const double y0 = row[s], y1 = row[s + 1], y2 = row[s + 2], y3 = row[s + 3];
      for (int i = 0; i < n; ++i)
        p[i] -= y0 * c0[i] + y1 * c1[i] + y2 * c2[i] + y3 * c3[i];
    }
    for (; s < t; ++s) {
      const float* c0 = &chol[static_cast<std::size_t>(s) * n];
      const double y0 = row[s];
      for (int i = 0; i < n; ++i) p[i] -= y0 * c0[i];
    }

    const double inv = 1.0 / std::sqrt(d[pick]);
    float* col = &chol[static_cast<std::size_t>(t) * n];
    for (int i = 0; i < n; ++i) {
      const double c = p[i] * inv;
      col[i] = static_cast<float>(c);
      const double nd = d[i] - c * c;
      total -= d[i] - (nd > 0.0 ? nd : 0.0);
      d[i] = nd > 0.0 ? nd : 0.0;
    }
    total -= d[pick];
    d[pick] = 0.0;
    chosen.push_back(pick);
  }

  std::sort(chosen.begin(), chosen.end());
  std::vector<double> points(chosen.size());
  for (std::size_t i = 0; i < chosen.size(); ++i)
    points[i] = -model->window + chosen[i] * h;
  return PointSample(std::move(points), model->window, 1.0,
                     SeedRecord{rng.seed(), "sine-kernel"});
}

SineKernelModelInfo sine_kernel_model_info(double window, double spacing) {
  return get_model(window, spacing)->info;
}

}  // namespace herglotz
