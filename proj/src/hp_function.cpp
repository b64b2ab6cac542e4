#include "herglotz/hp_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "herglotz/errors.hpp"
#include "herglotz/stieltjes.hpp"

namespace herglotz {
namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// cot(w) without overflow: use the exponential that decays for the
// sign of Im w.
cplx stable_cot(cplx w) {
  const cplx i(0.0, 1.0);
  if (w.imag() >= 0.0) {
    const cplx q = std::exp(2.0 * i * w);  // |q| <= 1
    const cplx den = q - 1.0;
    if (std::abs(den) < 1e-300) throw PoleError("cot: pole");
    return i * (q + 1.0) / den;
  }
  const cplx p = std::exp(-2.0 * i * w);  // |p| < 1
  const cplx den = 1.0 - p;
  if (std::abs(den) < 1e-300) throw PoleError("cot: pole");
  return i * (1.0 + p) / den;
}

cplx evaluate_represented(const Represented& r, cplx z) {
  if (z.imag() == 0.0 && r.mu.distance_to_support(z.real()) < 1e-300)
    throw PoleError("evaluate: z is an atom");
  cplx sum = r.b + r.a * z;
  for (const auto& atom : r.mu.atoms()) {
    const double u = atom.position;
    sum += atom.weight * (1.0 / (u - z) - u / (u * u + 1.0));
  }
  return sum;
}

cplx evaluate_quasiperiodic(const QuasiPeriodic& q, cplx z) {
  cplx sum = 0.0;
  for (std::size_t j = 0; j < q.alpha.size(); ++j)
    sum -= q.alpha[j] * stable_cot(q.beta[j] * z + q.theta[j]);
  return sum;
}

double dist_to_multiple(double y, double period) {
  const double r = std::abs(std::remainder(y, period));
  return r;
}

}  // namespace

HPFunction::HPFunction(Represented r) : variant_(std::move(r)) {
  const auto& rep = std::get<Represented>(variant_);
  if (rep.a < 0.0) throw DomainError("HPFunction: coefficient a must be >= 0");
}

HPFunction::HPFunction(Periodic p) : variant_(p) {}

HPFunction::HPFunction(QuasiPeriodic q) : variant_(std::move(q)) {
  const auto& qp = std::get<QuasiPeriodic>(variant_);
  if (qp.alpha.size() != qp.beta.size() || qp.alpha.size() != qp.theta.size())
    throw DomainError("HPFunction: quasi-periodic parameter lengths differ");
  for (double a : qp.alpha)
    if (a < 0.0) throw DomainError("HPFunction: alpha_j must be >= 0");
}

HPFunction::HPFunction(ProcessTruncated t) : variant_(std::move(t)) {
  const auto& pt = std::get<ProcessTruncated>(variant_);
  if (!(pt.window > 0.0) || pt.window > pt.sample.window() * (1.0 + 1e-12))
    throw DomainError("HPFunction: truncation window must lie in (0, W]");
}

std::complex<double> evaluate(const HPFunction& f, std::complex<double> z) {
  if (z.imag() < 0.0) throw DomainError("evaluate: Im z must be >= 0");
  if (z.imag() == 0.0 &&
      pole_distance(f, z.real()) < 1e-12 * std::max(1.0, std::abs(z.real())))
    throw PoleError("evaluate: z is at a boundary pole");
  return std::visit(
      [&](const auto& v) -> cplx {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Represented>) {
          return evaluate_represented(v, z);
        } else if constexpr (std::is_same_v<T, Periodic>) {
          return -kPi * stable_cot(kPi * z);
        } else if constexpr (std::is_same_v<T, QuasiPeriodic>) {
          return evaluate_quasiperiodic(v, z);
        } else {
          return corrected_transform(v.sample, z, v.window).value;
        }
      },
      f.variant());
}

double pole_distance(const HPFunction& f, double x) {
  const double inf = std::numeric_limits<double>::infinity();
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Represented>) {
          return v.mu.distance_to_support(x);
        } else if constexpr (std::is_same_v<T, Periodic>) {
          return dist_to_multiple(x, 1.0);
        } else if constexpr (std::is_same_v<T, QuasiPeriodic>) {
          double d = inf;
          for (std::size_t j = 0; j < v.alpha.size(); ++j) {
            if (v.alpha[j] == 0.0 || v.beta[j] == 0.0) continue;
            d = std::min(d, dist_to_multiple(v.beta[j] * x + v.theta[j], kPi) /
                                std::abs(v.beta[j]));
          }
          return d;
        } else {
          // Points inside the truncation radius are poles; the window
          // edges +-n carry the log singularity of the reference term.
          double d = std::min(std::abs(x - v.window), std::abs(x + v.window));
          for (double p : v.sample.points())
            if (std::abs(p) <= v.window) d = std::min(d, std::abs(p - x));
          return d;
        }
      },
      f.variant());
}

DiskHP to_disk(const HPFunction& f) {
  const auto* rep = f.get_if<Represented>();
  if (!rep) throw DomainError("to_disk: requires the Represented variant");
  std::vector<CircleMeasure::Atom> atoms;
  atoms.reserve(rep->mu.size() + 1);
  if (rep->a > 0.0) atoms.push_back({0.0, rep->a});
  for (const auto& atom : rep->mu.atoms()) {
    // u = -cot(theta/2): the circle point is (cos, sin) proportional
    // to (-u, 1), always in the open upper semicircle range (0, 2 pi).
    const double u = atom.position;
    const double theta = 2.0 * std::atan2(1.0, -u);
    atoms.push_back({theta, atom.weight / (u * u + 1.0)});
  }
  return DiskHP{CircleMeasure(std::move(atoms)), rep->b};
}

namespace {

struct Quad {
  cplx value;
  double abs_error = 0.0;
};

template <typename G>
void adaptive_simpson(const G& g, double a, double b, cplx fa, cplx fm, cplx fb, cplx whole,
                      double tol, int depth, Quad& out) {
  const double m = 0.5 * (a + b);
  const cplx fl = g(0.5 * (a + m));
  const cplx fr = g(0.5 * (m + b));
  const cplx left = (m - a) / 6.0 * (fa + 4.0 * fl + fm);
  const cplx right = (b - m) / 6.0 * (fm + 4.0 * fr + fb);
  const double diff = std::abs(left + right - whole);
  if (depth <= 0 || diff < 15.0 * tol) {
    out.value += left + right + (left + right - whole) / 15.0;
    out.abs_error += diff / 15.0;
    return;
  }
  adaptive_simpson(g, a, m, fa, fl, fm, left, 0.5 * tol, depth - 1, out);
  adaptive_simpson(g, m, b, fm, fr, fb, right, 0.5 * tol, depth - 1, out);
}

template <typename G>
Quad integrate(const G& g, double a, double b, double tol) {
  Quad out;
  if (!(b > a)) return out;
  const cplx fa = g(a), fb = g(b), fm = g(0.5 * (a + b));
  const cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  adaptive_simpson(g, a, b, fa, fm, fb, whole, tol, 28, out);
  return out;
}

// Poles of the boundary-value map in [lo, hi], sorted.
std::vector<double> poles_in(const HPFunction& f, double lo, double hi) {
  std::vector<double> ps;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Represented>) {
          for (const auto& atom : v.mu.atoms())
            if (atom.position >= lo && atom.position <= hi) ps.push_back(atom.position);
        } else if constexpr (std::is_same_v<T, Periodic>) {
          for (double k = std::ceil(lo); k <= std::floor(hi); k += 1.0) ps.push_back(k);
        } else if constexpr (std::is_same_v<T, QuasiPeriodic>) {
          for (std::size_t j = 0; j < v.alpha.size(); ++j) {
            if (v.alpha[j] == 0.0 || v.beta[j] == 0.0) continue;
            const double period = kPi / std::abs(v.beta[j]);
            const double first = -v.theta[j] / v.beta[j];
            const double k0 = std::ceil((lo - first) / period);
            for (double x = first + k0 * period; x <= hi; x += period) ps.push_back(x);
          }
        } else {
          for (double p : v.sample.points())
            if (std::abs(p) <= v.window && p >= lo && p <= hi) ps.push_back(p);
          if (v.window >= lo && v.window <= hi) ps.push_back(v.window);
          if (-v.window >= lo && -v.window <= hi) ps.push_back(-v.window);
        }
      },
      f.variant());
  std::sort(ps.begin(), ps.end());
  return ps;
}

}  // namespace

SmoothResult poisson_smooth(const HPFunction& f, double x, double eta, double tolerance) {
  if (!(eta > 0.0)) throw DomainError("poisson_smooth: eta must be positive");
  if (!(tolerance > 0.0)) throw DomainError("poisson_smooth: tolerance must be positive");
  const cplx i(0.0, 1.0);
  const auto integrand = [&](double u) -> cplx {
    const cplx fu = evaluate(f, cplx(u, 0.0));
    const cplx psi = -1.0 / (fu + i);
    const double du = u - x;
    return psi * (eta / (kPi * (du * du + eta * eta)));
  };

  constexpr double kExclusion = 1e-6;  // half-width skipped around each pole
  const auto integrate_range = [&](double lo, double hi, double tol) -> Quad {
    Quad total;
    std::vector<double> cuts = poles_in(f, lo - kExclusion, hi + kExclusion);
    double a = lo;
    for (double p : cuts) {
      const double b = std::min(hi, p - kExclusion);
      if (b > a) {
        const Quad q = integrate(integrand, a, b, tol * (b - a) / (hi - lo));
        total.value += q.value;
        total.abs_error += q.abs_error;
      }
      a = std::max(a, p + kExclusion);
      // |Psi| <= 1, so the excluded slit contributes at most its local
      // Poisson-kernel mass (summable over arbitrarily many poles).
      const double dp = p - x;
      total.abs_error += 2.0 * kExclusion * eta / (kPi * (dp * dp + eta * eta));
    }
    if (hi > a) {
      const Quad q = integrate(integrand, a, hi, tol * (hi - a) / (hi - lo));
      total.value += q.value;
      total.abs_error += q.abs_error;
    }
    return total;
  };

  SmoothResult result{cplx(0.0), 0.0};
  double radius = 50.0 * eta;
  const double quad_tol = 0.25 * tolerance;
  Quad q = integrate_range(x - radius, x + radius, 0.5 * quad_tol);
  result.value = q.value;
  double tail = (2.0 / kPi) * std::atan(eta / radius);  // |Psi| <= 1 bound
  double quad_err = q.abs_error;
  for (int level = 0; level < 12 && tail > 0.5 * tolerance; ++level) {
    const double next = 2.0 * radius;
    const Quad left = integrate_range(x - next, x - radius, quad_tol / 24.0);
    const Quad right = integrate_range(x + radius, x + next, quad_tol / 24.0);
    result.value += left.value + right.value;
    quad_err += left.abs_error + right.abs_error;
    radius = next;
    tail = (2.0 / kPi) * std::atan(eta / radius);
  }
  result.error_estimate = tail + quad_err;
  if (result.error_estimate > tolerance)
    throw AccuracyError("poisson_smooth: quadrature did not reach tolerance",
                        result.error_estimate);
  return result;
}

}  // namespace herglotz
