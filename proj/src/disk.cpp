#include "herglotz/disk.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "herglotz/errors.hpp"

namespace herglotz {

CircleMeasure::CircleMeasure(std::vector<Atom> atoms) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (auto& a : atoms) {
    if (!(a.mass > 0.0)) throw DomainError("CircleMeasure: masses must be positive");
    a.angle = std::fmod(a.angle, two_pi);
    if (a.angle < 0.0) a.angle += two_pi;
    // fmod can return two_pi after the wrap when angle is a tiny
    // negative number.
    if (a.angle >= two_pi) a.angle = 0.0;
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& x, const Atom& y) { return x.angle < y.angle; });
  for (const auto& a : atoms) {
    if (!atoms_.empty() && a.angle - atoms_.back().angle <= kMergeTolerance)
      atoms_.back().mass += a.mass;
    else
      atoms_.push_back(a);
  }
  // The seam: an atom within tolerance of two_pi belongs at 0.
  if (atoms_.size() > 1 && two_pi - atoms_.back().angle <= kMergeTolerance &&
      atoms_.front().angle <= kMergeTolerance) {
    atoms_.front().mass += atoms_.back().mass;
    atoms_.pop_back();
  } else if (!atoms_.empty() && two_pi - atoms_.back().angle <= kMergeTolerance) {
    atoms_.back().angle = 0.0;
    std::rotate(atoms_.begin(), atoms_.end() - 1, atoms_.end());
  }
  for (const auto& a : atoms_) total_mass_ += a.mass;
}

double CircleMeasure::mass_at_zero() const {
  if (!atoms_.empty() && atoms_.front().angle <= kMergeTolerance) return atoms_.front().mass;
  return 0.0;
}

std::complex<double> mobius_to_disk(std::complex<double> z) {
  if (z.imag() < -1e-15) throw DomainError("mobius_to_disk: Im z must be >= 0");
  const std::complex<double> i(0.0, 1.0);
  return (z - i) / (z + i);
}

std::complex<double> mobius_to_halfplane(std::complex<double> w) {
  if (std::abs(w) > 1.0 + 1e-12) throw DomainError("mobius_to_halfplane: |w| must be <= 1");
  const std::complex<double> one(1.0, 0.0);
  if (std::abs(w - one) < 1e-300)
    throw DomainError("mobius_to_halfplane: w = 1 is the point at infinity");
  const std::complex<double> i(0.0, 1.0);
  return i * (one + w) / (one - w);
}

std::complex<double> evaluate_disk(const DiskHP& g, std::complex<double> w) {
  if (std::abs(w) >= 1.0) throw DomainError("evaluate_disk: require |w| < 1");
  const std::complex<double> i(0.0, 1.0);
  std::complex<double> sum = g.b;
  for (const auto& atom : g.sigma.atoms()) {
    const std::complex<double> e = std::polar(1.0, atom.angle);
    sum += atom.mass * i * (e + w) / (e - w);
  }
  return sum;
}

}  // namespace herglotz
