#pragma once

#include <complex>
#include <vector>

namespace herglotz {

// Finite atomic measure on the unit circle, angles in [0, 2*pi).
// An atom at angle 0 plays the role of the linear coefficient a of the
// half-plane representation (the point at infinity).
class CircleMeasure {
 public:
  struct Atom {
    double angle;
    double mass;
  };

  static constexpr double kMergeTolerance = 1e-12;

  CircleMeasure() = default;
  explicit CircleMeasure(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  std::size_t size() const { return atoms_.size(); }

  // sigma(S) = total mass.
  double total_mass() const { return total_mass_; }

  // Mass sitting exactly at angle 0 (within merge tolerance).
  double mass_at_zero() const;

 private:
  std::vector<Atom> atoms_;
  double total_mass_ = 0.0;
};

// Disk-coordinate HP function G(w) = b + sum mass * i (e^{i theta} + w)
// / (e^{i theta} - w), determined by the pair (sigma, G(0)) with
// G(0) = b + i sigma(S).
struct DiskHP {
  CircleMeasure sigma;
  double b = 0.0;

  std::complex<double> at_zero() const {
    return std::complex<double>(b, sigma.total_mass());
  }
};

// Cayley transform w = (z - i)/(z + i) mapping the closed upper
// half-plane onto the closed unit disk (infinity -> 1).
std::complex<double> mobius_to_disk(std::complex<double> z);

// Inverse z = i (1 + w)/(1 - w); throws DomainError at w = 1.
std::complex<double> mobius_to_halfplane(std::complex<double> w);

// G(w) for |w| < 1.
std::complex<double> evaluate_disk(const DiskHP& g, std::complex<double> w);

}  // namespace herglotz
