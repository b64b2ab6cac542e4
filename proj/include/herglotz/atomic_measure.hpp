#pragma once

#include <cstddef>
#include <vector>

namespace herglotz {

// Finite weighted point configuration on the real line: the discrete
// spectral measure mu = sum_j w_j delta_{u_j}.
//
// Positions are strictly increasing after construction (entries closer
// than the merge tolerance are coalesced, weights summed) and all
// weights are positive.
class AtomicMeasure {
 public:
  struct Atom {
    double position;
    double weight;
  };

  static constexpr double kMergeTolerance = 1e-12;

  AtomicMeasure() = default;
  explicit AtomicMeasure(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  std::size_t size() const { return atoms_.size(); }

  // mu(R) = sum of weights.
  double total_weight() const { return total_weight_; }

  // sum_j w_j / (u_j^2 + 1); cached at construction.
  double herglotz_norm() const { return herglotz_norm_; }

  // Uncached recomputation, for consistency checks.
  double herglotz_norm_direct() const;

  // Distance from x to the nearest atom (+inf when empty).
  double distance_to_support(double x) const;

 private:
  std::vector<Atom> atoms_;
  double total_weight_ = 0.0;
  double herglotz_norm_ = 0.0;
};

}  // namespace herglotz
