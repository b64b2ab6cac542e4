#include "herglotz/atomic_measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace herglotz {

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms) {
  for (const auto& a : atoms) {
    if (!(a.weight > 0.0)) throw std::invalid_argument("AtomicMeasure: weights must be positive");
    if (!std::isfinite(a.position) || !std::isfinite(a.weight))
      throw std::invalid_argument("AtomicMeasure: non-finite atom");
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& l, const Atom& r) { return l.position < r.position; });
  atoms_.reserve(atoms.size());
  for (const auto& a : atoms) {
    if (!atoms_.empty() && a.position - atoms_.back().position <= kMergeTolerance) {
      atoms_.back().weight += a.weight;
    } else {
      atoms_.push_back(a);
    }
  }
  for (const auto& a : atoms_) {
    total_weight_ += a.weight;
    herglotz_norm_ += a.weight / (a.position * a.position + 1.0);
  }
}

double AtomicMeasure::herglotz_norm_direct() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.weight / (a.position * a.position + 1.0);
  return s;
}

double AtomicMeasure::distance_to_support(double x) const {
  if (atoms_.empty()) return std::numeric_limits<double>::infinity();
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                             [](const Atom& a, double v) { return a.position < v; });
  double d = std::numeric_limits<double>::infinity();
  if (it != atoms_.end()) d = std::min(d, std::abs(it->position - x));
  if (it != atoms_.begin()) d = std::min(d, std::abs(std::prev(it)->position - x));
  return d;
}

}  // namespace herglotz
