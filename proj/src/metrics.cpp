#include "herglotz/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "herglotz/errors.hpp"

namespace herglotz {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAngleTol = 1e-12;

}  // namespace

double variational_distance(const CircleMeasure& s1, const CircleMeasure& s2) {
  const auto& a = s1.atoms();
  const auto& b = s2.atoms();
  double tv = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].angle < b[j].angle - kAngleTol)) {
      tv += a[i++].mass;
    } else if (i == a.size() || b[j].angle < a[i].angle - kAngleTol) {
      tv += b[j++].mass;
    } else {
      tv += std::abs(a[i++].mass - b[j++].mass);
    }
  }
  return tv;
}

double wasserstein_circle(const CircleMeasure& s1, const CircleMeasure& s2) {
  const double m1 = s1.total_mass(), m2 = s2.total_mass();
  if (std::abs(m1 - m2) > 1e-12 * std::max(1.0, std::max(m1, m2)))
    throw DomainError("wasserstein_circle: total masses differ");
  if (m1 == 0.0) return 0.0;

  // Signed jumps of F1 - F2 around the circle; between jumps the
  // cumulative difference G is constant, and the optimal transport
  // cost is the L1 distance from G to its weighted median (the free
  // constant encodes mass flowing through the seam).
  struct Event {
    double angle;
    double jump;
  };
  std::vector<Event> events;
  events.reserve(s1.size() + s2.size());
  for (const auto& a : s1.atoms()) events.push_back({a.angle, a.mass / m1});
  for (const auto& a : s2.atoms()) events.push_back({a.angle, -a.mass / m2});
  std::sort(events.begin(), events.end(),
            [](const Event& x, const Event& y) { return x.angle < y.angle; });

  std::vector<double> value, length;
  double g = 0.0;
  for (std::size_t k = 0; k < events.size(); ++k) {
    g += events[k].jump;
    const double next = (k + 1 < events.size()) ? events[k + 1].angle
                                                : events.front().angle + kTwoPi;
    value.push_back(g);
    length.push_back(next - events[k].angle);
  }

  std::vector<std::size_t> order(value.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return value[x] < value[y]; });
  double acc = 0.0, median = value[order.back()];
  for (std::size_t k : order) {
    acc += length[k];
    if (acc >= 0.5 * kTwoPi) {
      median = value[k];
      break;
    }
  }

  double cost = 0.0;
  for (std::size_t k = 0; k < value.size(); ++k) cost += length[k] * std::abs(value[k] - median);
  return cost * m1;
}

double flat_distance(const CircleMeasure& s1, const CircleMeasure& s2) {
  const double tv = variational_distance(s1, s2);
  const double m1 = s1.total_mass(), m2 = s2.total_mass();
  if (m1 == 0.0 || m2 == 0.0) return std::min(tv, std::max(m1, m2));

  if (std::abs(m1 - m2) <= 1e-12 * std::max(1.0, std::max(m1, m2)))
    return std::min(tv, wasserstein_circle(s1, s2));

  const CircleMeasure& heavy = (m1 > m2) ? s1 : s2;
  const CircleMeasure& light = (m1 > m2) ? s2 : s1;
  const double gap = std::abs(m1 - m2);

  // Remove `gap` mass from the heavier measure in 64 equal units,
  // each placed greedily at the atom whose reduction lowers the
  // transport cost the most; removal itself costs exactly `gap` in
  // total variation.
  std::vector<double> removed(heavy.size(), 0.0);
  // Cost of a (possibly partial) removal plan: complete it by spreading
  // the still-missing mass proportionally over the remaining capacity,
  // so the transport distance is always between equal-mass measures.
  const auto reduced_cost = [&](const std::vector<double>& rem) {
    double taken = 0.0, capacity = 0.0;
    for (std::size_t j = 0; j < heavy.size(); ++j) {
      taken += rem[j];
      capacity += heavy.atoms()[j].mass - rem[j];
    }
    const double deficit = std::max(0.0, gap - taken);
    std::vector<CircleMeasure::Atom> atoms;
    for (std::size_t j = 0; j < heavy.size(); ++j) {
      double mass = heavy.atoms()[j].mass - rem[j];
      if (capacity > 0.0) mass -= deficit * mass / capacity;
      if (mass > 1e-15) atoms.push_back({heavy.atoms()[j].angle, mass});
    }
    CircleMeasure reduced(std::move(atoms));
    if (reduced.total_mass() == 0.0 || light.total_mass() == 0.0) return 0.0;
    return wasserstein_circle(reduced, light);
  };

  double remaining = gap;
  const double unit = gap / 64.0;
  while (remaining > 1e-15 * gap) {
    // Per-candidate steps are clamped to the atom's remaining capacity,
    // so corner optima (an atom removed entirely) are reachable exactly.
    double best = -1.0, best_step = 0.0;
    std::size_t best_j = heavy.size();
    for (std::size_t j = 0; j < heavy.size(); ++j) {
      const double step =
          std::min({unit, remaining, heavy.atoms()[j].mass - removed[j]});
      if (step <= 1e-15 * gap) continue;
      std::vector<double> trial = removed;
      trial[j] += step;
      const double c = reduced_cost(trial);
      if (best_j == heavy.size() || c < best) {
        best = c;
        best_j = j;
        best_step = step;
      }
    }
    if (best_j == heavy.size()) break;  // nothing left with room; numerically exhausted
    removed[best_j] += best_step;
    remaining -= best_step;
  }
  return std::min(tv, gap + reduced_cost(removed));
}

GboundResult gbound_check(const DiskHP& g1, const DiskHP& g2, std::complex<double> w) {
  if (std::abs(w) >= 1.0) throw DomainError("gbound_check: require |w| < 1");
  const double r = std::abs(w);
  const std::complex<double> d0 = g1.at_zero() - g2.at_zero();
  const double mass1 = g1.sigma.total_mass(), mass2 = g2.sigma.total_mass();
  double wass = 0.0;
  if (mass1 > 0.0 && mass2 > 0.0) {
    std::vector<CircleMeasure::Atom> n1 = g1.sigma.atoms(), n2 = g2.sigma.atoms();
    for (auto& a : n1) a.mass /= mass1;
    for (auto& a : n2) a.mass /= mass2;
    wass = wasserstein_circle(CircleMeasure(std::move(n1)), CircleMeasure(std::move(n2)));
  }
  GboundResult res;
  res.lhs = std::abs(evaluate_disk(g1, w) - evaluate_disk(g2, w));
  res.rhs = std::abs(d0.real()) + std::abs(d0.imag()) * 2.0 / (1.0 - r) +
            0.5 * (mass1 + mass2) * wass * 2.0 * r / ((1.0 - r) * (1.0 - r));
  res.holds = res.lhs <= res.rhs + 1e-9;
  return res;
}

ConvergenceReport convergence_diagnostic(std::span<const DiskHP> sequence, const DiskHP& target,
                                         std::span<const std::complex<double>> probes) {
  const auto trig_moments = [](const CircleMeasure& s) {
    std::vector<double> m(16, 0.0);
    for (const auto& a : s.atoms())
      for (int k = 1; k <= 8; ++k) {
        m[2 * (k - 1)] += a.mass * std::cos(k * a.angle);
        m[2 * (k - 1) + 1] += a.mass * std::sin(k * a.angle);
      }
    return m;
  };
  const std::vector<double> target_moments = trig_moments(target.sigma);
  const double target_zero_mass = target.sigma.mass_at_zero();

  ConvergenceReport report;
  report.steps.reserve(sequence.size());
  for (const auto& g : sequence) {
    ConvergenceStep step;
    step.value_at_zero_gap = std::abs(g.at_zero() - target.at_zero());
    const std::vector<double> m = trig_moments(g.sigma);
    for (int k = 0; k < 16; ++k)
      step.weak_gap = std::max(step.weak_gap, std::abs(m[k] - target_moments[k]));
    step.mass_at_zero_gap = std::abs(g.sigma.mass_at_zero() - target_zero_mass);
    for (const auto& w : probes)
      step.pointwise_gap =
          std::max(step.pointwise_gap, std::abs(evaluate_disk(g, w) - evaluate_disk(target, w)));
    report.steps.push_back(step);
  }

  if (report.steps.size() >= 2) {
    const auto& first = report.steps.front();
    const auto& last = report.steps.back();
    const double measure_first = first.value_at_zero_gap + first.weak_gap;
    const double measure_last = last.value_at_zero_gap + last.weak_gap;
    if (measure_first > 1e-12 && first.pointwise_gap > 1e-12 &&
        measure_last <= 0.25 * measure_first && last.pointwise_gap > 0.5 * first.pointwise_gap)
      report.inconsistent = true;
  }
  return report;
}

}  // namespace herglotz
