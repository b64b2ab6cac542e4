#include "herglotz/serialize.hpp"

#include <algorithm>
#include <ostream>

#include "herglotz/errors.hpp"

namespace herglotz {
namespace {

json complex_to_json(std::complex<double> z) { return json{z.real(), z.imag()}; }

}  // namespace

json to_json(const PointSample& s) {
  return json{{"seed", s.seed().seed},
              {"sampler", s.seed().sampler},
              {"W", s.window()},
              {"rho", s.reference_intensity()},
              {"points", s.points()}};
}

PointSample point_sample_from_json(const json& j) {
  SeedRecord seed{j.value("seed", std::uint64_t{0}), "replayed"};
  return PointSample(j.at("points").get<std::vector<double>>(), j.at("W").get<double>(),
                     j.at("rho").get<double>(), seed);
}

json to_json(const HPFunction& f) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Represented>) {
          json atoms = json::array();
          for (const auto& a : v.mu.atoms()) atoms.push_back(json{a.position, a.weight});
          return json{{"variant", "represented"}, {"atoms", atoms}, {"a", v.a}, {"b", v.b}};
        } else if constexpr (std::is_same_v<T, Periodic>) {
          return json{{"variant", "periodic"}};
        } else if constexpr (std::is_same_v<T, QuasiPeriodic>) {
          return json{{"variant", "quasiperiodic"},
                      {"params", json{{"alpha", v.alpha}, {"beta", v.beta}, {"theta", v.theta}}}};
        } else {
          return json{{"variant", "process"},
                      {"sample", to_json(v.sample)},
                      {"window", v.window}};
        }
      },
      f.variant());
}

HPFunction hp_function_from_json(const json& j) {
  const std::string variant = j.at("variant").get<std::string>();
  if (variant == "represented") {
    std::vector<AtomicMeasure::Atom> atoms;
    for (const auto& a : j.at("atoms")) atoms.push_back({a.at(0).get<double>(), a.at(1).get<double>()});
    return HPFunction(
        Represented{AtomicMeasure(std::move(atoms)), j.at("a").get<double>(), j.at("b").get<double>()});
  }
  if (variant == "periodic") return HPFunction(Periodic{});
  if (variant == "quasiperiodic") {
    const auto& p = j.at("params");
    return HPFunction(QuasiPeriodic{p.at("alpha").get<std::vector<double>>(),
                                    p.at("beta").get<std::vector<double>>(),
                                    p.at("theta").get<std::vector<double>>()});
  }
  if (variant == "process")
    return HPFunction(
        ProcessTruncated{point_sample_from_json(j.at("sample")), j.at("window").get<double>()});
  throw DomainError("hp_function_from_json: unknown variant " + variant);
}

json to_json(const TransformResult& r) {
  json j{{"value", complex_to_json(r.value)},
         {"window", r.window},
         {"truncation_error", r.truncation_error}};
  if (r.breakdown) {
    j["breakdown"] = json{{"reference", complex_to_json(r.breakdown->reference)},
                          {"boundary", complex_to_json(r.breakdown->boundary)},
                          {"integral", complex_to_json(r.breakdown->integral)}};
  }
  return j;
}

json to_json(const CauchyParams& p) {
  return json{{"re_gamma", p.re_gamma}, {"im_gamma", p.im_gamma}};
}

CauchyParams cauchy_params_from_json(const json& j) {
  return CauchyParams{j.at("re_gamma").get<double>(), j.at("im_gamma").get<double>()};
}

json to_json(const GofReport& r) {
  return json{{"ks_statistic", r.ks_statistic},
              {"p_value", r.p_value},
              {"sample_size", r.sample_size},
              {"fitted", to_json(r.fitted)},
              {"route", r.route}};
}

void write_jsonl(std::ostream& out, const PointSample& s) { out << to_json(s).dump() << '\n'; }

void write_histogram_csv(std::ostream& out, const std::vector<double>& values, double lo,
                         double hi, int n_bins) {
  if (n_bins < 1 || !(hi > lo)) throw DomainError("write_histogram_csv: bad binning");
  std::vector<long long> counts(n_bins, 0);
  const double width = (hi - lo) / n_bins;
  for (double v : values) {
    int bin = static_cast<int>((v - lo) / width);
    bin = std::clamp(bin, 0, n_bins - 1);
    ++counts[bin];
  }
  out << "bin_left,bin_right,count\n";
  for (int b = 0; b < n_bins; ++b)
    out << lo + b * width << ',' << lo + (b + 1) * width << ',' << counts[b] << '\n';
}

void write_counting_csv(std::ostream& out, const PointSample& s, int n_points) {
  if (n_points < 2) throw DomainError("write_counting_csv: need at least 2 grid points");
  out << "x,N,delta_N\n";
  for (int k = 0; k < n_points; ++k) {
    const double x = -s.window() + 2.0 * s.window() * k / (n_points - 1);
    out << x << ',' << s.counting(x) << ',' << s.delta_N(x) << '\n';
  }
}

}  // namespace herglotz
