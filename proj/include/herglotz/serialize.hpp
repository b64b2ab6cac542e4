#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "herglotz/hp_function.hpp"
#include "herglotz/point_process.hpp"
#include "herglotz/stats.hpp"
#include "herglotz/stieltjes.hpp"

namespace herglotz {

using json = nlohmann::json;

json to_json(const PointSample& s);
PointSample point_sample_from_json(const json& j);

json to_json(const HPFunction& f);
HPFunction hp_function_from_json(const json& j);

json to_json(const TransformResult& r);
json to_json(const CauchyParams& p);
CauchyParams cauchy_params_from_json(const json& j);
json to_json(const GofReport& r);

// One PointSample per line: {"seed":..., "W":..., "rho":..., "points":[...]}.
void write_jsonl(std::ostream& out, const PointSample& s);

// Histogram CSV with header bin_left,bin_right,count over fixed
// binning [lo, hi) x n_bins; out-of-range values are clamped into the
// edge bins so heavy tails stay visible.
void write_histogram_csv(std::ostream& out, const std::vector<double>& values, double lo,
                         double hi, int n_bins);

// CSV of (x, N(x), delta N(x)) on a uniform grid across the window.
void write_counting_csv(std::ostream& out, const PointSample& s, int n_points);

}  // namespace herglotz
