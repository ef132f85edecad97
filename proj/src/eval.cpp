#include "apsel/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace apsel
{

double EcdfTable::at(double v) const
{
  const auto it = std::upper_bound(values.begin(), values.end(), v);
  if (it == values.begin()) {
    return 0.0;
  }
  return probabilities[static_cast<std::size_t>(std::distance(values.begin(), it)) - 1];
}

EcdfTable ecdf(std::span<const double> values)
{
  if (values.empty()) {
    throw std::invalid_argument("ECDF of an empty sample");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  EcdfTable table;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const bool last_of_run = i + 1 == sorted.size() || sorted[i + 1] != sorted[i];
    if (last_of_run) {
      table.values.push_back(sorted[i]);
      table.probabilities.push_back(static_cast<double>(i + 1) / n);
    }
  }
  table.probabilities.back() = 1.0;
  return table;
}

double nearest_rank_percentile(std::span<const double> values, double q)
{
  if (values.empty()) {
    throw std::invalid_argument("percentile of an empty sample");
  }
  if (!(q > 0.0 && q <= 1.0)) {
    throw std::invalid_argument("percentile fraction must be in (0, 1]");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  // Subtract a hair so that e.g. 0.8 * 10 does not round up to rank 9.
  auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size()) - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

ErrorStats summarize_errors(std::span<const double> errors)
{
  if (errors.empty()) {
    throw std::invalid_argument("cannot summarize an empty error sample");
  }
  ErrorStats s;
  double sq = 0.0;
  for (double e : errors) sq += e * e;
  s.sample_count = errors.size();
  s.rmse = std::sqrt(sq / static_cast<double>(errors.size()));
  s.median = nearest_rank_percentile(errors, 0.5);
  s.p80 = nearest_rank_percentile(errors, 0.8);
  s.max = *std::max_element(errors.begin(), errors.end());
  return s;
}

const ErrorStats* EvalReport::find(const std::string& label) const
{
  for (const auto& [name, stats] : sources) {
    if (name == label) return &stats;
  }
  return nullptr;
}

std::vector<double> trajectory_errors(std::span<const TrackedFix> track, std::span<const Point2> reference_path)
{
  if (reference_path.size() < 2) {
    throw std::invalid_argument("reference path needs at least 2 points");
  }
  std::vector<double> out;
  out.reserve(track.size());
  for (const auto& fix : track) {
    out.push_back(point_to_polyline_distance(fix.position, reference_path));
  }
  return out;
}

std::vector<LabelledSet> zone_plan_sources(const ZonePlan& zone_plan)
{
  std::vector<LabelledSet> out;
  for (const auto& [zone, entry] : zone_plan.entries) {
    out.push_back({fmt::format("zone-{}", zone), entry.set});
  }
  return out;
}

EvalReport static_point_eval(std::span<const Point2> points, const FloorPlan& plan, const NoiseConfig& noise,
                             std::span<const LabelledSet> sets, const ZonePlan* zone_plan,
                             const StaticEvalConfig& cfg)
{
  if (cfg.repeats < 1) {
    throw std::invalid_argument("static evaluation needs at least one repeat");
  }
  if (points.empty()) {
    throw std::invalid_argument("static evaluation needs at least one point");
  }
  noise.validate();
  cfg.solver.validate();

  const PairSet all_pairs = plan.all_pairs();
  const std::size_t n_sources = sets.size() + (zone_plan ? 1 : 0);
  if (n_sources == 0) {
    throw std::invalid_argument("static evaluation has no sources");
  }

  auto solve_error = [&](const TdoaBundle& bundle, const PairSet& set, Point2 truth) {
    if (!bundle.contains_all(set)) {
      return cfg.penalty_cap_m;
    }
    const FixResult fix = solve(gather_measurements(bundle, set, plan), anchor_centroid(set, plan), cfg.solver);
    return std::min(distance(fix.position, truth), cfg.penalty_cap_m);
  };

  std::vector<std::vector<double>> mean_errors(n_sources, std::vector<double>(points.size(), 0.0));
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    const Point2 truth = points[pi];
    const PairSet* adaptive = nullptr;
    if (zone_plan) {
      adaptive = &zone_plan->default_set;
      if (const auto zone = zone_of_point(truth, plan)) {
        if (const auto it = zone_plan->entries.find(*zone); it != zone_plan->entries.end()) {
          adaptive = &it->second.set;
        }
      }
    }
    for (std::size_t r = 0; r < cfg.repeats; ++r) {
      Rng rng = make_stream(noise.seed, pi, r + 1);
      const TdoaBundle bundle = toa_to_available_tdoa(simulate_toa(truth, plan, noise, rng), all_pairs);
      for (std::size_t s = 0; s < sets.size(); ++s) {
        mean_errors[s][pi] += solve_error(bundle, sets[s].set, truth);
      }
      if (adaptive) {
        mean_errors[sets.size()][pi] += solve_error(bundle, *adaptive, truth);
      }
    }
  }

  EvalReport report;
  for (std::size_t s = 0; s < n_sources; ++s) {
    for (double& e : mean_errors[s]) e /= static_cast<double>(cfg.repeats);
    const std::string label = s < sets.size() ? sets[s].label : kAdaptiveLabel;
    report.sources.emplace_back(label, summarize_errors(mean_errors[s]));
  }
  return report;
}

std::vector<Point2> grid_points(const FloorPlan& plan, double spacing)
{
  if (!(spacing > 0.0)) {
    throw std::invalid_argument("grid spacing must be positive");
  }
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = min_x;
  double max_x = -min_x;
  double max_y = -min_x;
  for (const auto& z : plan.zones()) {
    for (const auto& p : z.boundary) {
      min_x = std::min(min_x, p.x);
      min_y = std::min(min_y, p.y);
      max_x = std::max(max_x, p.x);
      max_y = std::max(max_y, p.y);
    }
  }
  std::vector<Point2> out;
  for (double y = min_y + 0.5 * spacing; y < max_y; y += spacing) {
    for (double x = min_x + 0.5 * spacing; x < max_x; x += spacing) {
      const Point2 p{x, y};
      if (!zone_of_point(p, plan)) continue;
      const bool blocked = std::any_of(plan.obstacles().begin(), plan.obstacles().end(),
                                       [&](const Obstacle& o) { return point_in_polygon(p, o.boundary); });
      if (!blocked) out.push_back(p);
    }
  }
  return out;
}

}  // namespace apsel
