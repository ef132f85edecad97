#pragma once

#include "apsel/floor_plan.hpp"
#include "apsel/rf_sim.hpp"
#include "apsel/selection.hpp"
#include "apsel/solver.hpp"
#include "apsel/tracker.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace apsel
{

/// Step ECDF over the distinct sorted sample values.
struct EcdfTable
{
  std::vector<double> values;
  std::vector<double> probabilities;

  /// Fraction of samples <= v.
  double at(double v) const;
};

/// Throws std::invalid_argument on empty input.
EcdfTable ecdf(std::span<const double> values);

/// Nearest-rank percentile: the value at rank ceil(q * n), q in (0, 1].
double nearest_rank_percentile(std::span<const double> values, double q);

struct ErrorStats
{
  double rmse = 0.0;
  double median = 0.0;
  double p80 = 0.0;
  double max = 0.0;
  std::size_t sample_count = 0;
};

ErrorStats summarize_errors(std::span<const double> errors);

struct EvalReport
{
  // Source label and its statistics, in insertion order.
  std::vector<std::pair<std::string, ErrorStats>> sources;

  const ErrorStats* find(const std::string& label) const;
};

/// Distance of every fix to the reference polyline.
std::vector<double> trajectory_errors(std::span<const TrackedFix> track, std::span<const Point2> reference_path);

struct LabelledSet
{
  std::string label;
  PairSet set;
};

struct StaticEvalConfig
{
  std::size_t repeats = 50;
  SolverConfig solver;
  // Upper clip on a single solve's error, so one diverged solve cannot
  // dominate a point's mean.
  double penalty_cap_m = 10.0;
};

inline constexpr const char* kAdaptiveLabel = "adaptive";

/// Localizes static tags: every point gets `repeats` simulated epochs, each
/// solved with every fixed set and, if a zone plan is given, with the set of
/// the point's true zone (the default set outside calibrated zones). The
/// per-point mean error is aggregated per source.
EvalReport static_point_eval(std::span<const Point2> points, const FloorPlan& plan, const NoiseConfig& noise,
                             std::span<const LabelledSet> sets, const ZonePlan* zone_plan,
                             const StaticEvalConfig& cfg = {});

/// Fixed sources of a zone plan: one per calibrated zone ("zone-<id>").
std::vector<LabelledSet> zone_plan_sources(const ZonePlan& zone_plan);

/// Grid points at `spacing` meters that fall inside some zone and outside
/// every obstacle.
std::vector<Point2> grid_points(const FloorPlan& plan, double spacing);

}  // namespace apsel
