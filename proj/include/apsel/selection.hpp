#pragma once

#include "apsel/floor_plan.hpp"
#include "apsel/solver.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace apsel
{

struct EnumerationRule
{
  std::size_t min_set_size = 3;
  std::size_t max_set_size = 5;
  std::size_t max_uses_per_anchor = 3;
  // Per-zone candidate filter: a set is only considered for a zone if every
  // anchor it uses lies within this distance of the zone centroid.
  std::optional<double> max_anchor_zone_distance_m;

  void validate() const;
};

/// Every subset of the canonical pair universe over `anchor_ids` whose size is
/// in [min, max] and where no anchor appears in more than max_uses_per_anchor
/// pairs. Output is duplicate-free and in lexicographic order.
std::vector<PairSet> enumerate_pair_sets(std::span<const AnchorId> anchor_ids, const EnumerationRule& rule);

struct AlignedSample
{
  TdoaBundle bundle;
  Point2 reference;
};

struct Alignment
{
  std::vector<AlignedSample> samples;
  std::size_t dropped = 0;
};

/// Pairs every bundle with the reference position linearly interpolated at
/// its timestamp; bundles outside the reference time span are dropped.
Alignment align_measurements(std::span<const TdoaBundle> bundles, std::span<const ReferenceFix> reference);

struct ZoneScore
{
  double rmse = 0.0;
  std::size_t samples = 0;
};

struct SetScore
{
  std::map<ZoneId, ZoneScore> zones;
  ZoneScore overall;  // every aligned sample, in a zone or not
};

struct CalibrationConfig
{
  SolverConfig solver;
  // Error charged for a solve that did not converge or lacked measurements.
  double penalty_cap_m = 10.0;
  std::size_t min_zone_samples = 10;
  // 0 picks the hardware concurrency.
  unsigned threads = 0;

  void validate() const;
};

/// Localizes every aligned sample with `set` and scores the position errors
/// per zone of the reference position. Each solve starts from the previous
/// converged estimate, or from the set's anchor centroid.
SetScore evaluate_set(const PairSet& set, std::span<const AlignedSample> aligned, const FloorPlan& plan,
                      const CalibrationConfig& cfg = {});

struct ZoneEntry
{
  PairSet set;
  double rmse = 0.0;
  std::size_t sample_count = 0;
};

/// Calibration output: the winning pair set of each zone plus the fallback
/// default set.
struct ZonePlan
{
  std::map<ZoneId, ZoneEntry> entries;
  // Zones without a winner, with the number of samples they received.
  std::map<ZoneId, std::size_t> uncalibrated;
  PairSet default_set;
  double default_rmse = 0.0;

  /// A plan that never switches: no zone entries, `set` as the default.
  static ZonePlan pinned(PairSet set);
};

struct CalibrationResult
{
  ZonePlan plan;
  std::vector<PairSet> candidates;
  std::vector<SetScore> scores;  // parallel to candidates
  // eligible[i][zone] is false if the per-zone filter removed candidate i.
  std::vector<std::map<ZoneId, bool>> eligible;
  std::size_t aligned_samples = 0;
  std::size_t dropped_samples = 0;
  std::string init_policy;
};

/// Enumerates candidate sets, evaluates each over the calibration drive and
/// keeps, per zone, the lowest-RMSE set among those with enough samples.
/// Ties go to the smaller set, then to the lexicographically smaller one.
CalibrationResult calibrate(std::span<const TdoaBundle> bundles, std::span<const ReferenceFix> reference,
                            const FloorPlan& plan, const EnumerationRule& rule, const CalibrationConfig& cfg = {});

/// Same as above over an explicit candidate list.
CalibrationResult calibrate_candidates(std::vector<PairSet> candidates, std::span<const TdoaBundle> bundles,
                                       std::span<const ReferenceFix> reference, const FloorPlan& plan,
                                       const EnumerationRule& rule, const CalibrationConfig& cfg = {});

}  // namespace apsel
