#include "apsel/selection.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

namespace apsel
{
namespace
{

constexpr const char* kInitPolicy =
  "previous converged estimate; anchor centroid for the first sample and after a failed solve";

// Calibration drive flattened for fast repeated evaluation: values indexed by
// position in the plan's pair universe, NaN where a pair was not measured.
struct PreparedDrive
{
  std::vector<AnchorPair> universe;
  std::size_t width = 0;
  std::vector<double> values;  // samples x width
  std::vector<Point2> references;
  std::vector<std::optional<ZoneId>> zones;

  std::size_t size() const { return references.size(); }
  double value(std::size_t sample, std::size_t pair) const { return values[sample * width + pair]; }
};

PreparedDrive prepare(std::span<const AlignedSample> aligned, const FloorPlan& plan)
{
  PreparedDrive d;
  d.universe = plan.all_pairs().pairs();
  d.width = d.universe.size();
  d.values.assign(aligned.size() * d.width, std::numeric_limits<double>::quiet_NaN());
  d.references.reserve(aligned.size());
  d.zones.reserve(aligned.size());
  for (std::size_t s = 0; s < aligned.size(); ++s) {
    for (std::size_t k = 0; k < d.width; ++k) {
      const auto it = aligned[s].bundle.values.find(d.universe[k]);
      if (it != aligned[s].bundle.values.end()) {
        d.values[s * d.width + k] = it->second;
      }
    }
    d.references.push_back(aligned[s].reference);
    d.zones.push_back(zone_of_point(aligned[s].reference, plan));
  }
  return d;
}

SetScore evaluate_prepared(const PairSet& set, const PreparedDrive& drive, const FloorPlan& plan,
                           const CalibrationConfig& cfg)
{
  std::vector<std::size_t> columns;
  std::vector<PairMeasurement> ms;
  for (const auto& p : set) {
    const auto it = std::lower_bound(drive.universe.begin(), drive.universe.end(), p);
    if (it == drive.universe.end() || *it != p) {
      throw std::invalid_argument(fmt::format("pair set uses unknown anchors: {}", to_string(p)));
    }
    columns.push_back(static_cast<std::size_t>(std::distance(drive.universe.begin(), it)));
    ms.push_back({plan.anchor_position(p.first()), plan.anchor_position(p.second()), 0.0});
  }
  const Point2 centroid = anchor_centroid(set, plan);

  std::map<ZoneId, std::pair<double, std::size_t>> sums;
  double total = 0.0;
  Point2 previous = centroid;
  for (std::size_t s = 0; s < drive.size(); ++s) {
    bool complete = true;
    for (std::size_t k = 0; k < columns.size(); ++k) {
      ms[k].value = drive.value(s, columns[k]);
      complete = complete && std::isfinite(ms[k].value);
    }
    double error = cfg.penalty_cap_m;
    if (complete) {
      const FixResult fix = solve(ms, previous, cfg.solver);
      if (fix.converged) {
        error = distance(fix.position, drive.references[s]);
        previous = fix.position;
      } else {
        previous = centroid;
      }
    } else {
      previous = centroid;
    }
    const double sq = error * error;
    total += sq;
    if (drive.zones[s]) {
      auto& acc = sums[*drive.zones[s]];
      acc.first += sq;
      acc.second += 1;
    }
  }

  SetScore score;
  for (const auto& [zone, acc] : sums) {
    score.zones[zone] = {std::sqrt(acc.first / static_cast<double>(acc.second)), acc.second};
  }
  score.overall.samples = drive.size();
  score.overall.rmse = drive.size() ? std::sqrt(total / static_cast<double>(drive.size())) : 0.0;
  return score;
}

// Strict weak order used for every winner choice: RMSE, then size, then
// lexicographic order of the pairs.
bool better(double rmse_a, const PairSet& a, double rmse_b, const PairSet& b)
{
  if (rmse_a != rmse_b) return rmse_a < rmse_b;
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

void EnumerationRule::validate() const
{
  if (min_set_size < 2 || min_set_size > max_set_size) {
    throw std::invalid_argument("enumeration rule needs 2 <= min_set_size <= max_set_size");
  }
  if (max_uses_per_anchor < 1) {
    throw std::invalid_argument("enumeration rule needs max_uses_per_anchor >= 1");
  }
  if (max_anchor_zone_distance_m && !(*max_anchor_zone_distance_m > 0.0)) {
    throw std::invalid_argument("max_anchor_zone_distance_m must be positive");
  }
}

void CalibrationConfig::validate() const
{
  solver.validate();
  if (!(penalty_cap_m > 0.0)) {
    throw std::invalid_argument("penalty_cap_m must be positive");
  }
  if (min_zone_samples < 1) {
    throw std::invalid_argument("min_zone_samples must be at least 1");
  }
}

ZonePlan ZonePlan::pinned(PairSet set)
{
  ZonePlan plan;
  plan.default_set = std::move(set);
  return plan;
}

std::vector<PairSet> enumerate_pair_sets(std::span<const AnchorId> anchor_ids, const EnumerationRule& rule)
{
  rule.validate();
  std::vector<AnchorId> ids(anchor_ids.begin(), anchor_ids.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.size() < 3) {
    throw std::invalid_argument(fmt::format("pair enumeration needs at least 3 anchors, got {}", ids.size()));
  }

  // Pairs as index pairs into `ids` so usage counting is a flat array.
  std::vector<std::pair<std::size_t, std::size_t>> universe;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      universe.emplace_back(i, j);
    }
  }

  std::vector<PairSet> out;
  std::vector<std::size_t> uses(ids.size(), 0);
  std::vector<std::size_t> chosen;
  chosen.reserve(rule.max_set_size);

  auto emit = [&] {
    std::vector<AnchorPair> pairs;
    pairs.reserve(chosen.size());
    for (std::size_t k : chosen) {
      pairs.emplace_back(ids[universe[k].first], ids[universe[k].second]);
    }
    out.emplace_back(std::move(pairs));
  };

  // Depth-first in universe order; emitting before extending yields
  // lexicographic order with every prefix ahead of its extensions.
  auto dfs = [&](auto&& self, std::size_t start) -> void {
    if (chosen.size() >= rule.min_set_size) {
      emit();
    }
    if (chosen.size() == rule.max_set_size) {
      return;
    }
    for (std::size_t k = start; k < universe.size(); ++k) {
      const auto [a, b] = universe[k];
      if (uses[a] >= rule.max_uses_per_anchor || uses[b] >= rule.max_uses_per_anchor) {
        continue;
      }
      ++uses[a];
      ++uses[b];
      chosen.push_back(k);
      self(self, k + 1);
      chosen.pop_back();
      --uses[a];
      --uses[b];
    }
  };
  dfs(dfs, 0);
  return out;
}

Alignment align_measurements(std::span<const TdoaBundle> bundles, std::span<const ReferenceFix> reference)
{
  if (reference.empty()) {
    throw std::invalid_argument("reference trajectory is empty");
  }
  for (std::size_t i = 1; i < reference.size(); ++i) {
    if (!(reference[i].t > reference[i - 1].t)) {
      throw std::invalid_argument(fmt::format("reference timestamps not strictly increasing at index {}", i));
    }
  }

  Alignment out;
  out.samples.reserve(bundles.size());
  const double t_first = reference.front().t;
  const double t_last = reference.back().t;
  for (const auto& b : bundles) {
    if (b.t < t_first || b.t > t_last) {
      ++out.dropped;
      continue;
    }
    const auto it = std::lower_bound(reference.begin(), reference.end(), b.t,
                                     [](const ReferenceFix& f, double t) { return f.t < t; });
    Point2 pos;
    if (it->t == b.t) {
      pos = it->position;
    } else {
      const auto& hi = *it;
      const auto& lo = *(it - 1);
      const double u = (b.t - lo.t) / (hi.t - lo.t);
      pos = lo.position + u * (hi.position - lo.position);
    }
    out.samples.push_back({b, pos});
  }
  return out;
}

SetScore evaluate_set(const PairSet& set, std::span<const AlignedSample> aligned, const FloorPlan& plan,
                      const CalibrationConfig& cfg)
{
  if (aligned.empty()) {
    throw std::invalid_argument("evaluate_set needs at least one aligned sample");
  }
  cfg.validate();
  return evaluate_prepared(set, prepare(aligned, plan), plan, cfg);
}

CalibrationResult calibrate(std::span<const TdoaBundle> bundles, std::span<const ReferenceFix> reference,
                            const FloorPlan& plan, const EnumerationRule& rule, const CalibrationConfig& cfg)
{
  const auto ids = plan.anchor_ids();
  return calibrate_candidates(enumerate_pair_sets(ids, rule), bundles, reference, plan, rule, cfg);
}

CalibrationResult calibrate_candidates(std::vector<PairSet> candidates, std::span<const TdoaBundle> bundles,
                                       std::span<const ReferenceFix> reference, const FloorPlan& plan,
                                       const EnumerationRule& rule, const CalibrationConfig& cfg)
{
  rule.validate();
  cfg.validate();
  if (candidates.empty()) {
    throw std::invalid_argument("calibration has no candidate pair sets");
  }
  const Alignment alignment = align_measurements(bundles, reference);
  if (alignment.samples.empty()) {
    throw std::invalid_argument("no measurement falls inside the reference time span");
  }
  const PreparedDrive drive = prepare(alignment.samples, plan);
  if (std::none_of(drive.zones.begin(), drive.zones.end(), [](const auto& z) { return z.has_value(); })) {
    throw std::invalid_argument("calibration drive does not cover any zone");
  }

  CalibrationResult result;
  result.candidates = std::move(candidates);
  result.scores.resize(result.candidates.size());
  result.aligned_samples = alignment.samples.size();
  result.dropped_samples = alignment.dropped;
  result.init_policy = kInitPolicy;

  // Candidates are independent; each worker writes only its own slots.
  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, result.candidates.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= result.candidates.size() || failed.load()) {
        return;
      }
      try {
        result.scores[i] = evaluate_prepared(result.candidates[i], drive, plan, cfg);
      } catch (...) {
        if (!failed.exchange(true)) {
          failure = std::current_exception();
        }
        return;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) {
    std::rethrow_exception(failure);
  }

  result.eligible.resize(result.candidates.size());
  for (std::size_t i = 0; i < result.candidates.size(); ++i) {
    for (const auto& zone : plan.zones()) {
      bool ok = true;
      if (rule.max_anchor_zone_distance_m) {
        const Point2 c = polygon_centroid(zone.boundary);
        for (AnchorId id : result.candidates[i].anchor_ids()) {
          ok = ok && distance(plan.anchor_position(id), c) <= *rule.max_anchor_zone_distance_m;
        }
      }
      result.eligible[i][zone.id] = ok;
    }
  }

  ZonePlan& zp = result.plan;
  for (const auto& zone : plan.zones()) {
    std::optional<std::size_t> best;
    std::size_t samples = 0;
    for (std::size_t i = 0; i < result.candidates.size(); ++i) {
      const auto it = result.scores[i].zones.find(zone.id);
      if (it == result.scores[i].zones.end()) {
        continue;
      }
      samples = it->second.samples;
      if (!result.eligible[i][zone.id] || it->second.samples < cfg.min_zone_samples) {
        continue;
      }
      if (!best || better(it->second.rmse, result.candidates[i], result.scores[*best].zones.at(zone.id).rmse,
                          result.candidates[*best])) {
        best = i;
      }
    }
    if (best) {
      const auto& s = result.scores[*best].zones.at(zone.id);
      zp.entries[zone.id] = {result.candidates[*best], s.rmse, s.samples};
    } else {
      zp.uncalibrated[zone.id] = samples;
    }
  }

  std::size_t best_default = 0;
  for (std::size_t i = 1; i < result.candidates.size(); ++i) {
    if (better(result.scores[i].overall.rmse, result.candidates[i], result.scores[best_default].overall.rmse,
               result.candidates[best_default])) {
      best_default = i;
    }
  }
  zp.default_set = result.candidates[best_default];
  zp.default_rmse = result.scores[best_default].overall.rmse;
  return result;
}

}  // namespace apsel
