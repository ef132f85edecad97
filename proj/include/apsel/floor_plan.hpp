#pragma once

#include "apsel/geometry.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace apsel
{

/// Speed of light in meters per nanosecond.
inline constexpr double kSpeedOfLightMPerNs = 0.299792458;

using AnchorId = int;
using ZoneId = int;

struct Anchor
{
  AnchorId id = 0;
  Point2 position;
};

/// Unordered anchor pair stored canonically (first < second).
class AnchorPair
{
public:
  /// Throws std::invalid_argument if a == b.
  AnchorPair(AnchorId a, AnchorId b);

  AnchorId first() const { return first_; }
  AnchorId second() const { return second_; }

  bool contains(AnchorId id) const { return id == first_ || id == second_; }

  friend auto operator<=>(const AnchorPair&, const AnchorPair&) = default;

private:
  AnchorId first_;
  AnchorId second_;
};

inline AnchorPair canonical(const AnchorPair& p) { return AnchorPair(p.first(), p.second()); }

/// Sorted, duplicate-free collection of anchor pairs selecting which TDOAs
/// feed a solve.
class PairSet
{
public:
  PairSet() = default;
  /// Sorts the input; throws std::invalid_argument on duplicates.
  explicit PairSet(std::vector<AnchorPair> pairs);

  const std::vector<AnchorPair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  auto begin() const { return pairs_.begin(); }
  auto end() const { return pairs_.end(); }

  /// Distinct anchor ids, ascending.
  std::vector<AnchorId> anchor_ids() const;

  /// "(1, 2), (1, 4), (2, 3)"
  std::string to_string() const;

  friend auto operator<=>(const PairSet&, const PairSet&) = default;
  friend bool operator==(const PairSet&, const PairSet&) = default;

private:
  std::vector<AnchorPair> pairs_;
};

struct Wall
{
  Point2 p1;
  Point2 p2;
  double delay_ns = 0.0;
};

struct Obstacle
{
  Polygon boundary;
  double delay_ns = 0.0;
};

struct Zone
{
  ZoneId id = 0;
  Polygon boundary;
};

/// Deployment area: anchors, delay-bearing walls and obstacles, zones.
class FloorPlan
{
public:
  FloorPlan() = default;
  /// Validates every invariant; throws std::invalid_argument with a reason.
  FloorPlan(std::vector<Anchor> anchors, std::vector<Wall> walls, std::vector<Obstacle> obstacles,
            std::vector<Zone> zones);

  const std::vector<Anchor>& anchors() const { return anchors_; }
  const std::vector<Wall>& walls() const { return walls_; }
  const std::vector<Obstacle>& obstacles() const { return obstacles_; }
  const std::vector<Zone>& zones() const { return zones_; }

  std::vector<AnchorId> anchor_ids() const;
  bool has_anchor(AnchorId id) const;
  /// Throws std::out_of_range for unknown ids.
  Point2 anchor_position(AnchorId id) const;
  const Zone* zone(ZoneId id) const;

  /// Every pair over the plan's anchors, in canonical order.
  PairSet all_pairs() const;

private:
  std::vector<Anchor> anchors_;  // sorted by id
  std::vector<Wall> walls_;
  std::vector<Obstacle> obstacles_;
  std::vector<Zone> zones_;  // sorted by id
};

struct ReferenceFix
{
  double t = 0.0;
  Point2 position;
};

/// One epoch of measured range differences (meters), keyed by anchor pair.
struct TdoaBundle
{
  double t = 0.0;
  std::map<AnchorPair, double> values;

  bool contains_all(const PairSet& set) const;
  /// Copy holding only the pairs of `set`; throws std::out_of_range naming
  /// the first missing pair.
  TdoaBundle restricted_to(const PairSet& set) const;
};

/// Lowest id among zones containing p (boundary inclusive), if any.
std::optional<ZoneId> zone_of_point(Point2 p, const FloorPlan& plan);

/// Mean position of the anchors used by `set`.
Point2 anchor_centroid(const PairSet& set, const FloorPlan& plan);

std::string to_string(const AnchorPair& p);

}  // namespace apsel
