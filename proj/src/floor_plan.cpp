#include "apsel/floor_plan.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

namespace apsel
{

AnchorPair::AnchorPair(AnchorId a, AnchorId b)
  : first_(std::min(a, b))
  , second_(std::max(a, b))
{
  if (a == b) {
    throw std::invalid_argument(fmt::format("anchor pair ({}, {}) uses the same anchor twice", a, b));
  }
}

std::string to_string(const AnchorPair& p) { return fmt::format("({}, {})", p.first(), p.second()); }

PairSet::PairSet(std::vector<AnchorPair> pairs)
  : pairs_(std::move(pairs))
{
  std::sort(pairs_.begin(), pairs_.end());
  const auto dup = std::adjacent_find(pairs_.begin(), pairs_.end());
  if (dup != pairs_.end()) {
    throw std::invalid_argument("duplicate anchor pair " + apsel::to_string(*dup) + " in pair set");
  }
}

std::vector<AnchorId> PairSet::anchor_ids() const
{
  std::vector<AnchorId> ids;
  for (const auto& p : pairs_) {
    ids.push_back(p.first());
    ids.push_back(p.second());
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::string PairSet::to_string() const
{
  std::string out;
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (i > 0) out += ", ";
    out += apsel::to_string(pairs_[i]);
  }
  return out;
}

FloorPlan::FloorPlan(std::vector<Anchor> anchors, std::vector<Wall> walls, std::vector<Obstacle> obstacles,
                     std::vector<Zone> zones)
  : anchors_(std::move(anchors))
  , walls_(std::move(walls))
  , obstacles_(std::move(obstacles))
  , zones_(std::move(zones))
{
  if (anchors_.size() < 3) {
    throw std::invalid_argument(fmt::format("floor plan needs at least 3 anchors, got {}", anchors_.size()));
  }
  if (zones_.empty()) {
    throw std::invalid_argument("floor plan needs at least 1 zone");
  }
  std::sort(anchors_.begin(), anchors_.end(), [](const Anchor& a, const Anchor& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < anchors_.size(); ++i) {
    if (anchors_[i].id < 0) {
      throw std::invalid_argument(fmt::format("anchor id {} is negative", anchors_[i].id));
    }
    if (i > 0 && anchors_[i].id == anchors_[i - 1].id) {
      throw std::invalid_argument(fmt::format("duplicate anchor id {}", anchors_[i].id));
    }
    if (!anchors_[i].position.finite()) {
      throw std::invalid_argument(fmt::format("anchor {} has a non-finite position", anchors_[i].id));
    }
  }
  for (std::size_t i = 0; i < walls_.size(); ++i) {
    const auto& w = walls_[i];
    if (!w.p1.finite() || !w.p2.finite() || w.p1 == w.p2) {
      throw std::invalid_argument(fmt::format("wall {} is degenerate", i));
    }
    if (!(w.delay_ns >= 0.0)) {
      throw std::invalid_argument(fmt::format("wall {} has negative delay", i));
    }
  }
  for (std::size_t i = 0; i < obstacles_.size(); ++i) {
    if (!is_simple_polygon(obstacles_[i].boundary)) {
      throw std::invalid_argument(fmt::format("obstacle {} is not a simple polygon", i));
    }
    if (!(obstacles_[i].delay_ns >= 0.0)) {
      throw std::invalid_argument(fmt::format("obstacle {} has negative delay", i));
    }
  }
  std::sort(zones_.begin(), zones_.end(), [](const Zone& a, const Zone& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < zones_.size(); ++i) {
    if (zones_[i].id <= 0) {
      throw std::invalid_argument(fmt::format("zone id {} must be positive", zones_[i].id));
    }
    if (i > 0 && zones_[i].id == zones_[i - 1].id) {
      throw std::invalid_argument(fmt::format("duplicate zone id {}", zones_[i].id));
    }
    if (!is_simple_polygon(zones_[i].boundary)) {
      throw std::invalid_argument(fmt::format("zone {} is not a simple polygon", zones_[i].id));
    }
  }
}

std::vector<AnchorId> FloorPlan::anchor_ids() const
{
  std::vector<AnchorId> ids;
  ids.reserve(anchors_.size());
  for (const auto& a : anchors_) ids.push_back(a.id);
  return ids;
}

bool FloorPlan::has_anchor(AnchorId id) const
{
  return std::binary_search(anchors_.begin(), anchors_.end(), Anchor{id, {}},
                            [](const Anchor& a, const Anchor& b) { return a.id < b.id; });
}

Point2 FloorPlan::anchor_position(AnchorId id) const
{
  const auto it = std::lower_bound(anchors_.begin(), anchors_.end(), id,
                                   [](const Anchor& a, AnchorId v) { return a.id < v; });
  if (it == anchors_.end() || it->id != id) {
    throw std::out_of_range(fmt::format("unknown anchor id {}", id));
  }
  return it->position;
}

const Zone* FloorPlan::zone(ZoneId id) const
{
  for (const auto& z : zones_) {
    if (z.id == id) return &z;
  }
  return nullptr;
}

PairSet FloorPlan::all_pairs() const
{
  std::vector<AnchorPair> pairs;
  for (std::size_t i = 0; i < anchors_.size(); ++i) {
    for (std::size_t j = i + 1; j < anchors_.size(); ++j) {
      pairs.emplace_back(anchors_[i].id, anchors_[j].id);
    }
  }
  return PairSet(std::move(pairs));
}

bool TdoaBundle::contains_all(const PairSet& set) const
{
  return std::all_of(set.begin(), set.end(), [this](const AnchorPair& p) { return values.count(p) > 0; });
}

TdoaBundle TdoaBundle::restricted_to(const PairSet& set) const
{
  TdoaBundle out{t, {}};
  for (const auto& p : set) {
    const auto it = values.find(p);
    if (it == values.end()) {
      throw std::out_of_range(fmt::format("bundle at t={} has no value for pair {}", t, to_string(p)));
    }
    out.values.emplace(p, it->second);
  }
  return out;
}

std::optional<ZoneId> zone_of_point(Point2 p, const FloorPlan& plan)
{
  // zones are sorted by id, so the first hit is the lowest id
  for (const auto& z : plan.zones()) {
    if (point_in_polygon(p, z.boundary)) {
      return z.id;
    }
  }
  return std::nullopt;
}

Point2 anchor_centroid(const PairSet& set, const FloorPlan& plan)
{
  const auto ids = set.anchor_ids();
  if (ids.empty()) {
    throw std::invalid_argument("centroid of an empty pair set");
  }
  Point2 acc{};
  for (AnchorId id : ids) acc = acc + plan.anchor_position(id);
  return (1.0 / static_cast<double>(ids.size())) * acc;
}

}  // namespace apsel
