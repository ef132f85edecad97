#include "apsel/rf_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace apsel
{
namespace
{

double gaussian(Rng& rng, double sigma)
{
  if (sigma <= 0.0) {
    return 0.0;
  }
  return std::normal_distribution<double>(0.0, sigma)(rng);
}

bool traverses_obstacle(Point2 a, Point2 b, const Polygon& boundary)
{
  std::vector<double> params;
  const std::size_t n = boundary.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto hits = segment_intersection_params(a, b, boundary[i], boundary[(i + 1) % n]);
    params.insert(params.end(), hits.begin(), hits.end());
  }
  if (params.empty()) {
    return false;
  }
  params.push_back(0.0);
  params.push_back(1.0);
  std::sort(params.begin(), params.end());
  // Charged only if some stretch of the segment lies strictly inside; a
  // tangential touch or a slide along an edge never is.
  for (std::size_t i = 0; i + 1 < params.size(); ++i) {
    if (params[i + 1] - params[i] <= 1e-12) {
      continue;
    }
    const double mid = 0.5 * (params[i] + params[i + 1]);
    if (point_strictly_inside_polygon(a + mid * (b - a), boundary)) {
      return true;
    }
  }
  return false;
}

}  // namespace

void NoiseConfig::validate() const
{
  if (!(toa_sigma_ns >= 0.0) || !(reference_sigma_m >= 0.0)) {
    throw std::invalid_argument("noise sigmas must be non-negative");
  }
  if (max_range_m && !(*max_range_m > 0.0)) {
    throw std::invalid_argument("max_range_m must be positive");
  }
}

void PathSpec::validate() const
{
  if (waypoints.size() < 2) {
    throw std::invalid_argument("path needs at least 2 waypoints");
  }
  if (!(speed_mps > 0.0) || !(sample_rate_hz > 0.0)) {
    throw std::invalid_argument("path speed and sample rate must be positive");
  }
  for (const auto& w : waypoints) {
    if (!w.finite()) throw std::invalid_argument("path waypoint is not finite");
  }
}

Rng make_stream(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream)
{
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(substream), static_cast<std::uint32_t>(substream >> 32)};
  return Rng(seq);
}

double excess_delay(Point2 tx, Point2 rx, const FloorPlan& plan)
{
  double delay = 0.0;
  for (const auto& w : plan.walls()) {
    if (segments_intersect(tx, rx, w.p1, w.p2)) {
      delay += w.delay_ns;
    }
  }
  for (const auto& o : plan.obstacles()) {
    if (traverses_obstacle(tx, rx, o.boundary)) {
      delay += o.delay_ns;
    }
  }
  return delay;
}

ToaMap simulate_toa(Point2 tag, const FloorPlan& plan, const NoiseConfig& noise, Rng& rng)
{
  ToaMap toa;
  for (const auto& a : plan.anchors()) {
    const double range = distance(tag, a.position);
    // Draw for every anchor so the stream does not depend on the range cutoff.
    const double n = gaussian(rng, noise.toa_sigma_ns);
    if (noise.max_range_m && range > *noise.max_range_m) {
      continue;
    }
    toa[a.id] = range / kSpeedOfLightMPerNs + excess_delay(tag, a.position, plan) + n;
  }
  return toa;
}

double range_difference(const ToaMap& toa, AnchorId a, AnchorId b)
{
  const auto ia = toa.find(a);
  const auto ib = toa.find(b);
  if (ia == toa.end() || ib == toa.end()) {
    throw std::out_of_range(fmt::format("no TOA for anchor pair ({}, {})", a, b));
  }
  return (ia->second - ib->second) * kSpeedOfLightMPerNs;
}

TdoaBundle toa_to_tdoa(const ToaMap& toa, const PairSet& pairs, double t)
{
  TdoaBundle bundle{t, {}};
  for (const auto& p : pairs) {
    bundle.values.emplace(p, range_difference(toa, p.first(), p.second()));
  }
  return bundle;
}

TdoaBundle toa_to_available_tdoa(const ToaMap& toa, const PairSet& pairs, double t)
{
  TdoaBundle bundle{t, {}};
  for (const auto& p : pairs) {
    if (toa.count(p.first()) && toa.count(p.second())) {
      bundle.values.emplace(p, range_difference(toa, p.first(), p.second()));
    }
  }
  return bundle;
}

std::vector<ReferenceFix> sample_path(const PathSpec& spec)
{
  spec.validate();
  const auto& wp = spec.waypoints;
  std::vector<double> cumulative{0.0};
  for (std::size_t i = 1; i < wp.size(); ++i) {
    cumulative.push_back(cumulative.back() + distance(wp[i - 1], wp[i]));
  }
  const double total = cumulative.back();
  if (!(total > 0.0)) {
    throw std::invalid_argument("path has zero length");
  }

  auto position_at = [&](double s) {
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), s);
    std::size_t seg = static_cast<std::size_t>(std::distance(cumulative.begin(), it));
    seg = std::clamp<std::size_t>(seg, 1, wp.size() - 1);
    const double len = cumulative[seg] - cumulative[seg - 1];
    if (len <= 0.0) {
      return wp[seg];
    }
    const double u = std::clamp((s - cumulative[seg - 1]) / len, 0.0, 1.0);
    return wp[seg - 1] + u * (wp[seg] - wp[seg - 1]);
  };

  const double step = spec.speed_mps / spec.sample_rate_hz;
  const auto full_steps = static_cast<std::size_t>(std::floor(total / step + 1e-9));
  std::vector<ReferenceFix> fixes;
  fixes.reserve(full_steps + 2);
  for (std::size_t k = 0; k <= full_steps; ++k) {
    const double s = std::min(static_cast<double>(k) * step, total);
    const Point2 p = (k == full_steps && total - s <= 1e-9 * total) ? wp.back() : position_at(s);
    fixes.push_back({static_cast<double>(k) / spec.sample_rate_hz, p});
  }
  if (total - static_cast<double>(full_steps) * step > 1e-9 * total) {
    fixes.push_back({total / spec.speed_mps, wp.back()});
  }
  return fixes;
}

DriveLog simulate_drive(const PathSpec& spec, const FloorPlan& plan, const NoiseConfig& noise)
{
  noise.validate();
  const auto truth = sample_path(spec);
  const PairSet pairs = plan.all_pairs();
  DriveLog log;
  log.reference.reserve(truth.size());
  log.bundles.reserve(truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) {
    Rng rng = make_stream(noise.seed, i);
    const auto toa = simulate_toa(truth[i].position, plan, noise, rng);
    log.bundles.push_back(toa_to_available_tdoa(toa, pairs, truth[i].t));
    Point2 ref = truth[i].position;
    ref.x += gaussian(rng, noise.reference_sigma_m);
    ref.y += gaussian(rng, noise.reference_sigma_m);
    log.reference.push_back({truth[i].t, ref});
  }
  return log;
}

}  // namespace apsel
