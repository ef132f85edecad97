#pragma once

#include "apsel/floor_plan.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

namespace apsel
{

struct NoiseConfig
{
  double toa_sigma_ns = 0.6;
  double reference_sigma_m = 0.03;
  std::uint64_t seed = 1;
  // Anchors farther than this from the tag do not report a TOA.
  std::optional<double> max_range_m;

  void validate() const;
};

struct PathSpec
{
  std::vector<Point2> waypoints;
  double speed_mps = 0.5;
  double sample_rate_hz = 10.0;

  void validate() const;
};

using ToaMap = std::map<AnchorId, double>;
using Rng = std::mt19937_64;

/// Independent generator for (seed, stream, substream); same inputs give the
/// same sequence regardless of evaluation order.
Rng make_stream(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0);

/// Excess NLOS delay (ns) along tx -> rx: each wall is charged once per
/// crossing, each obstacle once if the segment passes through its interior.
double excess_delay(Point2 tx, Point2 rx, const FloorPlan& plan);

/// Per-anchor arrival time (ns) of one tag transmission.
ToaMap simulate_toa(Point2 tag, const FloorPlan& plan, const NoiseConfig& noise, Rng& rng);

/// Range difference in meters, (toa[a] - toa[b]) * c, for an arbitrary
/// ordering of a and b.
double range_difference(const ToaMap& toa, AnchorId a, AnchorId b);

/// Throws std::out_of_range naming the pair if an anchor is missing.
TdoaBundle toa_to_tdoa(const ToaMap& toa, const PairSet& pairs, double t = 0.0);

/// Like toa_to_tdoa but silently skips pairs whose anchors did not report.
TdoaBundle toa_to_available_tdoa(const ToaMap& toa, const PairSet& pairs, double t = 0.0);

/// Constant-speed samples along the waypoint polyline starting at t=0. The
/// last waypoint is always the final sample.
std::vector<ReferenceFix> sample_path(const PathSpec& spec);

struct DriveLog
{
  std::vector<ReferenceFix> reference;
  std::vector<TdoaBundle> bundles;
};

/// Simulates a calibration drive: noisy reference fixes plus TDOAs over
/// every anchor pair, one epoch per path sample.
DriveLog simulate_drive(const PathSpec& spec, const FloorPlan& plan, const NoiseConfig& noise);

}  // namespace apsel
