#pragma once

#include "apsel/floor_plan.hpp"
#include "apsel/selection.hpp"
#include "apsel/solver.hpp"

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <utility>

namespace apsel
{

struct UkfConfig
{
  double process_noise_accel = 0.5;  // m/s^2, white-acceleration std
  double alpha = 0.5;
  double beta = 2.0;
  double kappa = 0.0;
  double measurement_noise_sigma = 0.18;  // m per TDOA
  double init_pos_sigma = 1.0;
  double init_vel_sigma = 0.5;
  // Epochs a new zone must be seen in a row before its set is adopted.
  // 1 switches immediately.
  std::size_t switch_confirmations = 1;

  void validate() const;
};

using StateVector = Eigen::Vector4d;     // x, y, vx, vy
using StateCovariance = Eigen::Matrix4d;

struct Gaussian4
{
  StateVector mean = StateVector::Zero();
  StateCovariance covariance = StateCovariance::Identity();
};

/// Constant-velocity prediction over dt seconds through the unscented
/// transform, with continuous white-acceleration process noise.
Gaussian4 ukf_predict(const Gaussian4& prior, double dt, const UkfConfig& cfg);

struct UkfUpdate
{
  Gaussian4 posterior;
  double innovation_norm = 0.0;
};

/// Unscented update with h(state) = predicted TDOAs of `measurements` at the
/// state position. An empty measurement list leaves the prior untouched.
UkfUpdate ukf_update(const Gaussian4& prior, std::span<const PairMeasurement> measurements, const UkfConfig& cfg);

/// Smallest eigenvalue of the symmetrized matrix.
double min_eigenvalue(const StateCovariance& m);

struct TrackerState
{
  Gaussian4 filter;
  std::optional<ZoneId> active_zone;
  PairSet active_set;
  int active_set_index = 0;  // 0 = zone plan default, otherwise the zone id
  double last_t = 0.0;
  std::optional<ZoneId> pending_zone;
  std::size_t pending_count = 0;

  Point2 position() const { return {filter.mean(0), filter.mean(1)}; }
};

struct TrackedFix
{
  double t = 0.0;
  Point2 position;
  std::optional<ZoneId> zone;  // zone of the rough fix
  PairSet set_used;
  int set_index = 0;
  Point2 rough_position;
};

/// Starts a track from an LS fix with the default set. Returns nullopt if the
/// bundle lacks default pairs or the solve fails; the caller retries later.
std::optional<TrackerState> init_tracker(const FloorPlan& plan, const ZonePlan& zone_plan,
                                         const TdoaBundle& first_bundle, const UkfConfig& cfg,
                                         const SolverConfig& solver_cfg = {});

/// One iteration: rough LS fix with the previous set, zone detection and set
/// switch, then UKF predict and update with the new set.
/// Throws std::invalid_argument if bundle.t does not advance.
std::pair<TrackerState, TrackedFix> step(const TrackerState& state, const TdoaBundle& bundle,
                                         const FloorPlan& plan, const ZonePlan& zone_plan,
                                         const SolverConfig& solver_cfg, const UkfConfig& ukf_cfg);

/// Convenience driver holding the state of one tag.
class AdaptiveTracker
{
public:
  AdaptiveTracker(const FloorPlan& plan, const ZonePlan& zone_plan, SolverConfig solver_cfg = {},
                  UkfConfig ukf_cfg = {});

  /// Initializes on the first usable bundle; afterwards steps. Returns the
  /// fix for this bundle, or nullopt while still uninitialized.
  std::optional<TrackedFix> process(const TdoaBundle& bundle);

  const std::optional<TrackerState>& state() const { return state_; }

private:
  const FloorPlan& plan_;
  const ZonePlan& zone_plan_;
  SolverConfig solver_cfg_;
  UkfConfig ukf_cfg_;
  std::optional<TrackerState> state_;
};

std::vector<TrackedFix> run_tracker(std::span<const TdoaBundle> bundles, const FloorPlan& plan,
                                    const ZonePlan& zone_plan, const SolverConfig& solver_cfg = {},
                                    const UkfConfig& ukf_cfg = {});

}  // namespace apsel
