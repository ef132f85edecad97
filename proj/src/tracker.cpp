#include "apsel/tracker.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace apsel
{
namespace
{

constexpr int kStateDim = 4;
constexpr int kSigmaCount = 2 * kStateDim + 1;

struct SigmaPoints
{
  Eigen::Matrix<double, kStateDim, kSigmaCount> points;
  Eigen::Matrix<double, kSigmaCount, 1> wm;
  Eigen::Matrix<double, kSigmaCount, 1> wc;
};

StateCovariance symmetrized(const StateCovariance& m) { return 0.5 * (m + m.transpose()); }

// Square root through the symmetric eigendecomposition; negative
// eigenvalues are clamped to zero.
StateCovariance covariance_sqrt(const StateCovariance& p)
{
  Eigen::SelfAdjointEigenSolver<StateCovariance> eig(symmetrized(p));
  const Eigen::Vector4d d = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * d.asDiagonal();
}

StateCovariance clamp_psd(const StateCovariance& p)
{
  const StateCovariance s = symmetrized(p);
  Eigen::SelfAdjointEigenSolver<StateCovariance> eig(s);
  if (eig.eigenvalues().minCoeff() >= 0.0) {
    return s;
  }
  const Eigen::Vector4d d = eig.eigenvalues().cwiseMax(0.0);
  return symmetrized(eig.eigenvectors() * d.asDiagonal() * eig.eigenvectors().transpose());
}

SigmaPoints sigma_points(const Gaussian4& g, const UkfConfig& cfg)
{
  const double n = kStateDim;
  const double lambda = cfg.alpha * cfg.alpha * (n + cfg.kappa) - n;
  const double c = n + lambda;
  const StateCovariance root = std::sqrt(c) * covariance_sqrt(g.covariance);

  SigmaPoints sp;
  sp.points.col(0) = g.mean;
  for (int i = 0; i < kStateDim; ++i) {
    sp.points.col(1 + i) = g.mean + root.col(i);
    sp.points.col(1 + kStateDim + i) = g.mean - root.col(i);
  }
  sp.wm.setConstant(0.5 / c);
  sp.wc.setConstant(0.5 / c);
  sp.wm(0) = lambda / c;
  sp.wc(0) = lambda / c + (1.0 - cfg.alpha * cfg.alpha + cfg.beta);
  return sp;
}

Eigen::Matrix4d transition(double dt)
{
  Eigen::Matrix4d f = Eigen::Matrix4d::Identity();
  f(0, 2) = dt;
  f(1, 3) = dt;
  return f;
}

// Continuous white-acceleration noise integrated over dt; composes exactly
// under the CV transition, so two short predicts equal one long one.
Eigen::Matrix4d process_noise(double dt, double accel_sigma)
{
  const double q = accel_sigma * accel_sigma;
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  const double d3 = dt * dt * dt / 3.0;
  const double d2 = dt * dt / 2.0;
  m(0, 0) = m(1, 1) = q * d3;
  m(0, 2) = m(2, 0) = m(1, 3) = m(3, 1) = q * d2;
  m(2, 2) = m(3, 3) = q * dt;
  return m;
}

Point2 position_of(const StateVector& s) { return {s(0), s(1)}; }

}  // namespace

void UkfConfig::validate() const
{
  if (!(process_noise_accel > 0.0) || !(measurement_noise_sigma > 0.0) || !(init_pos_sigma > 0.0) ||
      !(init_vel_sigma > 0.0)) {
    throw std::invalid_argument("UKF sigmas must be positive");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("UKF alpha must be in (0, 1]");
  }
  if (!(kStateDim + kappa > 0.0)) {
    throw std::invalid_argument("UKF kappa must keep n + kappa positive");
  }
  if (switch_confirmations < 1) {
    throw std::invalid_argument("switch_confirmations must be at least 1");
  }
}

double min_eigenvalue(const StateCovariance& m)
{
  Eigen::SelfAdjointEigenSolver<StateCovariance> eig(symmetrized(m), Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

Gaussian4 ukf_predict(const Gaussian4& prior, double dt, const UkfConfig& cfg)
{
  if (!(dt >= 0.0)) {
    throw std::invalid_argument("UKF predict needs dt >= 0");
  }
  const SigmaPoints sp = sigma_points(prior, cfg);
  const Eigen::Matrix4d f = transition(dt);
  const Eigen::Matrix<double, kStateDim, kSigmaCount> moved = f * sp.points;

  Gaussian4 out;
  out.mean = moved * sp.wm;
  StateCovariance p = StateCovariance::Zero();
  for (int i = 0; i < kSigmaCount; ++i) {
    const StateVector d = moved.col(i) - out.mean;
    p += sp.wc(i) * d * d.transpose();
  }
  out.covariance = symmetrized(p + process_noise(dt, cfg.process_noise_accel));
  return out;
}

UkfUpdate ukf_update(const Gaussian4& prior, std::span<const PairMeasurement> ms, const UkfConfig& cfg)
{
  UkfUpdate out{prior, 0.0};
  if (ms.empty()) {
    return out;
  }
  const auto m = static_cast<Eigen::Index>(ms.size());
  const SigmaPoints sp = sigma_points(prior, cfg);

  Eigen::MatrixXd z(m, kSigmaCount);
  for (int i = 0; i < kSigmaCount; ++i) {
    const Point2 p = position_of(sp.points.col(i));
    for (Eigen::Index k = 0; k < m; ++k) {
      z(k, i) = predict_tdoa(p, ms[static_cast<std::size_t>(k)]);
    }
  }
  const Eigen::VectorXd z_mean = z * sp.wm;

  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(m, m) * (cfg.measurement_noise_sigma * cfg.measurement_noise_sigma);
  Eigen::Matrix<double, kStateDim, Eigen::Dynamic> pxz = Eigen::Matrix<double, kStateDim, Eigen::Dynamic>::Zero(kStateDim, m);
  for (int i = 0; i < kSigmaCount; ++i) {
    const Eigen::VectorXd dz = z.col(i) - z_mean;
    const StateVector dx = sp.points.col(i) - prior.mean;
    s += sp.wc(i) * dz * dz.transpose();
    pxz += sp.wc(i) * dx * dz.transpose();
  }
  s = 0.5 * (s + s.transpose());

  Eigen::VectorXd measured(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    measured(k) = ms[static_cast<std::size_t>(k)].value;
  }
  const Eigen::VectorXd innovation = measured - z_mean;

  const Eigen::LDLT<Eigen::MatrixXd> ldlt(s);
  // K = Pxz S^-1, computed as (S^-1 Pxz^T)^T since S is symmetric.
  const Eigen::Matrix<double, kStateDim, Eigen::Dynamic> gain = ldlt.solve(pxz.transpose()).transpose();

  out.posterior.mean = prior.mean + gain * innovation;
  out.posterior.covariance = clamp_psd(prior.covariance - gain * s * gain.transpose());
  out.innovation_norm = innovation.norm();
  return out;
}

std::optional<TrackerState> init_tracker(const FloorPlan& plan, const ZonePlan& zone_plan,
                                         const TdoaBundle& first_bundle, const UkfConfig& cfg,
                                         const SolverConfig& solver_cfg)
{
  cfg.validate();
  if (zone_plan.default_set.size() < 2 || !first_bundle.contains_all(zone_plan.default_set)) {
    return std::nullopt;
  }
  const auto ms = gather_measurements(first_bundle, zone_plan.default_set, plan);
  const FixResult fix = solve(ms, anchor_centroid(zone_plan.default_set, plan), solver_cfg);
  if (!fix.converged) {
    return std::nullopt;
  }
  TrackerState st;
  st.filter.mean << fix.position.x, fix.position.y, 0.0, 0.0;
  const double ps = cfg.init_pos_sigma * cfg.init_pos_sigma;
  const double vs = cfg.init_vel_sigma * cfg.init_vel_sigma;
  st.filter.covariance = Eigen::Vector4d(ps, ps, vs, vs).asDiagonal();
  st.active_set = zone_plan.default_set;
  st.active_set_index = 0;
  st.active_zone = zone_of_point(fix.position, plan);
  st.last_t = first_bundle.t;
  return st;
}

std::pair<TrackerState, TrackedFix> step(const TrackerState& state, const TdoaBundle& bundle,
                                         const FloorPlan& plan, const ZonePlan& zone_plan,
                                         const SolverConfig& solver_cfg, const UkfConfig& ukf_cfg)
{
  if (!(bundle.t > state.last_t)) {
    throw std::invalid_argument(
      fmt::format("tracker bundle time {} does not advance past {}", bundle.t, state.last_t));
  }
  TrackerState next = state;
  TrackedFix out;
  out.t = bundle.t;

  // 1. Rough LS fix with the set from the previous iteration.
  const PairSet* rough_set = nullptr;
  if (bundle.contains_all(state.active_set)) {
    rough_set = &state.active_set;
  } else if (bundle.contains_all(zone_plan.default_set)) {
    rough_set = &zone_plan.default_set;
  }
  bool rough_ok = false;
  out.rough_position = state.position();
  if (rough_set && rough_set->size() >= 2) {
    const FixResult rough = solve(gather_measurements(bundle, *rough_set, plan), state.position(), solver_cfg);
    out.rough_position = rough.position;
    rough_ok = rough.converged;
  }

  // 2. Zone detection on the rough fix and pair-set switch.
  if (rough_ok) {
    out.zone = zone_of_point(out.rough_position, plan);
    next.active_zone = out.zone;
    const bool calibrated = out.zone && zone_plan.entries.count(*out.zone) > 0;
    if (!calibrated || *out.zone == next.active_set_index) {
      next.pending_zone.reset();
      next.pending_count = 0;
    } else {
      if (next.pending_zone == out.zone) {
        ++next.pending_count;
      } else {
        next.pending_zone = out.zone;
        next.pending_count = 1;
      }
      if (next.pending_count >= ukf_cfg.switch_confirmations) {
        next.active_set = zone_plan.entries.at(*out.zone).set;
        next.active_set_index = *out.zone;
        next.pending_zone.reset();
        next.pending_count = 0;
      }
    }
  }

  // 3. UKF refinement with the (possibly switched) set.
  std::vector<PairMeasurement> ms;
  if (bundle.contains_all(next.active_set)) {
    ms = gather_measurements(bundle, next.active_set, plan);
    out.set_used = next.active_set;
    out.set_index = next.active_set_index;
  } else if (bundle.contains_all(zone_plan.default_set)) {
    ms = gather_measurements(bundle, zone_plan.default_set, plan);
    out.set_used = zone_plan.default_set;
    out.set_index = 0;
  } else {
    out.set_index = -1;
  }

  const Gaussian4 predicted = ukf_predict(state.filter, bundle.t - state.last_t, ukf_cfg);
  next.filter = ukf_update(predicted, ms, ukf_cfg).posterior;
  next.last_t = bundle.t;
  out.position = next.position();
  return {std::move(next), std::move(out)};
}

AdaptiveTracker::AdaptiveTracker(const FloorPlan& plan, const ZonePlan& zone_plan, SolverConfig solver_cfg,
                                 UkfConfig ukf_cfg)
  : plan_(plan)
  , zone_plan_(zone_plan)
  , solver_cfg_(solver_cfg)
  , ukf_cfg_(ukf_cfg)
{
  solver_cfg_.validate();
  ukf_cfg_.validate();
}

std::optional<TrackedFix> AdaptiveTracker::process(const TdoaBundle& bundle)
{
  if (!state_) {
    state_ = init_tracker(plan_, zone_plan_, bundle, ukf_cfg_, solver_cfg_);
    if (!state_) {
      return std::nullopt;
    }
    TrackedFix fix;
    fix.t = bundle.t;
    fix.position = state_->position();
    fix.rough_position = fix.position;
    fix.zone = state_->active_zone;
    fix.set_used = state_->active_set;
    fix.set_index = 0;
    return fix;
  }
  auto [next, fix] = step(*state_, bundle, plan_, zone_plan_, solver_cfg_, ukf_cfg_);
  state_ = std::move(next);
  return fix;
}

std::vector<TrackedFix> run_tracker(std::span<const TdoaBundle> bundles, const FloorPlan& plan,
                                    const ZonePlan& zone_plan, const SolverConfig& solver_cfg,
                                    const UkfConfig& ukf_cfg)
{
  AdaptiveTracker tracker(plan, zone_plan, solver_cfg, ukf_cfg);
  std::vector<TrackedFix> out;
  out.reserve(bundles.size());
  for (const auto& b : bundles) {
    if (auto fix = tracker.process(b)) {
      out.push_back(std::move(*fix));
    }
  }
  return out;
}

}  // namespace apsel
