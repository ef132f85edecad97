#pragma once

#include "apsel/floor_plan.hpp"

#include <span>
#include <vector>

namespace apsel
{

struct SolverConfig
{
  int max_iterations = 100;
  double gradient_tol = 1e-8;
  double step_tol = 1e-10;
  double initial_damping = 1e-3;
  double damping_up = 10.0;
  double damping_down = 0.1;

  void validate() const;
};

struct FixResult
{
  Point2 position;
  double residual_rmse = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// One TDOA term with its anchors already resolved to positions.
struct PairMeasurement
{
  Point2 first;
  Point2 second;
  double value = 0.0;  // measured range difference, meters
};

/// |x - first| - |x - second|.
inline double predict_tdoa(Point2 x, const PairMeasurement& m) { return distance(x, m.first) - distance(x, m.second); }

/// Throws std::out_of_range for unknown anchor ids.
double predict_tdoa(Point2 x, const AnchorPair& pair, const FloorPlan& plan);

/// Sum of squared residuals measured - predicted at x.
double tdoa_cost(Point2 x, std::span<const PairMeasurement> measurements);

/// Resolves anchor positions for the pairs of `set`. Throws std::out_of_range
/// if the bundle lacks a pair or the plan lacks an anchor.
std::vector<PairMeasurement> gather_measurements(const TdoaBundle& bundle, const PairSet& set,
                                                 const FloorPlan& plan);

/// Levenberg-Marquardt minimization of the unweighted sum of squared TDOA
/// residuals, starting at `init`.
///
/// Terminates when the gradient norm drops below gradient_tol or the step
/// norm below step_tol (converged), or after max_iterations (not converged).
/// An init that coincides with an anchor is nudged by 1e-6 m. If
/// `accepted_costs` is given it receives the cost after each accepted step,
/// starting with the cost at init.
FixResult solve(std::span<const PairMeasurement> measurements, Point2 init, const SolverConfig& cfg = {},
                std::vector<double>* accepted_costs = nullptr);

FixResult solve(const TdoaBundle& bundle, const PairSet& set, const FloorPlan& plan, Point2 init,
                const SolverConfig& cfg = {});

}  // namespace apsel
