#include "apsel/solver.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace apsel
{
namespace
{

Point2 unit_from(Point2 anchor, Point2 x)
{
  const Point2 d = x - anchor;
  const double n = norm(d);
  return n > 0.0 ? (1.0 / n) * d : Point2{};
}

struct Linearization
{
  double cost = 0.0;
  // J^T J (symmetric) and J^T r, with J = d r / d x.
  double a00 = 0.0, a01 = 0.0, a11 = 0.0;
  double g0 = 0.0, g1 = 0.0;
};

Linearization linearize(Point2 x, std::span<const PairMeasurement> ms)
{
  Linearization lin;
  for (const auto& m : ms) {
    const double r = m.value - predict_tdoa(x, m);
    const Point2 row = -1.0 * (unit_from(m.first, x) - unit_from(m.second, x));
    lin.cost += r * r;
    lin.a00 += row.x * row.x;
    lin.a01 += row.x * row.y;
    lin.a11 += row.y * row.y;
    lin.g0 += row.x * r;
    lin.g1 += row.y * r;
  }
  return lin;
}

}  // namespace

void SolverConfig::validate() const
{
  if (max_iterations <= 0 || !(gradient_tol > 0.0) || !(step_tol > 0.0) || !(initial_damping > 0.0)) {
    throw std::invalid_argument("solver tolerances, damping and iteration cap must be positive");
  }
  if (!(damping_up > 1.0) || !(damping_down > 0.0 && damping_down < 1.0)) {
    throw std::invalid_argument("solver damping factors must satisfy up > 1 > down > 0");
  }
}

double predict_tdoa(Point2 x, const AnchorPair& pair, const FloorPlan& plan)
{
  return distance(x, plan.anchor_position(pair.first())) - distance(x, plan.anchor_position(pair.second()));
}

double tdoa_cost(Point2 x, std::span<const PairMeasurement> measurements)
{
  double cost = 0.0;
  for (const auto& m : measurements) {
    const double r = m.value - predict_tdoa(x, m);
    cost += r * r;
  }
  return cost;
}

std::vector<PairMeasurement> gather_measurements(const TdoaBundle& bundle, const PairSet& set,
                                                 const FloorPlan& plan)
{
  std::vector<PairMeasurement> out;
  out.reserve(set.size());
  for (const auto& p : set) {
    const auto it = bundle.values.find(p);
    if (it == bundle.values.end()) {
      throw std::out_of_range(fmt::format("bundle at t={} has no value for pair {}", bundle.t, to_string(p)));
    }
    out.push_back({plan.anchor_position(p.first()), plan.anchor_position(p.second()), it->second});
  }
  return out;
}

FixResult solve(std::span<const PairMeasurement> ms, Point2 init, const SolverConfig& cfg,
                std::vector<double>* accepted_costs)
{
  if (ms.size() < 2) {
    throw std::invalid_argument(fmt::format("TDOA solve needs at least 2 pairs, got {}", ms.size()));
  }
  if (!init.finite()) {
    throw std::invalid_argument("TDOA solve initial point is not finite");
  }

  Point2 x = init;
  for (const auto& m : ms) {
    if (distance(x, m.first) <= 1e-12 || distance(x, m.second) <= 1e-12) {
      x.x += 1e-6;
      break;
    }
  }

  Linearization lin = linearize(x, ms);
  if (accepted_costs) {
    accepted_costs->assign(1, lin.cost);
  }
  double lambda = cfg.initial_damping;
  int iterations = 0;
  bool converged = false;

  while (iterations < cfg.max_iterations) {
    if (std::hypot(lin.g0, lin.g1) < cfg.gradient_tol) {
      converged = true;
      break;
    }
    ++iterations;

    // Marquardt scaling: damp each direction in proportion to its curvature.
    const double floor = 1e-12;
    const double b00 = lin.a00 + lambda * std::max(lin.a00, floor);
    const double b11 = lin.a11 + lambda * std::max(lin.a11, floor);
    const double b01 = lin.a01;
    const double det = b00 * b11 - b01 * b01;
    if (!(det > 0.0) || !std::isfinite(det)) {
      lambda = std::min(lambda * cfg.damping_up, 1e30);
      continue;
    }
    const Point2 step{-(b11 * lin.g0 - b01 * lin.g1) / det, -(b00 * lin.g1 - b01 * lin.g0) / det};
    if (norm(step) < cfg.step_tol) {
      converged = true;
      break;
    }

    const Point2 candidate = x + step;
    const double candidate_cost = tdoa_cost(candidate, ms);
    if (candidate_cost < lin.cost) {
      x = candidate;
      lin = linearize(x, ms);
      lambda = std::max(lambda * cfg.damping_down, 1e-30);
      if (accepted_costs) {
        accepted_costs->push_back(lin.cost);
      }
    } else {
      lambda = std::min(lambda * cfg.damping_up, 1e30);
    }
  }
  if (!converged && std::hypot(lin.g0, lin.g1) < cfg.gradient_tol) {
    converged = true;
  }

  FixResult result;
  result.position = x;
  result.residual_rmse = std::sqrt(lin.cost / static_cast<double>(ms.size()));
  result.iterations = iterations;
  result.converged = converged && x.finite();
  return result;
}

FixResult solve(const TdoaBundle& bundle, const PairSet& set, const FloorPlan& plan, Point2 init,
                const SolverConfig& cfg)
{
  const auto ms = gather_measurements(bundle, set, plan);
  return solve(ms, init, cfg);
}

}  // namespace apsel
