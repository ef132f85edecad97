#include "apsel/rf_sim.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace apsel;
using apsel::testing::rect;

namespace
{

// Dense sampling oracle: walks the segment in tiny steps and counts sign
// changes across each wall line and inside/outside transitions per obstacle.
double sampled_delay(Point2 a, Point2 b, const FloorPlan& plan)
{
  constexpr int kSteps = 20000;
  double total = 0.0;
  for (const auto& w : plan.walls()) {
    int crossings = 0;
    for (int i = 0; i < kSteps; ++i) {
      const Point2 p = a + (static_cast<double>(i) / kSteps) * (b - a);
      const Point2 q = a + (static_cast<double>(i + 1) / kSteps) * (b - a);
      const double sp = cross(w.p2 - w.p1, p - w.p1);
      const double sq = cross(w.p2 - w.p1, q - w.p1);
      if ((sp < 0) != (sq < 0)) {
        // The sub-step crosses the wall's line; check it is within the wall.
        const double t = sp / (sp - sq);
        const Point2 x = p + t * (q - p);
        const double u = dot(x - w.p1, w.p2 - w.p1) / dot(w.p2 - w.p1, w.p2 - w.p1);
        if (u >= 0 && u <= 1) ++crossings;
      }
    }
    total += crossings * w.delay_ns;
  }
  for (const auto& o : plan.obstacles()) {
    bool ever_inside = false;
    for (int i = 0; i <= kSteps && !ever_inside; ++i) {
      ever_inside = point_strictly_inside_polygon(a + (static_cast<double>(i) / kSteps) * (b - a), o.boundary);
    }
    if (ever_inside) total += o.delay_ns;
  }
  return total;
}

FloorPlan wall_plan()
{
  return apsel::testing::square_plan({{{2, -1}, {2, 1}, 0.2}});
}

}  // namespace

TEST(ExcessDelay, Examples)
{
  const FloorPlan walls = wall_plan();
  EXPECT_DOUBLE_EQ(excess_delay({0, 0}, {4, 0}, walls), 0.2);
  EXPECT_DOUBLE_EQ(excess_delay({0, 5}, {4, 5}, walls), 0.0);

  const FloorPlan obst = apsel::testing::square_plan({}, {{rect(3, 3, 5, 5), 4.0}});
  EXPECT_DOUBLE_EQ(excess_delay({1, 4}, {8, 4}, obst), 4.0);
  EXPECT_DOUBLE_EQ(sampled_delay({1, 4}, {8, 4}, obst), 4.0);
  // Tangential touch at a corner is free.
  EXPECT_DOUBLE_EQ(excess_delay({1, 7}, {5, 3}, apsel::testing::square_plan({}, {{rect(3, 5, 5, 7), 4.0}})), 0.0);
  // Ending inside the obstacle still charges once.
  EXPECT_DOUBLE_EQ(excess_delay({1, 4}, {4, 4}, obst), 4.0);
}

TEST(ExcessDelay, MatchesDenseSamplingOracle)
{
  const FloorPlan plan = apsel::testing::bundled_plan();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ux(0.05, 9.95), uy(0.05, 7.95);
  for (int i = 0; i < 60; ++i) {
    const Point2 a{ux(rng), uy(rng)};
    const Point2 b{ux(rng), uy(rng)};
    EXPECT_NEAR(excess_delay(a, b, plan), sampled_delay(a, b, plan), 1e-12) << a.x << "," << a.y << " " << b.x
                                                                             << "," << b.y;
  }
}

TEST(ExcessDelay, SymmetricAndMonotone)
{
  const FloorPlan plan = apsel::testing::bundled_plan();
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> ux(0, 10), uy(0, 8);
  for (int i = 0; i < 200; ++i) {
    const Point2 a{ux(rng), uy(rng)};
    const Point2 b{ux(rng), uy(rng)};
    const double d = excess_delay(a, b, plan);
    EXPECT_DOUBLE_EQ(d, excess_delay(b, a, plan));

    // Add a wall through the segment midpoint, perpendicular to it.
    const Point2 m = 0.5 * (a + b);
    const Point2 dir = b - a;
    const Point2 perp{-dir.y, dir.x};
    auto walls = plan.walls();
    walls.push_back({m - 0.1 * perp, m + 0.1 * perp, 0.3});
    const FloorPlan more(plan.anchors(), walls, plan.obstacles(), plan.zones());
    EXPECT_GE(excess_delay(a, b, more), d + 0.3 - 1e-12);
  }
}

TEST(SimulateToa, Examples)
{
  NoiseConfig quiet;
  quiet.toa_sigma_ns = 0.0;
  const FloorPlan plan = apsel::testing::square_plan();
  Rng rng = make_stream(1, 0);
  EXPECT_DOUBLE_EQ(simulate_toa({0, 0}, plan, quiet, rng).at(1), 0.0);

  const FloorPlan far({{1, {0, 0}}, {2, {100, 0}}, {3, {0, 100}}}, {}, {}, {{1, rect(0, 0, 100, 100)}});
  EXPECT_NEAR(simulate_toa({29.9792458, 0}, far, quiet, rng).at(1), 100.0, 1e-9);

  NoiseConfig noisy;
  Rng r1 = make_stream(9, 3, 2);
  Rng r2 = make_stream(9, 3, 2);
  EXPECT_EQ(simulate_toa({3, 4}, plan, noisy, r1), simulate_toa({3, 4}, plan, noisy, r2));
}

TEST(SimulateToa, MaxRangeDropsFarAnchors)
{
  NoiseConfig cfg;
  cfg.max_range_m = 5.0;
  Rng rng = make_stream(1, 0);
  const ToaMap toa = simulate_toa({1, 1}, apsel::testing::square_plan(), cfg, rng);
  EXPECT_EQ(toa.size(), 1u);
  EXPECT_TRUE(toa.contains(1));
}

TEST(ToaToTdoa, Examples)
{
  const PairSet pairs({{1, 2}});
  EXPECT_DOUBLE_EQ(toa_to_tdoa({{1, 10.0}, {2, 0.0}}, pairs).values.at({1, 2}), 2.99792458);
  const TdoaBundle equal = toa_to_tdoa({{1, 7.0}, {2, 7.0}, {3, 7.0}}, PairSet({{1, 2}, {1, 3}, {2, 3}}));
  for (const auto& [pair, v] : equal.values) EXPECT_EQ(v, 0.0);
  try {
    (void)toa_to_tdoa({{1, 1.0}}, pairs);
    FAIL() << "expected out_of_range";
  } catch (const std::out_of_range& e) {
    EXPECT_NE(std::string(e.what()).find("(1, 2)"), std::string::npos);
  }
  EXPECT_TRUE(toa_to_available_tdoa({{1, 1.0}}, pairs).values.empty());
}

TEST(ToaToTdoa, OffsetInvarianceAndAntiSymmetry)
{
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int i = 0; i < 100; ++i) {
    ToaMap toa{{1, u(rng)}, {2, u(rng)}, {3, u(rng)}, {4, u(rng)}};
    ToaMap shifted = toa;
    const double offset = u(rng) * 1e3;
    for (auto& [id, t] : shifted) t += offset;
    const PairSet all({{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
    const TdoaBundle a = toa_to_tdoa(toa, all);
    const TdoaBundle b = toa_to_tdoa(shifted, all);
    for (const auto& pair : all) {
      EXPECT_NEAR(a.values.at(pair), b.values.at(pair), 1e-9);
      EXPECT_EQ(range_difference(toa, pair.first(), pair.second()),
                -range_difference(toa, pair.second(), pair.first()));
    }
  }
}

TEST(ToaToTdoa, NoiseFreeMatchesGeometry)
{
  const FloorPlan plan = apsel::testing::free_space(apsel::testing::bundled_plan());
  NoiseConfig quiet;
  quiet.toa_sigma_ns = 0.0;
  Rng rng = make_stream(1, 0);
  const Point2 tag{3.3, 2.2};
  const TdoaBundle b = toa_to_tdoa(simulate_toa(tag, plan, quiet, rng), plan.all_pairs());
  for (const auto& [pair, v] : b.values) {
    const double exact = distance(tag, plan.anchor_position(pair.first())) -
                         distance(tag, plan.anchor_position(pair.second()));
    EXPECT_NEAR(v, exact, 1e-9);
  }
}

TEST(SamplePath, Examples)
{
  const auto line = sample_path({{{0, 0}, {10, 0}}, 1.0, 1.0});
  ASSERT_EQ(line.size(), 11u);
  for (std::size_t i = 0; i < line.size(); ++i) {
    EXPECT_NEAR(line[i].position.x, static_cast<double>(i), 1e-12);
    EXPECT_NEAR(line[i].t, static_cast<double>(i), 1e-12);
  }
  const auto fast = sample_path({{{0, 0}, {0, 5}}, 5.0, 1.0});
  ASSERT_EQ(fast.size(), 2u);
  EXPECT_DOUBLE_EQ(fast[0].t, 0.0);
  EXPECT_DOUBLE_EQ(fast[1].t, 1.0);
  EXPECT_NEAR(fast[1].position.y, 5.0, 1e-12);
}

TEST(SamplePath, CornersAndFinalSample)
{
  const auto pts = sample_path({{{0, 0}, {1, 0}, {1, 1.5}}, 1.0, 1.0});
  ASSERT_EQ(pts.size(), 4u);
  EXPECT_NEAR(distance(pts[2].position, {1, 1}), 0.0, 1e-12);
  EXPECT_NEAR(distance(pts[3].position, {1, 1.5}), 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(pts[3].t, 2.5);
  EXPECT_THROW(sample_path({{{0, 0}}, 1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(sample_path({{{0, 0}, {1, 1}}, 0.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(sample_path({{{0, 0}, {1, 1}}, 1.0, -1.0}), std::invalid_argument);
}

TEST(SimulateDrive, BundleShapeAndDeterminism)
{
  const FloorPlan plan = apsel::testing::bundled_plan();
  const PathSpec spec{{{1, 6}, {8, 6}}, 1.0, 2.0};
  const DriveLog a = simulate_drive(spec, plan, NoiseConfig{});
  const DriveLog b = simulate_drive(spec, plan, NoiseConfig{});
  ASSERT_EQ(a.bundles.size(), a.reference.size());
  for (std::size_t i = 0; i < a.bundles.size(); ++i) {
    EXPECT_EQ(a.bundles[i].values.size(), 15u);
    EXPECT_EQ(a.bundles[i].t, a.reference[i].t);
    EXPECT_EQ(a.bundles[i].values, b.bundles[i].values);
    EXPECT_EQ(a.reference[i].position, b.reference[i].position);
  }
  NoiseConfig other;
  other.seed = 2;
  EXPECT_NE(simulate_drive(spec, plan, other).bundles[0].values, a.bundles[0].values);
}

TEST(SimulateDrive, ZeroNoiseReferenceIsExact)
{
  NoiseConfig quiet;
  quiet.toa_sigma_ns = 0.0;
  quiet.reference_sigma_m = 0.0;
  const PathSpec spec{{{1, 6}, {8, 6}, {8, 2}}, 1.0, 2.0};
  const auto truth = sample_path(spec);
  const DriveLog log = simulate_drive(spec, apsel::testing::bundled_plan(), quiet);
  ASSERT_EQ(log.reference.size(), truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) EXPECT_EQ(log.reference[i].position, truth[i].position);
}

TEST(NoiseConfigModel, Validation)
{
  NoiseConfig cfg;
  cfg.toa_sigma_ns = -1;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.reference_sigma_m = -0.1;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}
