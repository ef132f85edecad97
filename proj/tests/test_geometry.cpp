#include "apsel/floor_plan.hpp"
#include "apsel/geometry.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace apsel;
using apsel::testing::rect;

TEST(Geometry, PolylineDistanceExamples)
{
  const std::vector<Point2> path{{0, 0}, {2, 0}};
  EXPECT_DOUBLE_EQ(point_to_polyline_distance({1, 1}, path), 1.0);
  EXPECT_DOUBLE_EQ(point_to_polyline_distance({3, 0}, path), 1.0);
  EXPECT_DOUBLE_EQ(point_to_polyline_distance({0, 0}, path), 0.0);
}

TEST(Geometry, PolylineNeedsTwoPoints)
{
  const std::vector<Point2> one{{0, 0}};
  EXPECT_THROW(point_to_polyline_distance({1, 1}, one), std::invalid_argument);
  EXPECT_THROW(point_to_polyline_distance({1, 1}, std::span<const Point2>{}), std::invalid_argument);
}

TEST(Geometry, PolylineDistanceBoundedByVertices)
{
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Point2> path;
    const int n = 2 + trial % 5;
    for (int i = 0; i < n; ++i) path.push_back({u(rng), u(rng)});
    const Point2 p{u(rng), u(rng)};
    double nearest_vertex = 1e300;
    for (const auto& v : path) nearest_vertex = std::min(nearest_vertex, distance(p, v));
    const double d = point_to_polyline_distance(p, path);
    EXPECT_LE(d, nearest_vertex + 1e-12);
    EXPECT_GE(d, 0.0);
    // A point interpolated on a segment lies on the polyline.
    const double s = std::uniform_real_distribution<double>(0, 1)(rng);
    const Point2 on = path[0] + s * (path[1] - path[0]);
    EXPECT_LT(point_to_polyline_distance(on, path), 1e-9);
  }
}

TEST(Geometry, SegmentIntersection)
{
  EXPECT_TRUE(segments_intersect({0, 0}, {4, 0}, {2, -1}, {2, 1}));
  EXPECT_FALSE(segments_intersect({0, 0}, {4, 0}, {5, -1}, {5, 1}));
  // Touching at an endpoint and collinear overlap both count.
  EXPECT_TRUE(segments_intersect({0, 0}, {4, 0}, {4, 0}, {4, 3}));
  EXPECT_TRUE(segments_intersect({0, 0}, {4, 0}, {3, 0}, {6, 0}));
  EXPECT_FALSE(segments_intersect({0, 0}, {4, 0}, {5, 0}, {6, 0}));
  EXPECT_FALSE(segments_intersect({0, 0}, {4, 0}, {0, 1}, {4, 1}));
}

TEST(Geometry, PointInPolygonBoundaryInclusive)
{
  const Polygon sq = rect(0, 0, 10, 10);
  EXPECT_TRUE(point_in_polygon({5, 5}, sq));
  EXPECT_TRUE(point_in_polygon({0, 5}, sq));
  EXPECT_TRUE(point_in_polygon({10, 10}, sq));
  EXPECT_FALSE(point_in_polygon({10.001, 5}, sq));
  EXPECT_FALSE(point_strictly_inside_polygon({0, 5}, sq));
  EXPECT_TRUE(point_strictly_inside_polygon({0.001, 5}, sq));

  // Non-convex L shape.
  const Polygon ell{{0, 0}, {4, 0}, {4, 1}, {1, 1}, {1, 4}, {0, 4}};
  EXPECT_TRUE(point_in_polygon({0.5, 3}, ell));
  EXPECT_FALSE(point_in_polygon({3, 3}, ell));
}

TEST(Geometry, SimplePolygon)
{
  EXPECT_TRUE(is_simple_polygon(rect(0, 0, 1, 1)));
  const Polygon bowtie{{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  EXPECT_FALSE(is_simple_polygon(bowtie));
  const Polygon two{{0, 0}, {1, 1}};
  EXPECT_FALSE(is_simple_polygon(two));
}

TEST(FloorPlanModel, ZoneOfPointExamples)
{
  const FloorPlan single = apsel::testing::square_plan();
  EXPECT_EQ(zone_of_point({1, 1}, single), 1);
  EXPECT_FALSE(zone_of_point({-5, -5}, single).has_value());

  const FloorPlan two({{1, {0, 0}}, {2, {10, 0}}, {3, {0, 10}}}, {}, {},
                      {{2, rect(5, 0, 10, 10)}, {1, rect(0, 0, 5, 10)}});
  EXPECT_EQ(zone_of_point({5, 3}, two), 1);
  EXPECT_EQ(zone_of_point({7, 3}, two), 2);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(zone_of_point({5, 3}, two), 1);
}

TEST(FloorPlanModel, PairCanonicalization)
{
  const AnchorPair p(4, 2);
  EXPECT_EQ(p.first(), 2);
  EXPECT_EQ(p.second(), 4);
  EXPECT_EQ(canonical(canonical(p)), canonical(p));
  EXPECT_EQ(AnchorPair(2, 4), p);
  EXPECT_THROW(AnchorPair(3, 3), std::invalid_argument);
}

TEST(FloorPlanModel, PairSetSortsAndRejectsDuplicates)
{
  const PairSet s({{2, 3}, {1, 2}, {4, 1}});
  EXPECT_EQ(s.to_string(), "(1, 2), (1, 4), (2, 3)");
  EXPECT_EQ(s.anchor_ids(), (std::vector<AnchorId>{1, 2, 3, 4}));
  EXPECT_THROW(PairSet({{1, 2}, {2, 1}}), std::invalid_argument);
}

TEST(FloorPlanModel, ValidationRejectsBadPlans)
{
  const std::vector<Zone> zones{{1, rect(0, 0, 1, 1)}};
  // Two anchors only.
  EXPECT_THROW(FloorPlan({{1, {0, 0}}, {2, {1, 0}}}, {}, {}, zones), std::invalid_argument);
  // Duplicate anchor id.
  EXPECT_THROW(FloorPlan({{1, {0, 0}}, {1, {1, 0}}, {2, {0, 1}}}, {}, {}, zones), std::invalid_argument);
  // No zones.
  EXPECT_THROW(FloorPlan({{1, {0, 0}}, {2, {1, 0}}, {3, {0, 1}}}, {}, {}, {}), std::invalid_argument);
  // Negative wall delay.
  EXPECT_THROW(FloorPlan({{1, {0, 0}}, {2, {1, 0}}, {3, {0, 1}}}, {{{0, 0}, {1, 1}, -0.1}}, {}, zones),
               std::invalid_argument);
  // Self-intersecting obstacle.
  EXPECT_THROW(FloorPlan({{1, {0, 0}}, {2, {1, 0}}, {3, {0, 1}}}, {}, {{{{0, 0}, {1, 1}, {1, 0}, {0, 1}}, 1.0}}, zones),
               std::invalid_argument);
}

TEST(FloorPlanModel, AnchorLookup)
{
  const FloorPlan plan = apsel::testing::square_plan();
  EXPECT_EQ(plan.anchor_position(4), (Point2{10, 10}));
  EXPECT_THROW(plan.anchor_position(9), std::out_of_range);
  EXPECT_EQ(plan.all_pairs().size(), 6u);
  EXPECT_LT(distance(anchor_centroid(PairSet({{1, 2}, {1, 3}}), plan), {10.0 / 3, 10.0 / 3}), 1e-12);
}

TEST(FloorPlanModel, BundleRestriction)
{
  TdoaBundle b;
  b.values = {{{1, 2}, 0.5}, {{1, 3}, -0.25}};
  EXPECT_TRUE(b.contains_all(PairSet({{1, 2}})));
  EXPECT_FALSE(b.contains_all(PairSet({{1, 2}, {2, 3}})));
  EXPECT_EQ(b.restricted_to(PairSet({{1, 3}})).values.size(), 1u);
  try {
    (void)b.restricted_to(PairSet({{2, 3}}));
    FAIL() << "expected out_of_range";
  } catch (const std::out_of_range& e) {
    EXPECT_NE(std::string(e.what()).find("(2, 3)"), std::string::npos);
  }
}
