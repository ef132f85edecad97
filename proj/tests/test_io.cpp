#include "apsel/io.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

using namespace apsel;

namespace
{

std::string parse_error_of(auto&& fn)
{
  try {
    fn();
  } catch (const io::ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Io, FloorPlanRoundTrip)
{
  const FloorPlan plan = apsel::testing::bundled_plan();
  const FloorPlan again = io::floor_plan_from_json(io::to_json(plan));
  ASSERT_EQ(again.anchors().size(), plan.anchors().size());
  for (std::size_t i = 0; i < plan.anchors().size(); ++i) {
    EXPECT_EQ(again.anchors()[i].id, plan.anchors()[i].id);
    EXPECT_EQ(again.anchors()[i].position, plan.anchors()[i].position);
  }
  EXPECT_EQ(again.walls().size(), plan.walls().size());
  EXPECT_EQ(again.obstacles().size(), plan.obstacles().size());
  EXPECT_EQ(again.zones().size(), 5u);
  EXPECT_EQ(plan.anchors().size(), 6u);
  EXPECT_EQ(plan.obstacles().size(), 3u);
}

TEST(Io, MeasurementLogRoundTrip)
{
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-5, 5);
  std::vector<TdoaBundle> bundles(20);
  for (std::size_t i = 0; i < bundles.size(); ++i) {
    bundles[i].t = 0.2 * static_cast<double>(i) + 1e-7;
    bundles[i].values[{1, 2}] = u(rng);
    bundles[i].values[{2, 5}] = u(rng);
  }
  std::stringstream ss;
  io::write_measurement_log(ss, bundles);
  const auto back = io::read_measurement_log(ss, "meas.csv");
  ASSERT_EQ(back.size(), bundles.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_NEAR(back[i].t, bundles[i].t, 1e-6);
    for (const auto& [pair, v] : bundles[i].values) EXPECT_NEAR(back[i].values.at(pair), v, 1e-6);
  }
}

TEST(Io, ReversedPairFlipsSign)
{
  std::istringstream in("t,pair_first,pair_second,tdoa_m\n0.0,3,1,0.25\n");
  const auto b = io::read_measurement_log(in, "m.csv");
  EXPECT_DOUBLE_EQ(b.at(0).values.at({1, 3}), -0.25);
}

TEST(Io, ReferenceTrackPointsRoundTrip)
{
  const std::vector<ReferenceFix> ref{{0.0, {1.1234567, 2.0}}, {0.5, {1.5, -2.25}}};
  std::stringstream rs;
  io::write_reference(rs, ref);
  const auto ref2 = io::read_reference(rs, "r.csv");
  ASSERT_EQ(ref2.size(), 2u);
  EXPECT_NEAR(ref2[0].position.x, 1.1234567, 1e-6);

  std::vector<TrackedFix> track(2);
  track[0] = {0.1, {1, 2}, 3, {}, 3, {1.1, 2.1}};
  track[1] = {0.2, {1.5, 2.5}, std::nullopt, {}, -1, {1.4, 2.4}};
  std::stringstream ts;
  io::write_track(ts, track);
  const auto track2 = io::read_track(ts, "t.csv");
  ASSERT_EQ(track2.size(), 2u);
  EXPECT_EQ(track2[0].zone, 3);
  EXPECT_FALSE(track2[1].zone.has_value());
  EXPECT_EQ(track2[1].set_index, -1);
  EXPECT_NEAR(track2[1].rough_position.y, 2.4, 1e-6);

  std::stringstream ps;
  io::write_points(ps, std::vector<Point2>{{0.5, 0.25}});
  EXPECT_EQ(io::read_points(ps, "p.csv").at(0), (Point2{0.5, 0.25}));
  std::istringstream timed("t,x,y\n0,1,2\n");
  EXPECT_EQ(io::read_points(timed, "p.csv").at(0), (Point2{1, 2}));
}

TEST(Io, ZonePlanRoundTrip)
{
  ZonePlan zp;
  zp.entries[1] = {PairSet({{1, 3}, {1, 5}, {2, 6}}), 0.22754, 40};
  zp.entries[4] = {PairSet({{1, 2}, {3, 5}, {4, 6}}), 0.2, 12};
  zp.uncalibrated[2] = 3;
  zp.default_set = PairSet({{1, 2}, {1, 4}, {3, 6}});
  zp.default_rmse = 0.41;
  const auto doc = io::to_json(zp);
  EXPECT_EQ(doc["zones"][0]["rmse_m"].get<double>(), 0.2275);
  EXPECT_EQ(doc["zones"][0]["pairs_text"].get<std::string>(), "(1, 3), (1, 5), (2, 6)");
  const ZonePlan back = io::zone_plan_from_json(doc);
  EXPECT_EQ(back.entries.at(1).set, zp.entries.at(1).set);
  EXPECT_EQ(back.entries.at(4).sample_count, 12u);
  EXPECT_TRUE(back.uncalibrated.contains(2));
  EXPECT_EQ(back.default_set, zp.default_set);
}

TEST(Io, CsvErrorsNameFileAndLine)
{
  std::istringstream bad_number("t,pair_first,pair_second,tdoa_m\n0.0,1,2,0.5\n0.1,1,2,abc\n");
  EXPECT_EQ(parse_error_of([&] { io::read_measurement_log(bad_number, "m.csv"); }).rfind("m.csv:3:", 0), 0u);

  std::istringstream bad_header("time,x,y\n");
  EXPECT_EQ(parse_error_of([&] { io::read_reference(bad_header, "r.csv"); }).rfind("r.csv:1:", 0), 0u);

  std::istringstream backwards("t,x,y\n1,0,0\n0.5,0,0\n");
  EXPECT_EQ(parse_error_of([&] { io::read_reference(backwards, "r.csv"); }).rfind("r.csv:3:", 0), 0u);

  std::istringstream short_row("x,y\n1\n");
  EXPECT_EQ(parse_error_of([&] { io::read_points(short_row, "p.csv"); }).rfind("p.csv:2:", 0), 0u);
}

TEST(Io, JsonErrorsNameFile)
{
  const auto dir = std::filesystem::temp_directory_path() / "apsel_io_test";
  std::filesystem::create_directories(dir);
  const auto broken = dir / "broken.json";
  std::ofstream(broken) << "{\n  \"anchors\": [\n    {\"id\": 1,, }\n  ]\n}\n";
  const std::string syntax = parse_error_of([&] { io::load_floor_plan(broken); });
  EXPECT_EQ(syntax.rfind(broken.string() + ":3:", 0), 0u) << syntax;

  const auto missing = dir / "missing.json";
  std::ofstream(missing) << R"({"anchors": [], "zones": []})";
  const std::string schema = parse_error_of([&] { io::load_floor_plan(missing); });
  EXPECT_EQ(schema.rfind(missing.string() + ":", 0), 0u) << schema;

  EXPECT_FALSE(parse_error_of([&] { io::load_floor_plan(dir / "nope.json"); }).empty());
}

TEST(Io, ScenarioFilesLoad)
{
  const auto dir = apsel::testing::scenario_dir();
  EXPECT_NO_THROW(io::load_path_spec(dir / "path.json"));
  EXPECT_NO_THROW(io::load_noise_config(dir / "noise.json"));
  const auto rule = io::load_rule(dir / "rule.json");
  EXPECT_EQ(rule.rule.min_set_size, 3u);
  EXPECT_EQ(rule.rule.max_set_size, 5u);
  EXPECT_EQ(rule.rule.max_uses_per_anchor, 3u);
  EXPECT_GE(io::load_points(dir / "points.csv").size(), 80u);
}

TEST(Io, ReportFormatting)
{
  EvalReport r;
  r.sources.emplace_back("adaptive", ErrorStats{0.123456789, 0.1, 0.2, 0.3, 4});
  const auto doc = io::to_json(r);
  EXPECT_EQ(doc["sources"][0]["rmse_m"].get<double>(), 0.123457);
  EXPECT_NE(io::format_report(r).find("adaptive"), std::string::npos);
}
