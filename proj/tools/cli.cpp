#include "cli.hpp"

#include "apsel/eval.hpp"
#include "apsel/io.hpp"
#include "apsel/rf_sim.hpp"
#include "apsel/selection.hpp"
#include "apsel/tracker.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <optional>
#include <ostream>

namespace apsel::cli
{
namespace
{

std::ofstream open_output(const std::string& path)
{
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error(fmt::format("{}: cannot open for writing", path));
  }
  return out;
}

struct SimulateArgs
{
  std::string plan, path, noise, out_meas, out_ref;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out)
{
  const FloorPlan plan = io::load_floor_plan(a.plan);
  const PathSpec spec = io::load_path_spec(a.path);
  const NoiseConfig noise = io::load_noise_config(a.noise);
  const DriveLog log = simulate_drive(spec, plan, noise);
  {
    auto f = open_output(a.out_meas);
    io::write_measurement_log(f, log.bundles);
  }
  {
    auto f = open_output(a.out_ref);
    io::write_reference(f, log.reference);
  }
  out << fmt::format("simulated {} epochs\n", log.bundles.size());
  return kExitOk;
}

struct EnumerateArgs
{
  std::string plan;
  std::size_t min = 3, max = 5, max_uses = 3;
  bool list = false;
};

int cmd_enumerate(const EnumerateArgs& a, std::ostream& out)
{
  const FloorPlan plan = io::load_floor_plan(a.plan);
  EnumerationRule rule;
  rule.min_set_size = a.min;
  rule.max_set_size = a.max;
  rule.max_uses_per_anchor = a.max_uses;
  const auto ids = plan.anchor_ids();
  const auto sets = enumerate_pair_sets(ids, rule);
  out << sets.size() << '\n';
  if (a.list) {
    for (const auto& s : sets) out << s.to_string() << '\n';
  }
  return kExitOk;
}

struct CalibrateArgs
{
  std::string plan, meas, ref, rule, out, matrix;
};

int cmd_calibrate(const CalibrateArgs& a, std::ostream& out)
{
  const FloorPlan plan = io::load_floor_plan(a.plan);
  const auto bundles = io::load_measurement_log(a.meas);
  const auto reference = io::load_reference(a.ref);
  const auto rule = io::load_rule(a.rule);
  const CalibrationResult result = calibrate(bundles, reference, plan, rule.rule, rule.calibration);

  auto report = io::calibration_report(result);
  report["calibration"]["rule"] = {{"min_set_size", rule.rule.min_set_size},
                                   {"max_set_size", rule.rule.max_set_size},
                                   {"max_uses_per_anchor", rule.rule.max_uses_per_anchor},
                                   {"min_zone_samples", rule.calibration.min_zone_samples},
                                   {"penalty_cap_m", rule.calibration.penalty_cap_m}};
  io::write_json_file(a.out, report);
  if (!a.matrix.empty()) {
    auto f = open_output(a.matrix);
    io::write_rmse_matrix(f, result);
  }

  out << fmt::format("{} candidate sets, {} aligned samples ({} dropped)\n", result.candidates.size(),
                     result.aligned_samples, result.dropped_samples);
  out << fmt::format("{:<6} {:<44} {:>8} {:>8}\n", "zone", "anchor pairs", "rmse_m", "samples");
  for (const auto& zone : plan.zones()) {
    if (const auto it = result.plan.entries.find(zone.id); it != result.plan.entries.end()) {
      out << fmt::format("{:<6} {:<44} {:>8.4f} {:>8}\n", zone.id, it->second.set.to_string(), it->second.rmse,
                         it->second.sample_count);
    } else {
      out << fmt::format("{:<6} {:<44} {:>8} {:>8}\n", zone.id, "uncalibrated", "-",
                         result.plan.uncalibrated.at(zone.id));
    }
  }
  out << fmt::format("default {}  rmse {:.4f}\n", result.plan.default_set.to_string(), result.plan.default_rmse);
  return result.plan.uncalibrated.empty() ? kExitOk : kExitUncalibrated;
}

struct TrackArgs
{
  std::string plan, zoneplan, meas, out;
  std::optional<int> pin_zone;
  std::size_t confirmations = 1;
};

int cmd_track(const TrackArgs& a, std::ostream& out)
{
  const FloorPlan plan = io::load_floor_plan(a.plan);
  ZonePlan zone_plan = io::load_zone_plan(a.zoneplan);
  if (a.pin_zone) {
    const auto it = zone_plan.entries.find(*a.pin_zone);
    if (it == zone_plan.entries.end()) {
      throw std::invalid_argument(fmt::format("zone {} is not calibrated in {}", *a.pin_zone, a.zoneplan));
    }
    zone_plan = ZonePlan::pinned(it->second.set);
  }
  const auto bundles = io::load_measurement_log(a.meas);
  UkfConfig ukf;
  ukf.switch_confirmations = a.confirmations;
  const auto track = run_tracker(bundles, plan, zone_plan, SolverConfig{}, ukf);
  auto f = open_output(a.out);
  io::write_track(f, track);
  out << fmt::format("tracked {} of {} epochs\n", track.size(), bundles.size());
  return kExitOk;
}

struct EvalArgs
{
  std::string track, refpath, out_ecdf;
};

int cmd_eval(const EvalArgs& a, std::ostream& out)
{
  const auto track = io::load_track(a.track);
  const auto path = io::load_points(a.refpath);
  if (track.empty()) {
    throw std::invalid_argument(fmt::format("{}: track is empty", a.track));
  }
  const auto errors = trajectory_errors(track, path);
  {
    auto f = open_output(a.out_ecdf);
    io::write_ecdf(f, ecdf(errors));
  }
  EvalReport report;
  report.sources.emplace_back("track", summarize_errors(errors));
  out << io::format_report(report);
  return kExitOk;
}

struct StaticEvalArgs
{
  std::string plan, points, zoneplan, out, noise;
  std::size_t repeats = 50;
};

int cmd_static_eval(const StaticEvalArgs& a, std::ostream& out)
{
  const FloorPlan plan = io::load_floor_plan(a.plan);
  const auto points = io::load_points(a.points);
  const ZonePlan zone_plan = io::load_zone_plan(a.zoneplan);
  const NoiseConfig noise = a.noise.empty() ? NoiseConfig{} : io::load_noise_config(a.noise);
  StaticEvalConfig cfg;
  cfg.repeats = a.repeats;
  const auto sources = zone_plan_sources(zone_plan);
  const EvalReport report = static_point_eval(points, plan, noise, sources, &zone_plan, cfg);
  io::write_json_file(a.out, io::to_json(report));
  out << io::format_report(report);
  return kExitOk;
}

struct GridArgs
{
  std::string plan, out;
  double spacing = 1.0;
};

int cmd_grid(const GridArgs& a, std::ostream& out)
{
  const FloorPlan plan = io::load_floor_plan(a.plan);
  const auto points = grid_points(plan, a.spacing);
  auto f = open_output(a.out);
  io::write_points(f, points);
  out << fmt::format("{} points\n", points.size());
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Zone-adaptive anchor pair selection for TDOA positioning"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Simulate a calibration drive");
  simulate->add_option("--plan", sim.plan, "Floor plan (JSON)")->required();
  simulate->add_option("--path", sim.path, "Path spec (JSON)")->required();
  simulate->add_option("--noise", sim.noise, "Noise config (JSON)")->required();
  simulate->add_option("--out-meas", sim.out_meas, "Measurement log to write (CSV)")->required();
  simulate->add_option("--out-ref", sim.out_ref, "Reference trajectory to write (CSV)")->required();

  EnumerateArgs en;
  auto* enumerate = app.add_subcommand("enumerate", "Count candidate pair sets");
  enumerate->add_option("--plan", en.plan, "Floor plan (JSON)")->required();
  enumerate->add_option("--min", en.min, "Minimum set size")->capture_default_str();
  enumerate->add_option("--max", en.max, "Maximum set size")->capture_default_str();
  enumerate->add_option("--max-uses", en.max_uses, "Maximum pairs per anchor")->capture_default_str();
  enumerate->add_flag("--list", en.list, "Print every set");

  CalibrateArgs cal;
  auto* calib = app.add_subcommand("calibrate", "Select the best pair set per zone");
  calib->add_option("--plan", cal.plan, "Floor plan (JSON)")->required();
  calib->add_option("--meas", cal.meas, "Measurement log (CSV)")->required();
  calib->add_option("--ref", cal.ref, "Reference trajectory (CSV)")->required();
  calib->add_option("--rule", cal.rule, "Enumeration rule (JSON)")->required();
  calib->add_option("--out", cal.out, "Zone plan report to write (JSON)")->required();
  calib->add_option("--matrix", cal.matrix, "Optional RMSE matrix to write (CSV)");

  TrackArgs tr;
  auto* track = app.add_subcommand("track", "Run the zone-adaptive tracker");
  track->add_option("--plan", tr.plan, "Floor plan (JSON)")->required();
  track->add_option("--zoneplan", tr.zoneplan, "Zone plan (JSON)")->required();
  track->add_option("--meas", tr.meas, "Measurement log (CSV)")->required();
  track->add_option("--out", tr.out, "Track to write (CSV)")->required();
  track->add_option("--pin-zone", tr.pin_zone, "Use only this zone's set, never switch");
  track->add_option("--switch-confirmations", tr.confirmations, "Epochs in a new zone before switching")
    ->capture_default_str();

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Trajectory error of a track");
  eval->add_option("--track", ev.track, "Track (CSV)")->required();
  eval->add_option("--refpath", ev.refpath, "Reference path (CSV with x,y or t,x,y)")->required();
  eval->add_option("--out-ecdf", ev.out_ecdf, "ECDF to write (CSV)")->required();

  StaticEvalArgs se;
  auto* static_eval = app.add_subcommand("static-eval", "Static tag evaluation of fixed vs adaptive sets");
  static_eval->add_option("--plan", se.plan, "Floor plan (JSON)")->required();
  static_eval->add_option("--points", se.points, "Test points (CSV)")->required();
  static_eval->add_option("--zoneplan", se.zoneplan, "Zone plan (JSON)")->required();
  static_eval->add_option("--out", se.out, "Report to write (JSON)")->required();
  static_eval->add_option("--noise", se.noise, "Noise config (JSON); defaults otherwise");
  static_eval->add_option("--repeats", se.repeats, "Epochs per point")->capture_default_str();

  GridArgs gr;
  auto* grid = app.add_subcommand("grid", "Write grid test points inside the zones");
  grid->add_option("--plan", gr.plan, "Floor plan (JSON)")->required();
  grid->add_option("--spacing", gr.spacing, "Grid spacing in meters")->capture_default_str();
  grid->add_option("--out", gr.out, "Points to write (CSV)")->required();

  std::vector<std::string> argv_storage{"apsel"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }

  try {
    if (*simulate) return cmd_simulate(sim, out);
    if (*enumerate) return cmd_enumerate(en, out);
    if (*calib) return cmd_calibrate(cal, out);
    if (*track) return cmd_track(tr, out);
    if (*eval) return cmd_eval(ev, out);
    if (*static_eval) return cmd_static_eval(se, out);
    if (*grid) return cmd_grid(gr, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace apsel::cli
