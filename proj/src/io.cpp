#include "apsel/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace apsel::io
{

using nlohmann::json;

namespace
{

std::string describe(const std::string& file, std::size_t line, const std::string& reason)
{
  if (line == 0) {
    return fmt::format("{}: {}", file, reason);
  }
  return fmt::format("{}:{}: {}", file, line, reason);
}

// Errors raised while decoding a JSON document; the loader rewraps them with
// the file name.
struct SchemaError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

const json& require(const json& obj, const char* key, const std::string& where)
{
  if (!obj.is_object()) {
    throw SchemaError(fmt::format("{}: expected an object", where));
  }
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw SchemaError(fmt::format("{}: missing key '{}'", where, key));
  }
  return *it;
}

double number(const json& v, const std::string& where)
{
  if (!v.is_number()) {
    throw SchemaError(fmt::format("{}: expected a number", where));
  }
  const double d = v.get<double>();
  if (!std::isfinite(d)) {
    throw SchemaError(fmt::format("{}: value is not finite", where));
  }
  return d;
}

double number_at(const json& obj, const char* key, const std::string& where)
{
  return number(require(obj, key, where), where + "/" + key);
}

double number_or(const json& obj, const char* key, double fallback, const std::string& where)
{
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  return number(*it, where + "/" + key);
}

std::optional<double> optional_number(const json& obj, const char* key, const std::string& where)
{
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  return number(*it, where + "/" + key);
}

long long integer(const json& v, const std::string& where)
{
  if (!v.is_number_integer()) {
    throw SchemaError(fmt::format("{}: expected an integer", where));
  }
  return v.get<long long>();
}

std::size_t count_or(const json& obj, const char* key, std::size_t fallback, const std::string& where)
{
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  const long long v = integer(*it, where + "/" + key);
  if (v < 0) {
    throw SchemaError(fmt::format("{}/{}: must be non-negative", where, key));
  }
  return static_cast<std::size_t>(v);
}

const json& array_at(const json& obj, const char* key, const std::string& where)
{
  const json& v = require(obj, key, where);
  if (!v.is_array()) {
    throw SchemaError(fmt::format("{}/{}: expected an array", where, key));
  }
  return v;
}

Point2 point(const json& v, const std::string& where)
{
  if (!v.is_array() || v.size() != 2) {
    throw SchemaError(fmt::format("{}: expected [x, y]", where));
  }
  return {number(v[0], where + "/0"), number(v[1], where + "/1")};
}

Polygon polygon(const json& obj, const std::string& where)
{
  const json& vs = array_at(obj, "vertices", where);
  Polygon out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    out.push_back(point(vs[i], fmt::format("{}/vertices/{}", where, i)));
  }
  return out;
}

json polygon_json(const Polygon& poly)
{
  json vs = json::array();
  for (const auto& p : poly) vs.push_back({p.x, p.y});
  return vs;
}

json pairs_json(const PairSet& set)
{
  json out = json::array();
  for (const auto& p : set) out.push_back({p.first(), p.second()});
  return out;
}

PairSet pairs_from_json(const json& v, const std::string& where)
{
  if (!v.is_array()) {
    throw SchemaError(fmt::format("{}: expected an array of pairs", where));
  }
  std::vector<AnchorPair> pairs;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string w = fmt::format("{}/{}", where, i);
    if (!v[i].is_array() || v[i].size() != 2) {
      throw SchemaError(w + ": expected [first, second]");
    }
    try {
      pairs.emplace_back(static_cast<AnchorId>(integer(v[i][0], w)), static_cast<AnchorId>(integer(v[i][1], w)));
    } catch (const std::invalid_argument& e) {
      throw SchemaError(w + ": " + e.what());
    }
  }
  try {
    return PairSet(std::move(pairs));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(where + ": " + e.what());
  }
}

double round_to(double v, int decimals)
{
  const double scale = std::pow(10.0, decimals);
  return std::round(v * scale) / scale;
}

template <typename Fn>
auto decode(const std::filesystem::path& path, Fn&& fn)
{
  const json doc = read_json_file(path);
  try {
    return fn(doc);
  } catch (const SchemaError& e) {
    throw ParseError(path.string(), 0, e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(path.string(), 0, e.what());
  } catch (const std::out_of_range& e) {
    throw ParseError(path.string(), 0, e.what());
  }
}

std::ifstream open_input(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path.string(), 0, "cannot open file");
  }
  return in;
}

// Minimal comma-separated reader with line tracking.
class CsvReader
{
public:
  CsvReader(std::istream& in, std::string name)
    : in_(in)
    , name_(std::move(name))
  {
  }

  std::vector<std::string> header()
  {
    std::vector<std::string> fields;
    if (!next(fields)) {
      fail("missing header row");
    }
    return fields;
  }

  bool next(std::vector<std::string>& fields)
  {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      fields.clear();
      std::size_t start = 0;
      for (;;) {
        const std::size_t comma = line.find(',', start);
        std::string f = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        const auto b = f.find_first_not_of(" \t");
        const auto e = f.find_last_not_of(" \t");
        fields.push_back(b == std::string::npos ? std::string{} : f.substr(b, e - b + 1));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      return true;
    }
    return false;
  }

  double real(const std::string& s, const char* column) const
  {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
      fail(fmt::format("column '{}': '{}' is not a finite number", column, s));
    }
    return v;
  }

  int integer(const std::string& s, const char* column) const
  {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      fail(fmt::format("column '{}': '{}' is not an integer", column, s));
    }
    return v;
  }

  void expect_header(const std::vector<std::string>& got, const std::vector<std::string>& want) const
  {
    if (got != want) {
      fail(fmt::format("expected header '{}'", fmt::join(want, ",")));
    }
  }

  void expect_fields(const std::vector<std::string>& fields, std::size_t n) const
  {
    if (fields.size() != n) {
      fail(fmt::format("expected {} fields, got {}", n, fields.size()));
    }
  }

  [[noreturn]] void fail(const std::string& reason) const { throw ParseError(name_, line_, reason); }

private:
  std::istream& in_;
  std::string name_;
  std::size_t line_ = 0;
};

}  // namespace

ParseError::ParseError(const std::string& file, std::size_t line, const std::string& reason)
  : std::runtime_error(describe(file, line, reason))
  , file_(file)
  , line_(line)
{
}

FloorPlan floor_plan_from_json(const json& doc)
{
  std::vector<Anchor> anchors;
  const json& as = array_at(doc, "anchors", "");
  for (std::size_t i = 0; i < as.size(); ++i) {
    const std::string w = fmt::format("/anchors/{}", i);
    const long long id = integer(require(as[i], "id", w), w + "/id");
    anchors.push_back({static_cast<AnchorId>(id), {number_at(as[i], "x", w), number_at(as[i], "y", w)}});
  }
  std::vector<Wall> walls;
  if (doc.contains("walls")) {
    const json& ws = array_at(doc, "walls", "");
    for (std::size_t i = 0; i < ws.size(); ++i) {
      const std::string w = fmt::format("/walls/{}", i);
      walls.push_back({{number_at(ws[i], "x1", w), number_at(ws[i], "y1", w)},
                       {number_at(ws[i], "x2", w), number_at(ws[i], "y2", w)},
                       number_at(ws[i], "delay_ns", w)});
    }
  }
  std::vector<Obstacle> obstacles;
  if (doc.contains("obstacles")) {
    const json& os = array_at(doc, "obstacles", "");
    for (std::size_t i = 0; i < os.size(); ++i) {
      const std::string w = fmt::format("/obstacles/{}", i);
      obstacles.push_back({polygon(os[i], w), number_at(os[i], "delay_ns", w)});
    }
  }
  std::vector<Zone> zones;
  const json& zs = array_at(doc, "zones", "");
  for (std::size_t i = 0; i < zs.size(); ++i) {
    const std::string w = fmt::format("/zones/{}", i);
    const long long id = integer(require(zs[i], "id", w), w + "/id");
    zones.push_back({static_cast<ZoneId>(id), polygon(zs[i], w)});
  }
  return FloorPlan(std::move(anchors), std::move(walls), std::move(obstacles), std::move(zones));
}

json to_json(const FloorPlan& plan)
{
  json doc;
  doc["anchors"] = json::array();
  for (const auto& a : plan.anchors()) {
    doc["anchors"].push_back({{"id", a.id}, {"x", a.position.x}, {"y", a.position.y}});
  }
  doc["walls"] = json::array();
  for (const auto& w : plan.walls()) {
    doc["walls"].push_back(
      {{"x1", w.p1.x}, {"y1", w.p1.y}, {"x2", w.p2.x}, {"y2", w.p2.y}, {"delay_ns", w.delay_ns}});
  }
  doc["obstacles"] = json::array();
  for (const auto& o : plan.obstacles()) {
    doc["obstacles"].push_back({{"vertices", polygon_json(o.boundary)}, {"delay_ns", o.delay_ns}});
  }
  doc["zones"] = json::array();
  for (const auto& z : plan.zones()) {
    doc["zones"].push_back({{"id", z.id}, {"vertices", polygon_json(z.boundary)}});
  }
  return doc;
}

PathSpec path_spec_from_json(const json& doc)
{
  PathSpec spec;
  const json& ws = array_at(doc, "waypoints", "");
  for (std::size_t i = 0; i < ws.size(); ++i) {
    spec.waypoints.push_back(point(ws[i], fmt::format("/waypoints/{}", i)));
  }
  spec.speed_mps = number_or(doc, "speed_mps", spec.speed_mps, "");
  spec.sample_rate_hz = number_or(doc, "sample_rate_hz", spec.sample_rate_hz, "");
  spec.validate();
  return spec;
}

NoiseConfig noise_config_from_json(const json& doc)
{
  NoiseConfig cfg;
  if (!doc.is_object()) {
    throw SchemaError("expected an object");
  }
  cfg.toa_sigma_ns = number_or(doc, "toa_sigma_ns", cfg.toa_sigma_ns, "");
  cfg.reference_sigma_m = number_or(doc, "reference_sigma_m", cfg.reference_sigma_m, "");
  if (const auto it = doc.find("seed"); it != doc.end()) {
    if (!it->is_number_unsigned()) {
      throw SchemaError("/seed: expected a non-negative integer");
    }
    cfg.seed = it->get<std::uint64_t>();
  }
  cfg.max_range_m = optional_number(doc, "max_range_m", "");
  cfg.validate();
  return cfg;
}

RuleDocument rule_from_json(const json& doc)
{
  if (!doc.is_object()) {
    throw SchemaError("expected an object");
  }
  RuleDocument out;
  auto& r = out.rule;
  r.min_set_size = count_or(doc, "min_set_size", r.min_set_size, "");
  r.max_set_size = count_or(doc, "max_set_size", r.max_set_size, "");
  r.max_uses_per_anchor = count_or(doc, "max_uses_per_anchor", r.max_uses_per_anchor, "");
  r.max_anchor_zone_distance_m = optional_number(doc, "max_anchor_zone_distance_m", "");
  r.validate();

  auto& c = out.calibration;
  c.min_zone_samples = count_or(doc, "min_zone_samples", c.min_zone_samples, "");
  c.penalty_cap_m = number_or(doc, "penalty_cap_m", c.penalty_cap_m, "");
  c.threads = static_cast<unsigned>(count_or(doc, "threads", c.threads, ""));
  if (const auto it = doc.find("solver"); it != doc.end()) {
    const json& s = *it;
    auto& sc = c.solver;
    sc.max_iterations = static_cast<int>(count_or(s, "max_iterations", static_cast<std::size_t>(sc.max_iterations), "/solver"));
    sc.gradient_tol = number_or(s, "gradient_tol", sc.gradient_tol, "/solver");
    sc.step_tol = number_or(s, "step_tol", sc.step_tol, "/solver");
    sc.initial_damping = number_or(s, "initial_damping", sc.initial_damping, "/solver");
    sc.damping_up = number_or(s, "damping_up", sc.damping_up, "/solver");
    sc.damping_down = number_or(s, "damping_down", sc.damping_down, "/solver");
  }
  c.validate();
  return out;
}

json to_json(const ZonePlan& plan)
{
  json doc;
  json zones = json::array();
  std::map<ZoneId, json> by_zone;
  for (const auto& [id, e] : plan.entries) {
    by_zone[id] = {{"zone", id},
                   {"calibrated", true},
                   {"pairs", pairs_json(e.set)},
                   {"pairs_text", e.set.to_string()},
                   {"rmse_m", round_to(e.rmse, 4)},
                   {"samples", e.sample_count}};
  }
  for (const auto& [id, n] : plan.uncalibrated) {
    by_zone[id] = {{"zone", id}, {"calibrated", false}, {"samples", n}};
  }
  for (auto& [id, z] : by_zone) zones.push_back(std::move(z));
  doc["zones"] = std::move(zones);
  doc["default"] = {{"pairs", pairs_json(plan.default_set)},
                    {"pairs_text", plan.default_set.to_string()},
                    {"rmse_m", round_to(plan.default_rmse, 4)}};
  return doc;
}

ZonePlan zone_plan_from_json(const json& doc)
{
  ZonePlan plan;
  const json& zs = array_at(doc, "zones", "");
  for (std::size_t i = 0; i < zs.size(); ++i) {
    const std::string w = fmt::format("/zones/{}", i);
    const auto id = static_cast<ZoneId>(integer(require(zs[i], "zone", w), w + "/zone"));
    const json& cal = require(zs[i], "calibrated", w);
    if (!cal.is_boolean()) {
      throw SchemaError(w + "/calibrated: expected a boolean");
    }
    const std::size_t samples = count_or(zs[i], "samples", 0, w);
    if (plan.entries.count(id) || plan.uncalibrated.count(id)) {
      throw SchemaError(fmt::format("{}: duplicate zone {}", w, id));
    }
    if (cal.get<bool>()) {
      plan.entries[id] = {pairs_from_json(require(zs[i], "pairs", w), w + "/pairs"),
                          number_at(zs[i], "rmse_m", w), samples};
    } else {
      plan.uncalibrated[id] = samples;
    }
  }
  const json& d = require(doc, "default", "");
  plan.default_set = pairs_from_json(require(d, "pairs", "/default"), "/default/pairs");
  plan.default_rmse = number_or(d, "rmse_m", 0.0, "/default");
  if (plan.default_set.size() < 2) {
    throw SchemaError("/default/pairs: need at least 2 pairs");
  }
  return plan;
}

json calibration_report(const CalibrationResult& result)
{
  json doc = to_json(result.plan);
  doc["calibration"] = {{"candidates", result.candidates.size()},
                        {"aligned_samples", result.aligned_samples},
                        {"dropped_samples", result.dropped_samples},
                        {"init_policy", result.init_policy}};
  return doc;
}

void write_rmse_matrix(std::ostream& out, const CalibrationResult& result)
{
  std::set<ZoneId> zones;
  for (const auto& score : result.scores) {
    for (const auto& [z, s] : score.zones) zones.insert(z);
  }
  out << "set_index,pairs";
  for (ZoneId z : zones) out << ",zone_" << z;
  out << ",overall\n";
  for (std::size_t i = 0; i < result.candidates.size(); ++i) {
    std::string pairs;
    for (const auto& p : result.candidates[i]) {
      if (!pairs.empty()) pairs += ' ';
      pairs += fmt::format("{}-{}", p.first(), p.second());
    }
    out << i << ',' << pairs;
    for (ZoneId z : zones) {
      const auto it = result.scores[i].zones.find(z);
      out << ',';
      if (it != result.scores[i].zones.end()) out << fmt::format("{:.6f}", it->second.rmse);
    }
    out << fmt::format(",{:.6f}\n", result.scores[i].overall.rmse);
  }
}

json to_json(const EvalReport& report)
{
  json sources = json::array();
  for (const auto& [label, s] : report.sources) {
    sources.push_back({{"label", label},
                       {"rmse_m", round_to(s.rmse, 6)},
                       {"median_m", round_to(s.median, 6)},
                       {"p80_m", round_to(s.p80, 6)},
                       {"max_m", round_to(s.max, 6)},
                       {"samples", s.sample_count}});
  }
  return {{"sources", std::move(sources)}};
}

json read_json_file(const std::filesystem::path& path)
{
  std::ifstream in = open_input(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n'));
    throw ParseError(path.string(), line, "invalid JSON");
  }
}

void write_json_file(const std::filesystem::path& path, const json& doc)
{
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error(fmt::format("{}: cannot open for writing", path.string()));
  }
  out << doc.dump(2) << '\n';
}

FloorPlan load_floor_plan(const std::filesystem::path& path)
{
  return decode(path, [](const json& d) { return floor_plan_from_json(d); });
}

PathSpec load_path_spec(const std::filesystem::path& path)
{
  return decode(path, [](const json& d) { return path_spec_from_json(d); });
}

NoiseConfig load_noise_config(const std::filesystem::path& path)
{
  return decode(path, [](const json& d) { return noise_config_from_json(d); });
}

RuleDocument load_rule(const std::filesystem::path& path)
{
  return decode(path, [](const json& d) { return rule_from_json(d); });
}

ZonePlan load_zone_plan(const std::filesystem::path& path)
{
  return decode(path, [](const json& d) { return zone_plan_from_json(d); });
}

void write_measurement_log(std::ostream& out, std::span<const TdoaBundle> bundles)
{
  out << "t,pair_first,pair_second,tdoa_m\n";
  for (const auto& b : bundles) {
    for (const auto& [pair, v] : b.values) {
      out << fmt::format("{:.6f},{},{},{:.9f}\n", b.t, pair.first(), pair.second(), v);
    }
  }
}

std::vector<TdoaBundle> read_measurement_log(std::istream& in, const std::string& name)
{
  CsvReader csv(in, name);
  csv.expect_header(csv.header(), {"t", "pair_first", "pair_second", "tdoa_m"});
  std::vector<TdoaBundle> out;
  std::vector<std::string> f;
  while (csv.next(f)) {
    csv.expect_fields(f, 4);
    const double t = csv.real(f[0], "t");
    const int a = csv.integer(f[1], "pair_first");
    const int b = csv.integer(f[2], "pair_second");
    const double v = csv.real(f[3], "tdoa_m");
    if (a == b) {
      csv.fail("pair uses the same anchor twice");
    }
    if (!out.empty() && t < out.back().t) {
      csv.fail("timestamps must not decrease");
    }
    if (out.empty() || t != out.back().t) {
      out.push_back({t, {}});
    }
    // Stored canonically; a reversed pair flips sign.
    const AnchorPair pair(a, b);
    const double value = a < b ? v : -v;
    if (!out.back().values.emplace(pair, value).second) {
      csv.fail(fmt::format("duplicate pair {} at t={}", to_string(pair), f[0]));
    }
  }
  return out;
}

void write_reference(std::ostream& out, std::span<const ReferenceFix> fixes)
{
  out << "t,x,y\n";
  for (const auto& f : fixes) {
    out << fmt::format("{:.6f},{:.6f},{:.6f}\n", f.t, f.position.x, f.position.y);
  }
}

std::vector<ReferenceFix> read_reference(std::istream& in, const std::string& name)
{
  CsvReader csv(in, name);
  csv.expect_header(csv.header(), {"t", "x", "y"});
  std::vector<ReferenceFix> out;
  std::vector<std::string> f;
  while (csv.next(f)) {
    csv.expect_fields(f, 3);
    const double t = csv.real(f[0], "t");
    if (!out.empty() && !(t > out.back().t)) {
      csv.fail("timestamps must be strictly increasing");
    }
    out.push_back({t, {csv.real(f[1], "x"), csv.real(f[2], "y")}});
  }
  return out;
}

std::vector<Point2> read_points(std::istream& in, const std::string& name)
{
  CsvReader csv(in, name);
  const auto header = csv.header();
  const bool timed = header == std::vector<std::string>{"t", "x", "y"};
  if (!timed) {
    csv.expect_header(header, {"x", "y"});
  }
  std::vector<Point2> out;
  std::vector<std::string> f;
  while (csv.next(f)) {
    csv.expect_fields(f, timed ? 3 : 2);
    const std::size_t off = timed ? 1 : 0;
    out.push_back({csv.real(f[off], "x"), csv.real(f[off + 1], "y")});
  }
  return out;
}

void write_points(std::ostream& out, std::span<const Point2> points)
{
  out << "x,y\n";
  for (const auto& p : points) {
    out << fmt::format("{:.6f},{:.6f}\n", p.x, p.y);
  }
}

void write_track(std::ostream& out, std::span<const TrackedFix> track)
{
  out << "t,x,y,zone_id,set_index,rough_x,rough_y\n";
  for (const auto& f : track) {
    out << fmt::format("{:.6f},{:.6f},{:.6f},{},{},{:.6f},{:.6f}\n", f.t, f.position.x, f.position.y,
                       f.zone.value_or(-1), f.set_index, f.rough_position.x, f.rough_position.y);
  }
}

std::vector<TrackedFix> read_track(std::istream& in, const std::string& name)
{
  CsvReader csv(in, name);
  csv.expect_header(csv.header(), {"t", "x", "y", "zone_id", "set_index", "rough_x", "rough_y"});
  std::vector<TrackedFix> out;
  std::vector<std::string> f;
  while (csv.next(f)) {
    csv.expect_fields(f, 7);
    TrackedFix fix;
    fix.t = csv.real(f[0], "t");
    fix.position = {csv.real(f[1], "x"), csv.real(f[2], "y")};
    const int zone = csv.integer(f[3], "zone_id");
    if (zone >= 0) fix.zone = zone;
    fix.set_index = csv.integer(f[4], "set_index");
    fix.rough_position = {csv.real(f[5], "rough_x"), csv.real(f[6], "rough_y")};
    out.push_back(std::move(fix));
  }
  return out;
}

void write_ecdf(std::ostream& out, const EcdfTable& table)
{
  out << "error_m,probability\n";
  for (std::size_t i = 0; i < table.values.size(); ++i) {
    out << fmt::format("{:.6f},{:.9f}\n", table.values[i], table.probabilities[i]);
  }
}

std::string format_report(const EvalReport& report)
{
  std::string out = fmt::format("{:<12} {:>9} {:>9} {:>9} {:>9} {:>8}\n", "source", "rmse_m", "median_m", "p80_m",
                                "max_m", "samples");
  for (const auto& [label, s] : report.sources) {
    out += fmt::format("{:<12} {:>9.4f} {:>9.4f} {:>9.4f} {:>9.4f} {:>8}\n", label, s.rmse, s.median, s.p80, s.max,
                       s.sample_count);
  }
  return out;
}

std::vector<TdoaBundle> load_measurement_log(const std::filesystem::path& path)
{
  auto in = open_input(path);
  return read_measurement_log(in, path.string());
}

std::vector<ReferenceFix> load_reference(const std::filesystem::path& path)
{
  auto in = open_input(path);
  return read_reference(in, path.string());
}

std::vector<Point2> load_points(const std::filesystem::path& path)
{
  auto in = open_input(path);
  return read_points(in, path.string());
}

std::vector<TrackedFix> load_track(const std::filesystem::path& path)
{
  auto in = open_input(path);
  return read_track(in, path.string());
}

}  // namespace apsel::io
