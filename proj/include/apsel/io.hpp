#pragma once

#include "apsel/eval.hpp"
#include "apsel/floor_plan.hpp"
#include "apsel/rf_sim.hpp"
#include "apsel/selection.hpp"
#include "apsel/tracker.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace apsel::io
{

/// Malformed input; what() reads "<file>:<line>: <reason>".
class ParseError : public std::runtime_error
{
public:
  ParseError(const std::string& file, std::size_t line, const std::string& reason);

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

private:
  std::string file_;
  std::size_t line_;
};

// JSON documents. Lengths in meters, delays in nanoseconds.
FloorPlan floor_plan_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const FloorPlan& plan);
PathSpec path_spec_from_json(const nlohmann::json& doc);
NoiseConfig noise_config_from_json(const nlohmann::json& doc);

/// Enumeration rule plus calibration settings from one document.
struct RuleDocument
{
  EnumerationRule rule;
  CalibrationConfig calibration;
};
RuleDocument rule_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const ZonePlan& plan);
ZonePlan zone_plan_from_json(const nlohmann::json& doc);
/// Zone plan plus calibration metadata, formatted for reading next to the
/// per-zone tables of best pairs.
nlohmann::json calibration_report(const CalibrationResult& result);
/// Full candidate x zone RMSE table: one row per candidate set, one column
/// per zone plus the all-samples RMSE.
void write_rmse_matrix(std::ostream& out, const CalibrationResult& result);

nlohmann::json to_json(const EvalReport& report);

/// Reads and parses a JSON file; errors name the file and line.
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc);

FloorPlan load_floor_plan(const std::filesystem::path& path);
PathSpec load_path_spec(const std::filesystem::path& path);
NoiseConfig load_noise_config(const std::filesystem::path& path);
RuleDocument load_rule(const std::filesystem::path& path);
ZonePlan load_zone_plan(const std::filesystem::path& path);

// Delimited text, comma separated, mandatory header row.
void write_measurement_log(std::ostream& out, std::span<const TdoaBundle> bundles);
/// Rows sharing a timestamp form one bundle; timestamps must not decrease.
std::vector<TdoaBundle> read_measurement_log(std::istream& in, const std::string& name);

void write_reference(std::ostream& out, std::span<const ReferenceFix> fixes);
std::vector<ReferenceFix> read_reference(std::istream& in, const std::string& name);

/// Accepts either "x,y" or "t,x,y" headers.
std::vector<Point2> read_points(std::istream& in, const std::string& name);
void write_points(std::ostream& out, std::span<const Point2> points);

void write_track(std::ostream& out, std::span<const TrackedFix> track);
/// Reads the position columns of a track file.
std::vector<TrackedFix> read_track(std::istream& in, const std::string& name);

void write_ecdf(std::ostream& out, const EcdfTable& table);
std::string format_report(const EvalReport& report);

std::vector<TdoaBundle> load_measurement_log(const std::filesystem::path& path);
std::vector<ReferenceFix> load_reference(const std::filesystem::path& path);
std::vector<Point2> load_points(const std::filesystem::path& path);
std::vector<TrackedFix> load_track(const std::filesystem::path& path);

}  // namespace apsel::io
