#include "tcrain_tools/scenario.hpp"

#include <chrono>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "tcrain/grid_io.hpp"
#include "tcrain/track.hpp"

namespace tcrain::tools {
namespace {

using nlohmann::ordered_json;

// Straight-line track: starts 2023-06-06 03 UTC, moves 1.5 deg north and
// 0.75 deg east per day.
constexpr double kStartLat = 14.0;
constexpr double kStartLon = 66.0;
constexpr double kLatPerDay = 1.5;
constexpr double kLonPerDay = 0.75;

LatLon track_position(double days_since_start) {
  return {kStartLat + kLatPerDay * days_since_start, kStartLon + kLonPerDay * days_since_start};
}

ordered_json rectangle(double west, double east, double south, double north) {
  return ordered_json::array({ordered_json::array({west, south}), ordered_json::array({east, south}),
                              ordered_json::array({east, north}), ordered_json::array({west, north}),
                              ordered_json::array({west, south})});
}

std::string boundaries_geojson() {
  ordered_json features = ordered_json::array();
  features.push_back({{"type", "Feature"},
                      {"properties", {{"name", "West"}}},
                      {"geometry", {{"type", "Polygon"}, {"coordinates", {rectangle(64, 68, 14, 20)}}}}});
  features.push_back(
      {{"type", "Feature"},
       {"properties", {{"name", "East"}}},
       {"geometry",
        {{"type", "Polygon"}, {"coordinates", {rectangle(68, 74, 14, 20), rectangle(71, 72, 15, 16)}}}}});
  features.push_back({{"type", "Feature"},
                      {"properties", {{"name", "North"}}},
                      {"geometry",
                       {{"type", "MultiPolygon"},
                        {"coordinates", {{rectangle(64, 70, 20, 24)}, {rectangle(72, 74, 20, 22)}}}}}});
  const ordered_json doc = {{"type", "FeatureCollection"}, {"features", features}};
  return doc.dump(1) + "\n";
}

std::string track_csv() {
  using namespace std::chrono;
  std::string out = "timestamp,lat,lon,label\n";
  const UtcTime start = parse_utc_timestamp("2023-06-06T03:00Z");
  const char* stages[] = {"CS", "SCS", "VSCS", "ESCS", "ESCS"};
  for (int step = 0; step <= 16; ++step) {
    const double days = step / 4.0;
    const LatLon p = track_position(days);
    out += format_utc_timestamp(start + hours(6 * step)) + "," + format_significant(p.lat) + "," +
           format_significant(p.lon) + "," + stages[step / 4] + "\n";
  }
  return out;
}

}  // namespace

Scenario write_three_day_scenario(const std::filesystem::path& dir, std::size_t size) {
  if (size < 200) {
    throw std::invalid_argument("scenario grid must be at least 200 cells wide");
  }
  std::filesystem::create_directories(dir / "grids");
  Scenario scenario;
  scenario.config_path = dir / "config.json";
  scenario.track_path = dir / "track.csv";
  scenario.boundaries_path = dir / "zones.geojson";

  const GridSpec spec{size, size, 60.0, 0.0, 0.1};
  const BlobSpec monsoon{"monsoon", {9.0, 76.0}, 25.0, 1.0};
  const struct {
    const char* id;
    const char* date;
    double threshold;
    double amplitude;
  } days[] = {{"D1", "2023-06-07", 0.9, 80.0}, {"D2", "2023-06-08", 0.3, 70.0}, {"D3", "2023-06-09", 0.9, 60.0}};

  ordered_json config_days = ordered_json::array();
  for (std::size_t i = 0; i < std::size(days); ++i) {
    ScenarioDay day;
    day.day_id = days[i].id;
    day.date = days[i].date;
    day.threshold_mm = days[i].threshold;
    day.blobs = {BlobSpec{"cyclone", track_position(static_cast<double>(i + 1)), days[i].amplitude, 1.2}, monsoon};
    day.grid_path = dir / "grids" / (day.day_id + ".asc");
    day.truth_path = dir / "grids" / (day.day_id + ".truth.json");

    const SynthField field = render_field(day.blobs, spec);
    write_ascii_grid_file(day.grid_path, field.grid);
    write_text_file(day.truth_path, synth_sidecar_json(day.blobs, field, day.threshold_mm));

    ordered_json entry = {{"day_id", day.day_id}, {"date", day.date}, {"grid_path", "grids/" + day.day_id + ".asc"}};
    if (day.threshold_mm != 0.9) {
      entry["threshold_mm"] = day.threshold_mm;
    }
    config_days.push_back(std::move(entry));
    scenario.days.push_back(std::move(day));
  }

  write_text_file(scenario.track_path, track_csv());
  write_text_file(scenario.boundaries_path, boundaries_geojson());

  const ordered_json config = {{"days", config_days},
                               {"track_path", "track.csv"},
                               {"boundaries_path", "zones.geojson"},
                               {"study_bounds", {{"west", 60.0}, {"east", 100.0}, {"south", 0.0}, {"north", 40.0}}},
                               {"trace_mm", 0.1},
                               {"default_threshold_mm", 0.9},
                               {"reproject", false},
                               {"sphere_radius_km", 6371.0}};
  write_text_file(scenario.config_path, config.dump(2) + "\n");
  return scenario;
}

}  // namespace tcrain::tools
