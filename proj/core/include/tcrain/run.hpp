#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tcrain/cluster.hpp"
#include "tcrain/grid.hpp"
#include "tcrain/projection.hpp"
#include "tcrain/zonal.hpp"

namespace tcrain {

struct DayInput {
  std::string day_id;
  std::string date;  // YYYY-MM-DD; the 24 h window ends at 03 UTC on this date
  std::filesystem::path grid_path;
  std::optional<double> threshold_mm;
};

struct RunConfig {
  std::vector<DayInput> days;
  std::filesystem::path track_path;
  std::optional<std::filesystem::path> boundaries_path;
  std::optional<GeoBounds> study_bounds;
  double trace_mm = 0.1;
  double default_threshold_mm = 0.9;
  bool reproject = false;
  double reproject_cellsize_deg = 0.1;
  double sphere_radius_km = kEarthRadiusKm;
  int fix_hour_utc = 3;

  // Execution settings; normally supplied on the command line.
  Connectivity connectivity = Connectivity::Four;
  AreaMode area_mode = AreaMode::Spherical;
  unsigned threads = 0;  // 0 = hardware concurrency

  double threshold_for(const DayInput& day) const { return day.threshold_mm.value_or(default_threshold_mm); }
  AreaModel area_model() const { return {sphere_radius_km, area_mode}; }
};

enum class DayStatus {
  Ok,
  NoCluster,  // mask empty: nothing above threshold
  NoFix,      // track does not cover the day
  Failed,
};

const char* to_string(DayStatus status);

// Names of the two aggregate rows emitted next to the per-zone rows.
inline constexpr const char* kClusterZone = "_cluster";
inline constexpr const char* kAllZones = "_all_zones";

struct DayResult {
  DayInput input;
  double threshold_mm = 0.0;
  DayStatus status = DayStatus::Failed;
  std::string message;

  std::size_t mask_pixels = 0;
  std::size_t cluster_pixels = 0;
  std::int32_t component_count = 0;
  std::int32_t cluster_label = 0;
  std::optional<LatLon> fix;
  std::optional<LatLon> centroid;

  /// _cluster, _all_zones, then one row per zone. Empty for failed days.
  std::vector<ZoneStats> stats;

  std::optional<Grid> cluster_grid;
  std::optional<BinaryMask> cluster_mask;
};

struct RunResult {
  RunConfig config;
  std::vector<std::string> zone_names;
  std::vector<DayResult> days;  // config order
  std::optional<Footprint> footprint;
  FootprintArea footprint_area;
  std::vector<std::string> errors;  // run-level processing errors

  bool all_days_ok() const;
};

}  // namespace tcrain
