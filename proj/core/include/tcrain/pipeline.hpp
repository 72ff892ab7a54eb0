#pragma once

#include <filesystem>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "tcrain/run.hpp"

namespace tcrain {

/// Bad configuration or a missing input; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses the run configuration. Relative paths resolve against `base_dir`.
RunConfig parse_run_config(std::string_view json_text, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

/// Runs every day (in parallel when config.threads != 1), then builds the
/// footprint. Per-day failures are recorded in the result, not thrown.
/// Throws ConfigError when the track, boundaries or a grid file is missing.
RunResult run_pipeline(const RunConfig& config);

/// Statistics rows for one cluster grid: "_cluster" over every cell, then,
/// when a zone map is given, "_all_zones" over zoned cells and one row per zone.
std::vector<ZoneStats> cluster_stats_rows(const Grid& cluster_grid, const ZoneMap* zone_map, double trace_mm,
                                          const AreaModel& model);

/// Writes stats.csv, summary.json, footprint.asc, clusters/ and charts/.
void write_run_outputs(const RunResult& run, const std::filesystem::path& out_dir);

}  // namespace tcrain
