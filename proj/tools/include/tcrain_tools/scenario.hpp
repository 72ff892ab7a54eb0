#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tcrain/synth.hpp"

namespace tcrain::tools {

struct ScenarioDay {
  std::string day_id;
  std::string date;
  double threshold_mm = 0.0;
  std::vector<BlobSpec> blobs;  // blobs[0] is the cyclone
  std::filesystem::path grid_path;
  std::filesystem::path truth_path;
};

struct Scenario {
  std::filesystem::path config_path;
  std::filesystem::path track_path;
  std::filesystem::path boundaries_path;
  std::vector<ScenarioDay> days;
};

/// Three days of a cyclone blob moving along a straight track plus a fixed
/// monsoon distractor, on a size x size grid of 0.1 degree cells from 60E, 0N.
/// Writes grids, ground-truth sidecars, track, boundaries and config.json.
Scenario write_three_day_scenario(const std::filesystem::path& dir, std::size_t size = 400);

}  // namespace tcrain::tools
