#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcrain/grid.hpp"

namespace tcrain {

using UtcTime = std::chrono::sys_seconds;

struct TrackPoint {
  UtcTime time;
  double lat = 0.0;
  double lon = 0.0;
  std::string label;  // stage, e.g. ESCS or D

  LatLon position() const noexcept { return {lat, lon}; }
};

/// Best-track fixes ordered by strictly increasing time.
struct Track {
  std::vector<TrackPoint> points;
};

/// CSV with a required header row: timestamp,lat,lon,label.
Track read_track_csv(std::string_view text);
Track read_track_csv_file(const std::filesystem::path& path);

/// RFC 3339 UTC instant: YYYY-MM-DDTHH:MM[:SS[.frac]] followed by Z or +00:00.
/// Seconds are optional so that best-track style "2023-06-15T03:00Z" parses.
UtcTime parse_utc_timestamp(std::string_view text);
std::string format_utc_timestamp(UtcTime time);

/// Calendar date YYYY-MM-DD at midnight UTC.
UtcTime parse_date(std::string_view text);

/// Cyclone position at `when`. An exact fix is returned as is; between two
/// fixes the position is interpolated linearly in time. Outside the track a
/// point within `tolerance` of the nearest end is returned unchanged.
std::optional<TrackPoint> track_fix_at(const Track& track, UtcTime when,
                                       std::chrono::seconds tolerance = std::chrono::hours(6));

}  // namespace tcrain
