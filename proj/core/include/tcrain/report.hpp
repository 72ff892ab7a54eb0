#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tcrain/run.hpp"
#include "tcrain/zonal.hpp"

namespace tcrain {

/// Header day_id,date,zone,mean_mm,max_mm,max_lat,max_lon,significant_pixels,area_km2.
/// Rows sorted by (date, zone); absent values are empty fields.
std::string write_stats_csv(std::vector<ZoneStats> rows);

std::string write_summary_json(const RunResult& run);

struct BarPoint {
  std::string label;
  double value = 0.0;
};

struct BarSeries {
  std::string name;
  std::vector<BarPoint> points;
};

/// SVG 1.1 grouped bar chart. All series share the category labels of the
/// first series. Throws std::invalid_argument on an empty chart or a
/// non-finite value.
std::string render_bar_chart_svg(std::span<const BarSeries> series, std::string_view title,
                                 std::string_view y_label);
std::string render_bar_chart_svg(const BarSeries& series, std::string_view title, std::string_view y_label);

}  // namespace tcrain
