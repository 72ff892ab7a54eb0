#include "tcrain/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

#include <nlohmann/json.hpp>

#include "tcrain/format.hpp"

namespace tcrain {
namespace {

using nlohmann::ordered_json;

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n") == std::string_view::npos) {
    return std::string(text);
  }
  std::string out = "\"";
  for (const char c : text) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  out += '"';
  return out;
}

std::string optional_number(const std::optional<double>& v) { return v ? format_significant(*v) : std::string(); }

ordered_json json_number(double v) { return ordered_json(round_significant(v)); }

ordered_json json_optional(const std::optional<double>& v) { return v ? json_number(*v) : ordered_json(nullptr); }

ordered_json json_point(const std::optional<LatLon>& p) {
  if (!p) {
    return nullptr;
  }
  return ordered_json{{"lat", round_significant(p->lat)}, {"lon", round_significant(p->lon)}};
}

struct MeanTally {
  double sum_of_means = 0.0;
  std::size_t days = 0;
  double pooled_sum = 0.0;
  std::size_t pooled_count = 0;

  void add(const ZoneStats& s) {
    if (!s.mean_mm) {
      return;
    }
    sum_of_means += *s.mean_mm;
    ++days;
    pooled_sum += *s.mean_mm * static_cast<double>(s.significant_pixels);
    pooled_count += s.significant_pixels;
  }

  std::optional<double> mean_of_means() const {
    return days > 0 ? std::optional<double>(sum_of_means / static_cast<double>(days)) : std::nullopt;
  }
  std::optional<double> pooled() const {
    return pooled_count > 0 ? std::optional<double>(pooled_sum / static_cast<double>(pooled_count)) : std::nullopt;
  }
};

std::string fixed2(double v) {
  std::array<char, 64> buffer{};
  const auto res = std::to_chars(buffer.data(), buffer.data() + buffer.size(), v, std::chars_format::fixed, 2);
  std::string out(buffer.data(), res.ptr);
  return out == "-0.00" ? "0.00" : out;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

double nice_step(double max_value) {
  if (!(max_value > 0.0)) {
    return 1.0;
  }
  const double raw = max_value / 10.0;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  for (const double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * magnitude >= raw * (1.0 - 1e-12)) {
      return m * magnitude;
    }
  }
  return 10.0 * magnitude;
}

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                                 "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

}  // namespace

std::string write_stats_csv(std::vector<ZoneStats> rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const ZoneStats& a, const ZoneStats& b) {
    return std::tie(a.date, a.zone) < std::tie(b.date, b.zone);
  });
  std::string out = "day_id,date,zone,mean_mm,max_mm,max_lat,max_lon,significant_pixels,area_km2\n";
  for (const ZoneStats& s : rows) {
    out += csv_field(s.day_id);
    out += ',';
    out += csv_field(s.date);
    out += ',';
    out += csv_field(s.zone);
    out += ',';
    out += optional_number(s.mean_mm);
    out += ',';
    out += optional_number(s.max_mm);
    out += ',';
    out += s.max_point ? format_significant(s.max_point->lat) : std::string();
    out += ',';
    out += s.max_point ? format_significant(s.max_point->lon) : std::string();
    out += ',';
    out += std::to_string(s.significant_pixels);
    out += ',';
    out += format_significant(s.area_km2);
    out += '\n';
  }
  return out;
}

std::string write_summary_json(const RunResult& run) {
  const RunConfig& cfg = run.config;

  MeanTally cluster;
  MeanTally all_zones;
  std::map<std::string, MeanTally> zones;
  for (const DayResult& day : run.days) {
    for (const ZoneStats& s : day.stats) {
      if (s.zone == kClusterZone) {
        cluster.add(s);
      } else if (s.zone == kAllZones) {
        all_zones.add(s);
      } else {
        zones[s.zone].add(s);
      }
    }
  }
  const auto by_zone = [&](auto pick) {
    ordered_json out = ordered_json::object();
    for (const std::string& name : run.zone_names) {
      const auto it = zones.find(name);
      out[name] = it == zones.end() ? ordered_json(nullptr) : json_optional(pick(it->second));
    }
    return out;
  };
  const auto mean_of_means = [](const MeanTally& t) { return t.mean_of_means(); };
  const auto pooled = [](const MeanTally& t) { return t.pooled(); };

  ordered_json doc;
  doc["units"] = {{"rainfall", "mm per 24 h window ending 03 UTC"}, {"area", "km2"}};
  doc["area_mode"] = cfg.area_mode == AreaMode::Flat ? "flat" : "spherical";
  doc["mean_of_daily_means_mm"] = {{"cluster", json_optional(cluster.mean_of_means())},
                                   {"all_zones", json_optional(all_zones.mean_of_means())},
                                   {"per_zone", by_zone(mean_of_means)}};
  doc["pooled_mean_mm"] = {{"cluster", json_optional(cluster.pooled())},
                           {"all_zones", json_optional(all_zones.pooled())},
                           {"per_zone", by_zone(pooled)}};
  doc["total_footprint_km2"] = json_number(run.footprint_area.total_km2);
  doc["zoned_footprint_km2"] = json_number(run.footprint_area.zoned_km2);
  ordered_json per_zone = ordered_json::object();
  for (std::size_t z = 0; z < run.zone_names.size(); ++z) {
    const double area = z < run.footprint_area.per_zone_km2.size() ? run.footprint_area.per_zone_km2[z] : 0.0;
    per_zone[run.zone_names[z]] = json_number(area);
  }
  doc["per_zone_footprint_km2"] = std::move(per_zone);
  doc["footprint_days"] = run.footprint ? ordered_json(run.footprint->day_ids) : ordered_json::array();

  ordered_json days = ordered_json::array();
  for (const DayResult& day : run.days) {
    ordered_json d;
    d["day_id"] = day.input.day_id;
    d["date"] = day.input.date;
    d["status"] = to_string(day.status);
    if (!day.message.empty()) {
      d["message"] = day.message;
    }
    d["threshold_mm"] = json_number(day.threshold_mm);
    d["mask_pixels"] = day.mask_pixels;
    d["cluster_pixels"] = day.cluster_pixels;
    d["component_count"] = day.component_count;
    d["fix"] = json_point(day.fix);
    d["centroid"] = json_point(day.centroid);
    days.push_back(std::move(d));
  }
  doc["days"] = std::move(days);
  doc["errors"] = run.errors;

  ordered_json config;
  config["track_path"] = cfg.track_path.generic_string();
  config["boundaries_path"] =
      cfg.boundaries_path ? ordered_json(cfg.boundaries_path->generic_string()) : ordered_json(nullptr);
  if (cfg.study_bounds) {
    config["study_bounds"] = {{"west", cfg.study_bounds->west},
                              {"east", cfg.study_bounds->east},
                              {"south", cfg.study_bounds->south},
                              {"north", cfg.study_bounds->north}};
  } else {
    config["study_bounds"] = nullptr;
  }
  config["trace_mm"] = cfg.trace_mm;
  config["default_threshold_mm"] = cfg.default_threshold_mm;
  config["reproject"] = cfg.reproject;
  config["reproject_cellsize_deg"] = cfg.reproject_cellsize_deg;
  config["sphere_radius_km"] = cfg.sphere_radius_km;
  config["fix_hour_utc"] = cfg.fix_hour_utc;
  config["connectivity"] = static_cast<int>(cfg.connectivity);
  config["area_mode"] = cfg.area_mode == AreaMode::Flat ? "flat" : "spherical";
  ordered_json config_days = ordered_json::array();
  for (const DayInput& day : cfg.days) {
    config_days.push_back({{"day_id", day.day_id},
                           {"date", day.date},
                           {"grid_path", day.grid_path.generic_string()},
                           {"threshold_mm", day.threshold_mm ? ordered_json(*day.threshold_mm) : ordered_json(nullptr)}});
  }
  config["days"] = std::move(config_days);
  doc["config"] = std::move(config);
  return doc.dump(2) + "\n";
}

std::string render_bar_chart_svg(std::span<const BarSeries> series, std::string_view title,
                                 std::string_view y_label) {
  if (series.empty() || series.front().points.empty()) {
    throw std::invalid_argument("bar chart needs at least one point");
  }
  const std::size_t categories = series.front().points.size();
  double max_value = 0.0;
  for (const BarSeries& s : series) {
    if (s.points.size() != categories) {
      throw std::invalid_argument("series '" + s.name + "' has a different number of points");
    }
    for (const BarPoint& p : s.points) {
      if (!std::isfinite(p.value)) {
        throw std::invalid_argument("non-finite value for bar '" + p.label + "'");
      }
      if (p.value < 0.0) {
        throw std::invalid_argument("negative value for bar '" + p.label + "'");
      }
      max_value = std::max(max_value, p.value);
    }
  }

  constexpr double kWidth = 800.0;
  constexpr double kHeight = 450.0;
  constexpr double kLeft = 80.0;
  constexpr double kRight = 20.0;
  constexpr double kTop = 50.0;
  constexpr double kBottom = 90.0;
  constexpr double kPlotW = kWidth - kLeft - kRight;
  constexpr double kPlotH = kHeight - kTop - kBottom;
  const double baseline = kTop + kPlotH;
  const double scale = max_value > 0.0 ? kPlotH / max_value : 0.0;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fixed2(kWidth) + "\" height=\"" +
         fixed2(kHeight) + "\" viewBox=\"0 0 " + fixed2(kWidth) + " " + fixed2(kHeight) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + fixed2(kWidth) + "\" height=\"" + fixed2(kHeight) +
         "\" fill=\"#ffffff\"/>\n";
  out += "<text class=\"title\" x=\"" + fixed2(kWidth / 2.0) +
         "\" y=\"28.00\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" + xml_escape(title) +
         "</text>\n";
  out += "<text class=\"y-label\" x=\"18.00\" y=\"" + fixed2(kTop + kPlotH / 2.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 18.00 " +
         fixed2(kTop + kPlotH / 2.0) + ")\">" + xml_escape(y_label) + "</text>\n";

  const double step = nice_step(max_value);
  out += "<g class=\"y-axis\" font-family=\"sans-serif\" font-size=\"10\">\n";
  for (int i = 0; i <= 10; ++i) {
    const double tick = step * i;
    if (i > 0 && tick > max_value * (1.0 + 1e-12)) {
      break;
    }
    const double y = baseline - tick * scale;
    out += "<line class=\"tick\" x1=\"" + fixed2(kLeft - 4.0) + "\" y1=\"" + fixed2(y) + "\" x2=\"" +
           fixed2(kLeft + kPlotW) + "\" y2=\"" + fixed2(y) + "\" stroke=\"#dddddd\"/>\n";
    out += "<text x=\"" + fixed2(kLeft - 6.0) + "\" y=\"" + fixed2(y + 3.0) + "\" text-anchor=\"end\">" +
           xml_escape(format_significant(tick)) + "</text>\n";
    if (max_value == 0.0) {
      break;
    }
  }
  out += "</g>\n";
  out += "<line x1=\"" + fixed2(kLeft) + "\" y1=\"" + fixed2(baseline) + "\" x2=\"" + fixed2(kLeft + kPlotW) +
         "\" y2=\"" + fixed2(baseline) + "\" stroke=\"#000000\"/>\n";
  out += "<line x1=\"" + fixed2(kLeft) + "\" y1=\"" + fixed2(kTop) + "\" x2=\"" + fixed2(kLeft) + "\" y2=\"" +
         fixed2(baseline) + "\" stroke=\"#000000\"/>\n";

  const double group_w = kPlotW / static_cast<double>(categories);
  const double bar_w = group_w * 0.8 / static_cast<double>(series.size());
  out += "<g class=\"bars\">\n";
  for (std::size_t k = 0; k < categories; ++k) {
    const double group_x = kLeft + group_w * static_cast<double>(k) + group_w * 0.1;
    for (std::size_t s = 0; s < series.size(); ++s) {
      const BarPoint& p = series[s].points[k];
      const double h = p.value * scale;
      out += "<rect class=\"bar\" x=\"" + fixed2(group_x + bar_w * static_cast<double>(s)) + "\" y=\"" +
             fixed2(baseline - h) + "\" width=\"" + fixed2(bar_w) + "\" height=\"" + fixed2(h) + "\" fill=\"" +
             kPalette[s % kPalette.size()] + "\"><title>" + xml_escape(series[s].name) + " " +
             xml_escape(p.label) + ": " + xml_escape(format_significant(p.value)) + "</title></rect>\n";
    }
    const double label_x = kLeft + group_w * (static_cast<double>(k) + 0.5);
    out += "<text class=\"category\" x=\"" + fixed2(label_x) + "\" y=\"" + fixed2(baseline + 14.0) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\" transform=\"rotate(-45 " +
           fixed2(label_x) + " " + fixed2(baseline + 14.0) + ")\">" + xml_escape(series.front().points[k].label) +
           "</text>\n";
  }
  out += "</g>\n";

  if (series.size() > 1) {
    out += "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"11\">\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
      const double x = kLeft + kPlotW - 150.0;
      const double y = kTop + 12.0 + 14.0 * static_cast<double>(s);
      out += "<rect x=\"" + fixed2(x) + "\" y=\"" + fixed2(y - 9.0) + "\" width=\"10.00\" height=\"10.00\" fill=\"" +
             kPalette[s % kPalette.size()] + "\"/>\n";
      out += "<text x=\"" + fixed2(x + 14.0) + "\" y=\"" + fixed2(y) + "\">" + xml_escape(series[s].name) +
             "</text>\n";
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string render_bar_chart_svg(const BarSeries& series, std::string_view title, std::string_view y_label) {
  return render_bar_chart_svg(std::span<const BarSeries>(&series, 1), title, y_label);
}

}  // namespace tcrain
