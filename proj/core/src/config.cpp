#include <cmath>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "tcrain/grid_io.hpp"
#include "tcrain/pipeline.hpp"
#include "tcrain/track.hpp"

namespace tcrain {
namespace {

using nlohmann::json;

const std::set<std::string> kTopLevelKeys = {
    "days",           "track_path", "boundaries_path", "study_bounds",           "trace_mm",
    "default_threshold_mm", "reproject", "sphere_radius_km", "reproject_cellsize_deg", "fix_hour_utc",
    "connectivity",   "area_mode",  "threads"};

double number_at(const json& obj, const char* key, double fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    return fallback;
  }
  if (!it->is_number()) {
    throw ConfigError(std::string("config key '") + key + "' must be a number");
  }
  return it->get<double>();
}

std::string string_at(const json& obj, const char* key, const std::string& context) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw ConfigError(context + ": '" + key + "' must be a string");
  }
  return it->get<std::string>();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& path) {
  const std::filesystem::path p(path);
  return p.is_absolute() || base.empty() ? p : base / p;
}

}  // namespace

RunConfig parse_run_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("config must be a JSON object");
  }
  for (const auto& item : doc.items()) {
    if (!kTopLevelKeys.contains(item.key())) {
      throw ConfigError("unknown config key '" + item.key() + "'");
    }
  }

  RunConfig cfg;
  cfg.track_path = resolve(base_dir, string_at(doc, "track_path", "config"));
  if (doc.contains("boundaries_path") && !doc["boundaries_path"].is_null()) {
    cfg.boundaries_path = resolve(base_dir, string_at(doc, "boundaries_path", "config"));
  }
  if (doc.contains("study_bounds") && !doc["study_bounds"].is_null()) {
    const json& b = doc["study_bounds"];
    if (!b.is_object()) {
      throw ConfigError("study_bounds must be an object {west, east, south, north}");
    }
    GeoBounds bounds;
    for (const char* key : {"west", "east", "south", "north"}) {
      if (!b.contains(key) || !b[key].is_number()) {
        throw ConfigError(std::string("study_bounds.") + key + " must be a number");
      }
    }
    bounds.west = b["west"].get<double>();
    bounds.east = b["east"].get<double>();
    bounds.south = b["south"].get<double>();
    bounds.north = b["north"].get<double>();
    try {
      bounds.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("study_bounds: ") + e.what());
    }
    cfg.study_bounds = bounds;
  }

  cfg.trace_mm = number_at(doc, "trace_mm", cfg.trace_mm);
  cfg.default_threshold_mm = number_at(doc, "default_threshold_mm", cfg.default_threshold_mm);
  cfg.sphere_radius_km = number_at(doc, "sphere_radius_km", cfg.sphere_radius_km);
  cfg.reproject_cellsize_deg = number_at(doc, "reproject_cellsize_deg", cfg.reproject_cellsize_deg);
  if (doc.contains("reproject")) {
    if (!doc["reproject"].is_boolean()) {
      throw ConfigError("config key 'reproject' must be a boolean");
    }
    cfg.reproject = doc["reproject"].get<bool>();
  }
  const double fix_hour = number_at(doc, "fix_hour_utc", cfg.fix_hour_utc);
  if (fix_hour != std::floor(fix_hour) || fix_hour < 0 || fix_hour > 23) {
    throw ConfigError("fix_hour_utc must be an integer hour 0..23");
  }
  cfg.fix_hour_utc = static_cast<int>(fix_hour);

  const double connectivity = number_at(doc, "connectivity", 4);
  if (connectivity != 4 && connectivity != 8) {
    throw ConfigError("connectivity must be 4 or 8");
  }
  cfg.connectivity = connectivity == 8 ? Connectivity::Eight : Connectivity::Four;
  if (doc.contains("area_mode")) {
    const std::string mode = string_at(doc, "area_mode", "config");
    if (mode != "spherical" && mode != "flat") {
      throw ConfigError("area_mode must be 'spherical' or 'flat'");
    }
    cfg.area_mode = mode == "flat" ? AreaMode::Flat : AreaMode::Spherical;
  }
  const double threads = number_at(doc, "threads", 0);
  if (threads < 0 || threads != std::floor(threads)) {
    throw ConfigError("threads must be a non-negative integer");
  }
  cfg.threads = static_cast<unsigned>(threads);

  if (!(cfg.trace_mm >= 0.0)) {
    throw ConfigError("trace_mm must be non-negative");
  }
  if (!(cfg.default_threshold_mm > 0.0)) {
    throw ConfigError("default_threshold_mm must be positive");
  }
  if (!(cfg.sphere_radius_km > 0.0)) {
    throw ConfigError("sphere_radius_km must be positive");
  }
  if (!(cfg.reproject_cellsize_deg > 0.0)) {
    throw ConfigError("reproject_cellsize_deg must be positive");
  }
  if (cfg.reproject && !cfg.study_bounds) {
    throw ConfigError("reproject requires study_bounds for the target grid");
  }

  const auto days = doc.find("days");
  if (days == doc.end() || !days->is_array() || days->empty()) {
    throw ConfigError("config needs a non-empty 'days' list");
  }
  std::set<std::string> ids;
  for (std::size_t i = 0; i < days->size(); ++i) {
    const json& entry = (*days)[i];
    const std::string context = "days[" + std::to_string(i) + "]";
    if (!entry.is_object()) {
      throw ConfigError(context + " must be an object");
    }
    DayInput day;
    day.day_id = string_at(entry, "day_id", context);
    day.date = string_at(entry, "date", context);
    day.grid_path = resolve(base_dir, string_at(entry, "grid_path", context));
    if (entry.contains("threshold_mm") && !entry["threshold_mm"].is_null()) {
      if (!entry["threshold_mm"].is_number() || !(entry["threshold_mm"].get<double>() > 0.0)) {
        throw ConfigError(context + ": threshold_mm must be a positive number");
      }
      day.threshold_mm = entry["threshold_mm"].get<double>();
    }
    try {
      parse_date(day.date);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(context + ": " + e.what());
    }
    if (!ids.insert(day.day_id).second) {
      throw ConfigError(context + ": duplicate day_id '" + day.day_id + "'");
    }
    if (!cfg.days.empty() && parse_date(day.date) <= parse_date(cfg.days.back().date)) {
      throw ConfigError(context + ": dates must be strictly increasing");
    }
    cfg.days.push_back(std::move(day));
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::runtime_error&) {
    throw ConfigError("cannot read config file " + path.string());
  }
  return parse_run_config(text, path.parent_path());
}

}  // namespace tcrain
