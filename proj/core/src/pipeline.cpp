#include "tcrain/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <memory>
#include <mutex>
#include <thread>
#include <utility>

#include "tcrain/errors.hpp"
#include "tcrain/grid_io.hpp"
#include "tcrain/polygons.hpp"
#include "tcrain/report.hpp"
#include "tcrain/track.hpp"

namespace tcrain {

const char* to_string(DayStatus status) {
  switch (status) {
    case DayStatus::Ok: return "ok";
    case DayStatus::NoCluster: return "no_cluster";
    case DayStatus::NoFix: return "no_fix";
    case DayStatus::Failed: return "failed";
  }
  return "unknown";
}

bool RunResult::all_days_ok() const {
  return errors.empty() && std::none_of(days.begin(), days.end(),
                                        [](const DayResult& d) { return d.status == DayStatus::Failed; });
}

namespace {

// Zone maps keyed by grid georeferencing; days of one run normally share one.
class ZoneMapCache {
 public:
  explicit ZoneMapCache(const PolygonSet* polys) : polys_(polys) {}

  std::shared_ptr<const ZoneMap> get(const GridHeader& header) {
    std::lock_guard lock(mutex_);
    for (const auto& [h, map] : entries_) {
      if (h.same_georeference(header)) {
        return map;
      }
    }
    auto map = std::make_shared<const ZoneMap>(polys_ ? assign_zones(header, *polys_) : empty_map(header));
    entries_.emplace_back(header, map);
    return map;
  }

 private:
  static ZoneMap empty_map(const GridHeader& header) {
    ZoneMap map;
    map.header = header;
    map.zone.assign(header.size(), -1);
    return map;
  }

  const PolygonSet* polys_;
  std::mutex mutex_;
  std::vector<std::pair<GridHeader, std::shared_ptr<const ZoneMap>>> entries_;
};

struct SharedInputs {
  const RunConfig& config;
  const Track& track;
  bool has_zones;
  ZoneMapCache& zones;
};

std::vector<ZoneStats> day_rows(const Grid& cluster_grid, const ZoneMap& zone_map, const SharedInputs& in) {
  return cluster_stats_rows(cluster_grid, in.has_zones ? &zone_map : nullptr, in.config.trace_mm,
                            in.config.area_model());
}

void run_day_stages(const DayInput& day, const SharedInputs& in, DayResult& result) {
  const RunConfig& cfg = in.config;
  std::string stage = "read";
  try {
    Grid grid = read_ascii_grid_file(day.grid_path);
    grid.validate();

    if (cfg.reproject && grid.header().projection == Projection::Sinusoidal) {
      stage = "reproject";
      grid = reproject_to_geographic(grid, *cfg.study_bounds, cfg.reproject_cellsize_deg,
                                     SinusoidalParams{cfg.sphere_radius_km});
    }
    if (grid.header().projection != Projection::Geographic) {
      throw std::invalid_argument("grid is sinusoidal; enable 'reproject' to warp it to lat/lon");
    }
    if (cfg.study_bounds) {
      stage = "subset";
      grid = subset(grid, *cfg.study_bounds);
    }

    stage = "mask";
    const BinaryMask mask = make_mask(grid, result.threshold_mm);
    result.mask_pixels = mask.count();
    stage = "label";
    const LabeledGrid labeled = label_components(mask, cfg.connectivity);
    result.component_count = labeled.component_count;

    stage = "zones";
    const auto zone_map = in.zones.get(grid.header());

    if (labeled.component_count == 0) {
      result.status = DayStatus::NoCluster;
      result.message = "no precipitation above " + format_significant(result.threshold_mm) + " mm";
      const Grid empty(grid.header(), grid.nodata());
      result.stats = day_rows(empty, *zone_map, in);
      return;
    }

    stage = "track";
    const UtcTime when = parse_date(day.date) + std::chrono::hours(cfg.fix_hour_utc);
    const auto fix = track_fix_at(in.track, when);
    if (!fix) {
      result.status = DayStatus::NoFix;
      result.message = "no best-track fix near " + format_utc_timestamp(when);
      return;
    }
    result.fix = fix->position();

    stage = "select";
    Cluster cluster = select_cyclone_cluster(labeled, fix->position(), grid, cfg.sphere_radius_km);
    cluster.source_day = day.day_id;
    result.cluster_label = cluster.label;
    const PixelCounts counts = pixel_counts(mask, cluster);
    result.cluster_pixels = counts.cluster_count;
    result.centroid = cluster_centroid(cluster, grid);

    stage = "stats";
    Grid cluster_grid = extract_cluster_grid(grid, cluster);
    result.stats = day_rows(cluster_grid, *zone_map, in);
    result.cluster_mask = cluster_mask(grid.header(), cluster);
    result.cluster_grid = std::move(cluster_grid);
    result.status = DayStatus::Ok;
  } catch (const std::exception& e) {
    result.status = DayStatus::Failed;
    result.message = stage + ": " + e.what();
    result.stats.clear();
  }
}

DayResult process_day(const DayInput& day, const SharedInputs& in) {
  DayResult result;
  result.input = day;
  result.threshold_mm = in.config.threshold_for(day);
  run_day_stages(day, in, result);
  for (ZoneStats& s : result.stats) {
    s.day_id = day.day_id;
    s.date = day.date;
  }
  return result;
}

void require_file(const std::filesystem::path& path, const char* what) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw ConfigError(std::string(what) + " not found: " + path.string());
  }
}

}  // namespace

std::vector<ZoneStats> cluster_stats_rows(const Grid& cluster_grid, const ZoneMap* zone_map, double trace_mm,
                                          const AreaModel& model) {
  std::vector<ZoneStats> rows;
  rows.push_back(region_stats(cluster_grid, {}, trace_mm, model));
  rows.back().zone = kClusterZone;
  if (zone_map != nullptr) {
    std::vector<std::uint8_t> zoned(zone_map->zone.size());
    std::transform(zone_map->zone.begin(), zone_map->zone.end(), zoned.begin(),
                   [](std::int32_t z) -> std::uint8_t { return z >= 0 ? 1 : 0; });
    rows.push_back(region_stats(cluster_grid, zoned, trace_mm, model));
    rows.back().zone = kAllZones;
    for (ZoneStats& s : zonal_stats(cluster_grid, *zone_map, trace_mm, model)) {
      rows.push_back(std::move(s));
    }
  }
  return rows;
}

RunResult run_pipeline(const RunConfig& config) {
  require_file(config.track_path, "track file");
  if (config.boundaries_path) {
    require_file(*config.boundaries_path, "boundaries file");
  }
  for (const DayInput& day : config.days) {
    require_file(day.grid_path, ("grid for " + day.day_id).c_str());
  }

  Track track;
  try {
    track = read_track_csv_file(config.track_path);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  std::optional<PolygonSet> polys;
  if (config.boundaries_path) {
    try {
      polys = read_geojson_polygons_file(*config.boundaries_path);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  }

  RunResult run;
  run.config = config;
  if (polys) {
    for (const Zone& z : polys->zones) {
      run.zone_names.push_back(z.name);
    }
  }
  ZoneMapCache zones(polys ? &*polys : nullptr);
  const SharedInputs shared{config, track, polys.has_value(), zones};

  run.days.resize(config.days.size());
  unsigned workers = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
  workers = std::min<unsigned>(workers, static_cast<unsigned>(config.days.size()));
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < config.days.size(); i = next++) {
      run.days[i] = process_day(config.days[i], shared);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back(work);
    }
  }

  std::vector<DayMask> masks;
  for (const DayResult& day : run.days) {
    if (day.status == DayStatus::Ok && day.cluster_mask) {
      masks.push_back({day.input.day_id, *day.cluster_mask});
    }
  }
  run.footprint_area.per_zone_km2.assign(run.zone_names.size(), 0.0);
  if (!masks.empty()) {
    try {
      run.footprint = union_footprint(masks);
      const auto zone_map = zones.get(run.footprint->mask.header());
      run.footprint_area = footprint_area(*run.footprint, *zone_map, config.area_model());
    } catch (const std::exception& e) {
      run.footprint.reset();
      run.errors.push_back(std::string("footprint: ") + e.what());
    }
  }
  return run;
}

namespace {

BarSeries day_series(const RunResult& run, std::string name, const std::string& zone, bool area) {
  BarSeries series{std::move(name), {}};
  for (const DayResult& day : run.days) {
    if (day.stats.empty()) {
      continue;
    }
    double value = 0.0;
    for (const ZoneStats& s : day.stats) {
      if (s.zone == zone) {
        value = area ? s.area_km2 : s.mean_mm.value_or(0.0);
      }
    }
    series.points.push_back({day.input.day_id, value});
  }
  return series;
}

}  // namespace

void write_run_outputs(const RunResult& run, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);

  std::vector<ZoneStats> rows;
  for (const DayResult& day : run.days) {
    rows.insert(rows.end(), day.stats.begin(), day.stats.end());
  }
  write_text_file(out_dir / "stats.csv", write_stats_csv(rows));
  write_text_file(out_dir / "summary.json", write_summary_json(run));

  for (const DayResult& day : run.days) {
    if (day.cluster_grid) {
      write_ascii_grid_file(out_dir / "clusters" / (day.input.day_id + ".asc"), *day.cluster_grid);
    }
  }
  if (run.footprint) {
    const BinaryMask& mask = run.footprint->mask;
    std::vector<double> values(mask.bits().begin(), mask.bits().end());
    Grid grid(mask.header(), std::move(values));
    grid.set_precision(1);
    write_ascii_grid_file(out_dir / "footprint.asc", grid);
  }

  const auto charts = out_dir / "charts";
  BarSeries mask_counts{"mask", {}};
  BarSeries cluster_counts{"cluster", {}};
  for (const DayResult& day : run.days) {
    if (day.status == DayStatus::Failed) {
      continue;
    }
    mask_counts.points.push_back({day.input.day_id, static_cast<double>(day.mask_pixels)});
    cluster_counts.points.push_back({day.input.day_id, static_cast<double>(day.cluster_pixels)});
  }
  if (!mask_counts.points.empty()) {
    const std::vector<BarSeries> s{mask_counts, cluster_counts};
    write_text_file(charts / "pixel_counts.svg",
                    render_bar_chart_svg(s, "Pixel count of mask and extracted cluster", "pixels"));
  }

  const bool zones = !run.zone_names.empty();
  std::vector<BarSeries> means{day_series(run, "cluster", kClusterZone, false)};
  std::vector<BarSeries> areas{day_series(run, "cluster", kClusterZone, true)};
  if (zones) {
    means.push_back(day_series(run, "all zones", kAllZones, false));
    areas.push_back(day_series(run, "all zones", kAllZones, true));
  }
  if (!means.front().points.empty()) {
    write_text_file(charts / "daily_mean_rainfall.svg",
                    render_bar_chart_svg(means, "Average daily rainfall over significant pixels", "mm"));
    write_text_file(charts / "daily_area.svg",
                    render_bar_chart_svg(areas, "Area of significant rainfall per day", "km2"));
    if (zones) {
      std::vector<BarSeries> per_zone;
      for (const std::string& name : run.zone_names) {
        per_zone.push_back(day_series(run, name, name, false));
      }
      write_text_file(charts / "zone_daily_rainfall.svg",
                      render_bar_chart_svg(per_zone, "Average daily rainfall per zone", "mm"));
    }
  }

  BarSeries footprint{"footprint", {{"total", run.footprint_area.total_km2}}};
  if (zones) {
    footprint.points.push_back({"all zones", run.footprint_area.zoned_km2});
    for (std::size_t z = 0; z < run.zone_names.size(); ++z) {
      footprint.points.push_back({run.zone_names[z], run.footprint_area.per_zone_km2[z]});
    }
  }
  write_text_file(charts / "footprint_area.svg",
                  render_bar_chart_svg(footprint, "Total area covered by the cyclone footprint", "km2"));
}

}  // namespace tcrain
