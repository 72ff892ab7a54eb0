#include "tcrain_tools/cli.hpp"

#include <cstdlib>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tcrain/cluster.hpp"
#include "tcrain/errors.hpp"
#include "tcrain/grid_io.hpp"
#include "tcrain/pipeline.hpp"
#include "tcrain/polygons.hpp"
#include "tcrain/report.hpp"
#include "tcrain/synth.hpp"
#include "tcrain/zonal.hpp"
#include "tcrain_tools/fetch.hpp"
#include "tcrain_tools/scenario.hpp"

namespace tcrain::tools {
namespace {

using nlohmann::ordered_json;

// Input problems detected by a subcommand (exit code 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::string config;
  std::string area_mode;
  std::optional<int> connectivity;
  std::optional<unsigned> threads;
  std::string out_dir;

  AreaModel area_model(double radius = kEarthRadiusKm) const {
    return {radius, area_mode == "flat" ? AreaMode::Flat : AreaMode::Spherical};
  }
  Connectivity connectivity_or_default() const {
    return connectivity.value_or(4) == 8 ? Connectivity::Eight : Connectivity::Four;
  }
  std::filesystem::path out_dir_or(const char* fallback) const {
    return out_dir.empty() ? std::filesystem::path(fallback) : std::filesystem::path(out_dir);
  }
};

Grid load_grid(const std::string& path) {
  try {
    return read_ascii_grid_file(path);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

GeoBounds parse_bounds(const std::string& text) {
  std::vector<double> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto v = parse_double(trim(item));
    if (!v) {
      throw InputError("bounds must be west,east,south,north");
    }
    parts.push_back(*v);
  }
  if (parts.size() != 4) {
    throw InputError("bounds must be west,east,south,north");
  }
  GeoBounds b{parts[0], parts[1], parts[2], parts[3]};
  try {
    b.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return b;
}

ordered_json point_json(const LatLon& p) { return {{"lat", round_significant(p.lat)}, {"lon", round_significant(p.lon)}}; }

int cmd_run(const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  if (g.config.empty()) {
    err << "error: run requires --config <path>\n";
    return kExitInputError;
  }
  RunConfig cfg = load_run_config(g.config);
  if (!g.area_mode.empty()) {
    cfg.area_mode = g.area_mode == "flat" ? AreaMode::Flat : AreaMode::Spherical;
  }
  if (g.connectivity) {
    cfg.connectivity = *g.connectivity == 8 ? Connectivity::Eight : Connectivity::Four;
  }
  if (g.threads) {
    cfg.threads = *g.threads;
  }
  const RunResult result = run_pipeline(cfg);
  const auto out_dir = g.out_dir_or("tcrain_out");
  write_run_outputs(result, out_dir);

  for (const DayResult& day : result.days) {
    out << day.input.day_id << " " << day.input.date << " " << to_string(day.status) << " mask=" << day.mask_pixels
        << " cluster=" << day.cluster_pixels << "\n";
    if (day.status == DayStatus::Failed) {
      err << "error: " << day.input.day_id << " (" << day.input.grid_path.string() << "): " << day.message << "\n";
    } else if (!day.message.empty()) {
      err << "note: " << day.input.day_id << ": " << day.message << "\n";
    }
  }
  for (const std::string& e : result.errors) {
    err << "error: " << e << "\n";
  }
  out << "footprint " << format_significant(result.footprint_area.total_km2) << " km2; outputs in "
      << out_dir.string() << "\n";
  return result.all_days_ok() ? kExitOk : kExitProcessingError;
}

int cmd_fetch(const GlobalOptions& g, const std::string& manifest, std::string token, std::string dest,
              int retries, int backoff_ms, std::ostream& out, std::ostream& err) {
  std::string text;
  try {
    text = read_text_file(manifest);
  } catch (const std::exception&) {
    throw InputError("cannot read manifest " + manifest);
  }
  if (token.empty()) {
    if (const char* env = std::getenv("TCRAIN_TOKEN")) {
      token = env;
    }
  }
  FetchOptions options;
  if (!token.empty()) {
    options.bearer_token = token;
  }
  options.max_retries = retries;
  options.initial_backoff = std::chrono::milliseconds(backoff_ms);
  const auto urls = parse_manifest(text);
  const auto dest_dir = dest.empty() ? g.out_dir_or(".") : std::filesystem::path(dest);
  const FetchReport report = fetch_all(urls, dest_dir, options);
  out << "downloaded " << report.downloaded.size() << ", skipped " << report.skipped.size() << ", failed "
      << report.failures.size() << "\n";
  for (const FetchFailure& f : report.failures) {
    err << "error: " << f.url << ": " << f.reason << "\n";
  }
  return report.ok() ? kExitOk : kExitProcessingError;
}

int cmd_synth(const GlobalOptions& g, const std::string& scenario, const std::string& spec_path, std::size_t size,
              std::ostream& out) {
  const auto dir = g.out_dir_or("synthetic");
  if (!spec_path.empty()) {
    ordered_json spec;
    try {
      spec = ordered_json::parse(read_text_file(spec_path));
      const auto& grid = spec.at("grid");
      const GridSpec gs{grid.at("ncols").get<std::size_t>(), grid.at("nrows").get<std::size_t>(),
                        grid.at("xll").get<double>(), grid.at("yll").get<double>(),
                        grid.at("cellsize").get<double>()};
      std::vector<BlobSpec> blobs;
      for (const auto& b : spec.at("blobs")) {
        blobs.push_back({b.at("id").get<std::string>(),
                         {b.at("lat").get<double>(), b.at("lon").get<double>()},
                         b.at("amplitude_mm").get<double>(),
                         b.at("sigma_deg").get<double>()});
      }
      std::optional<double> threshold;
      if (spec.contains("threshold_mm") && !spec["threshold_mm"].is_null()) {
        threshold = spec["threshold_mm"].get<double>();
      }
      const std::string name = spec.value("name", "field");
      const SynthField field = render_field(blobs, gs);
      write_ascii_grid_file(dir / (name + ".asc"), field.grid);
      write_text_file(dir / (name + ".truth.json"), synth_sidecar_json(blobs, field, threshold));
      out << "wrote " << (dir / (name + ".asc")).string() << "\n";
    } catch (const ordered_json::exception& e) {
      throw InputError(std::string("bad synth spec: ") + e.what());
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("bad synth spec: ") + e.what());
    }
    return kExitOk;
  }
  if (scenario != "three-day") {
    throw InputError("unknown scenario '" + scenario + "'");
  }
  const Scenario s = write_three_day_scenario(dir, size);
  out << "wrote scenario config " << s.config_path.string() << "\n";
  return kExitOk;
}

int cmd_accumulate(const std::vector<std::string>& inputs, double step_hours, const std::string& output,
                   std::ostream& out) {
  std::vector<Grid> grids;
  grids.reserve(inputs.size());
  for (const std::string& path : inputs) {
    grids.push_back(load_grid(path));
  }
  Grid total;
  try {
    total = accumulate_daily(grids, step_hours);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  write_ascii_grid_file(output, total);
  out << "accumulated " << grids.size() << " grids into " << output << "\n";
  return kExitOk;
}

int cmd_extract(const GlobalOptions& g, const std::string& grid_path, double lat, double lon, double threshold,
                const std::string& bounds, const std::string& output, std::ostream& out) {
  Grid grid = load_grid(grid_path);
  if (!bounds.empty()) {
    grid = subset(grid, parse_bounds(bounds));
  }
  const BinaryMask mask = make_mask(grid, threshold);
  const LabeledGrid labeled = label_components(mask, g.connectivity_or_default());
  const Cluster cluster = select_cyclone_cluster(labeled, {lat, lon}, grid);
  const PixelCounts counts = pixel_counts(mask, cluster);
  if (!output.empty()) {
    write_ascii_grid_file(output, extract_cluster_grid(grid, cluster));
  }
  const ordered_json doc = {{"component_count", labeled.component_count},
                            {"label", cluster.label},
                            {"mask_pixels", counts.mask_count},
                            {"cluster_pixels", counts.cluster_count},
                            {"centroid", point_json(cluster_centroid(cluster, grid))}};
  out << doc.dump(2) << "\n";
  return kExitOk;
}

int cmd_stats(const GlobalOptions& g, const std::string& grid_path, const std::string& boundaries, double trace,
              const std::string& day_id, const std::string& date, const std::string& output, std::ostream& out) {
  const Grid grid = load_grid(grid_path);
  std::optional<ZoneMap> zones;
  if (!boundaries.empty()) {
    try {
      zones = assign_zones(grid, read_geojson_polygons_file(boundaries));
    } catch (const std::exception& e) {
      throw InputError(e.what());
    }
  }
  auto rows = cluster_stats_rows(grid, zones ? &*zones : nullptr, trace, g.area_model());
  for (ZoneStats& s : rows) {
    s.day_id = day_id;
    s.date = date;
  }
  const std::string csv = write_stats_csv(rows);
  if (output.empty()) {
    out << csv;
  } else {
    write_text_file(output, csv);
  }
  return kExitOk;
}

int cmd_footprint(const GlobalOptions& g, const std::vector<std::string>& inputs, const std::string& boundaries,
                  const std::string& output, std::ostream& out) {
  std::vector<DayMask> masks;
  for (const std::string& path : inputs) {
    const Grid grid = load_grid(path);
    BinaryMask mask(grid.header());
    for (std::size_t r = 0; r < grid.nrows(); ++r) {
      for (std::size_t c = 0; c < grid.ncols(); ++c) {
        mask.set(r, c, !grid.is_nodata(r, c));
      }
    }
    masks.push_back({std::filesystem::path(path).stem().string(), std::move(mask)});
  }
  Footprint fp;
  try {
    fp = union_footprint(masks);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  ZoneMap zones;
  if (!boundaries.empty()) {
    try {
      zones = assign_zones(fp.mask.header(), read_geojson_polygons_file(boundaries));
    } catch (const std::exception& e) {
      throw InputError(e.what());
    }
  } else {
    zones.header = fp.mask.header();
    zones.zone.assign(fp.mask.size(), -1);
  }
  const FootprintArea area = footprint_area(fp, zones, g.area_model());
  if (!output.empty()) {
    std::vector<double> values(fp.mask.bits().begin(), fp.mask.bits().end());
    Grid grid(fp.mask.header(), std::move(values));
    grid.set_precision(1);
    write_ascii_grid_file(output, grid);
  }
  ordered_json per_zone = ordered_json::object();
  for (std::size_t z = 0; z < zones.zone_names.size(); ++z) {
    per_zone[zones.zone_names[z]] = round_significant(area.per_zone_km2[z]);
  }
  const ordered_json doc = {{"days", fp.day_ids},
                            {"footprint_pixels", fp.mask.count()},
                            {"total_km2", round_significant(area.total_km2)},
                            {"zoned_km2", round_significant(area.zoned_km2)},
                            {"per_zone_km2", per_zone}};
  out << doc.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tropical-cyclone rainfall cluster extraction and statistics", "tcrain"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--config", g.config, "Run configuration (JSON)");
  app.add_option("--area-mode", g.area_mode, "Cell area model")->check(CLI::IsMember({"spherical", "flat"}));
  app.add_option("--connectivity", g.connectivity, "Pixel adjacency for labeling")->check(CLI::IsMember({4, 8}));
  app.add_option("--threads", g.threads, "Worker threads for per-day processing (0 = auto)");
  app.add_option("--out-dir", g.out_dir, "Output directory");

  auto* run = app.add_subcommand("run", "Full pipeline over the configured days");

  std::string manifest, token, dest;
  int retries = 3;
  int backoff_ms = 500;
  auto* fetch = app.add_subcommand("fetch", "Download the files listed in a manifest");
  fetch->add_option("--manifest", manifest, "Text file with one URL per line")->required();
  fetch->add_option("--token", token, "Bearer token (default: $TCRAIN_TOKEN)");
  fetch->add_option("--dest", dest, "Destination directory (default: --out-dir or .)");
  fetch->add_option("--retries", retries, "Retries per file")->check(CLI::Range(0, 3));
  fetch->add_option("--backoff-ms", backoff_ms, "Initial retry backoff")->check(CLI::NonNegativeNumber);

  std::string scenario = "three-day";
  std::string spec_path;
  std::size_t size = 400;
  auto* synth = app.add_subcommand("synth", "Write synthetic rain grids with ground truth");
  synth->add_option("--scenario", scenario, "Built-in scenario (three-day)");
  synth->add_option("--spec", spec_path, "Blob specification (JSON) for a single field");
  synth->add_option("--size", size, "Scenario grid size in cells")->check(CLI::Range(200, 4000));

  std::vector<std::string> accumulate_inputs;
  double step_hours = 0.5;
  std::string accumulate_output;
  auto* accumulate = app.add_subcommand("accumulate", "Sum rate grids (mm/hr) into a daily total (mm)");
  accumulate->add_option("inputs", accumulate_inputs, "Rate grids")->required();
  accumulate->add_option("--step-hours", step_hours, "Hours per rate grid")->check(CLI::PositiveNumber);
  accumulate->add_option("--output,-o", accumulate_output, "Output grid")->required();

  std::string extract_grid, extract_bounds, extract_output;
  double fix_lat = 0.0;
  double fix_lon = 0.0;
  double threshold = 0.9;
  auto* extract = app.add_subcommand("extract", "Extract the cyclone cluster from one daily grid");
  extract->add_option("--grid", extract_grid, "Daily accumulation grid")->required();
  extract->add_option("--lat", fix_lat, "Track fix latitude")->required();
  extract->add_option("--lon", fix_lon, "Track fix longitude")->required();
  extract->add_option("--threshold", threshold, "Mask threshold in mm")->check(CLI::PositiveNumber);
  extract->add_option("--bounds", extract_bounds, "Subset west,east,south,north before masking");
  extract->add_option("--output,-o", extract_output, "Write the cluster grid here");

  std::string stats_grid, stats_boundaries, day_id, date, stats_output;
  double trace = 0.1;
  auto* stats = app.add_subcommand("stats", "Zonal statistics of a cluster grid");
  stats->add_option("--cluster-grid", stats_grid, "Cluster grid from extract")->required();
  stats->add_option("--boundaries", stats_boundaries, "Zones (GeoJSON)");
  stats->add_option("--trace", trace, "Trace cut-off in mm")->check(CLI::NonNegativeNumber);
  stats->add_option("--day-id", day_id, "Day id for the CSV rows");
  stats->add_option("--date", date, "Date for the CSV rows");
  stats->add_option("--output,-o", stats_output, "CSV output (default stdout)");

  std::vector<std::string> footprint_inputs;
  std::string footprint_boundaries, footprint_output;
  auto* footprint = app.add_subcommand("footprint", "Union of cluster grids and its area");
  footprint->add_option("inputs", footprint_inputs, "Cluster grids")->required();
  footprint->add_option("--boundaries", footprint_boundaries, "Zones (GeoJSON)");
  footprint->add_option("--output,-o", footprint_output, "Write the footprint mask grid here");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) {
    argv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*run) {
      return cmd_run(g, out, err);
    }
    if (*fetch) {
      return cmd_fetch(g, manifest, token, dest, retries, backoff_ms, out, err);
    }
    if (*synth) {
      return cmd_synth(g, scenario, spec_path, size, out);
    }
    if (*accumulate) {
      return cmd_accumulate(accumulate_inputs, step_hours, accumulate_output, out);
    }
    if (*extract) {
      return cmd_extract(g, extract_grid, fix_lat, fix_lon, threshold, extract_bounds, extract_output, out);
    }
    if (*stats) {
      return cmd_stats(g, stats_grid, stats_boundaries, trace, day_id, date, stats_output, out);
    }
    if (*footprint) {
      return cmd_footprint(g, footprint_inputs, footprint_boundaries, footprint_output, out);
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const NoClusterError& e) {
    err << "error: " << e.what() << "\n";
    return kExitProcessingError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitProcessingError;
  }
  return kExitInputError;
}

}  // namespace tcrain::tools
