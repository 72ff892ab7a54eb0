#include "tcrain/zonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "tcrain/errors.hpp"

namespace tcrain {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

struct Accumulator {
  double sum = 0.0;
  std::size_t count = 0;
  double area = 0.0;
  double max = 0.0;
  std::size_t max_row = 0;
  std::size_t max_col = 0;

  void add(double value, double cell_area, std::size_t row, std::size_t col) {
    if (count == 0 || value > max) {
      max = value;
      max_row = row;
      max_col = col;
    }
    sum += value;
    area += cell_area;
    ++count;
  }

  ZoneStats finish(const GridHeader& header, std::string zone) const {
    ZoneStats s;
    s.zone = std::move(zone);
    s.significant_pixels = count;
    s.area_km2 = area;
    if (count > 0) {
      s.mean_mm = sum / static_cast<double>(count);
      s.max_mm = max;
      s.max_point = cell_center(header, max_row, max_col);
    }
    return s;
  }
};

std::vector<double> row_areas(const GridHeader& header, const AreaModel& model) {
  std::vector<double> areas(header.nrows);
  for (std::size_t r = 0; r < header.nrows; ++r) {
    areas[r] = cell_area_km2(cell_center(header, r, 0).lat, header.cellsize, model);
  }
  return areas;
}

void check_shapes(const GridHeader& a, const GridHeader& b) {
  if (a.ncols != b.ncols || a.nrows != b.nrows) {
    throw std::invalid_argument("shape mismatch: " + std::to_string(a.nrows) + "x" + std::to_string(a.ncols) +
                                " vs " + std::to_string(b.nrows) + "x" + std::to_string(b.ncols));
  }
}

// Crossing abscissae of one polygon with the horizontal line at `lat`,
// computed exactly as polygon_contains does so both agree bit for bit.
void crossings(const Polygon& polygon, double lat, std::vector<double>& xs) {
  xs.clear();
  for (const Ring& ring : polygon.rings) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      const LonLatVertex& a = ring[i];
      const LonLatVertex& b = ring[j];
      if ((a.lat > lat) != (b.lat > lat)) {
        xs.push_back(a.lon + (lat - a.lat) * (b.lon - a.lon) / (b.lat - a.lat));
      }
    }
  }
  std::sort(xs.begin(), xs.end());
}

struct LatRange {
  double south = 0.0;
  double north = 0.0;
};

LatRange polygon_lat_range(const Polygon& polygon) {
  LatRange range{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const Ring& ring : polygon.rings) {
    for (const LonLatVertex& v : ring) {
      range.south = std::min(range.south, v.lat);
      range.north = std::max(range.north, v.lat);
    }
  }
  return range;
}

}  // namespace

double cell_area_km2(double lat_center, double cellsize_deg, const AreaModel& model) {
  if (!(model.sphere_radius_km > 0.0)) {
    throw std::invalid_argument("sphere radius must be positive");
  }
  if (!(cellsize_deg > 0.0)) {
    throw std::invalid_argument("cellsize must be positive");
  }
  if (std::abs(lat_center) + cellsize_deg / 2.0 > 90.0 + 1e-9) {
    throw std::domain_error("cell at latitude " + std::to_string(lat_center) + " extends past the pole");
  }
  const double r = model.sphere_radius_km;
  const double delta = cellsize_deg * kDegToRad;
  if (model.mode == AreaMode::Flat) {
    return (r * delta) * (r * delta);
  }
  // sin(top) - sin(bottom) written as 2 cos(centre) sin(delta / 2).
  const double band = 2.0 * std::cos(lat_center * kDegToRad) * std::sin(delta / 2.0);
  return r * r * delta * std::max(band, 0.0);
}

ZoneMap assign_zones(const GridHeader& header, const PolygonSet& polys) {
  ZoneMap map;
  map.header = header;
  map.zone.assign(header.size(), -1);
  for (const Zone& zone : polys.zones) {
    map.zone_names.push_back(zone.name);
  }

  std::vector<double> lons(header.ncols);
  for (std::size_t c = 0; c < header.ncols; ++c) {
    lons[c] = cell_center(header, 0, c).lon;
  }
  std::vector<std::vector<LatRange>> ranges;
  for (const Zone& zone : polys.zones) {
    auto& zr = ranges.emplace_back();
    for (const Polygon& p : zone.polygons) {
      zr.push_back(polygon_lat_range(p));
    }
  }

  std::vector<double> xs;
  for (std::size_t r = 0; r < header.nrows; ++r) {
    const double lat = cell_center(header, r, 0).lat;
    std::int32_t* row = map.zone.data() + r * header.ncols;
    for (std::size_t z = 0; z < polys.zones.size(); ++z) {
      const Zone& zone = polys.zones[z];
      for (std::size_t p = 0; p < zone.polygons.size(); ++p) {
        if (lat < ranges[z][p].south || lat > ranges[z][p].north) {
          continue;
        }
        crossings(zone.polygons[p], lat, xs);
        if (xs.empty()) {
          continue;
        }
        // A cell is inside when an odd number of crossings lie strictly east of its centre.
        std::size_t at_or_west = 0;
        for (std::size_t c = 0; c < header.ncols; ++c) {
          while (at_or_west < xs.size() && xs[at_or_west] <= lons[c]) {
            ++at_or_west;
          }
          const std::size_t east = xs.size() - at_or_west;
          if (row[c] == -1 && (east % 2) == 1) {
            row[c] = static_cast<std::int32_t>(z);
          }
        }
      }
    }
  }
  return map;
}

MeanResult cluster_mean(const Grid& cluster_grid, double trace_mm) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const double v : cluster_grid.values()) {
    if (!cluster_grid.is_nodata(v) && v > trace_mm) {
      sum += v;
      ++count;
    }
  }
  MeanResult result;
  result.significant_pixels = count;
  if (count > 0) {
    result.mean_mm = sum / static_cast<double>(count);
  }
  return result;
}

std::vector<ZoneStats> zonal_stats(const Grid& cluster_grid, const ZoneMap& zone_map, double trace_mm,
                                   const AreaModel& model) {
  const GridHeader& h = cluster_grid.header();
  check_shapes(h, zone_map.header);
  const auto areas = row_areas(h, model);
  std::vector<Accumulator> acc(zone_map.zone_names.size());
  for (std::size_t r = 0; r < h.nrows; ++r) {
    for (std::size_t c = 0; c < h.ncols; ++c) {
      const std::int32_t z = zone_map(r, c);
      if (z < 0) {
        continue;
      }
      const double v = cluster_grid(r, c);
      if (!cluster_grid.is_nodata(v) && v > trace_mm) {
        acc[static_cast<std::size_t>(z)].add(v, areas[r], r, c);
      }
    }
  }
  std::vector<ZoneStats> out;
  out.reserve(acc.size());
  for (std::size_t z = 0; z < acc.size(); ++z) {
    out.push_back(acc[z].finish(h, zone_map.zone_names[z]));
  }
  return out;
}

ZoneStats region_stats(const Grid& cluster_grid, std::span<const std::uint8_t> include, double trace_mm,
                       const AreaModel& model) {
  const GridHeader& h = cluster_grid.header();
  if (!include.empty() && include.size() != h.size()) {
    throw std::invalid_argument("shape mismatch: region selector size differs from grid");
  }
  const auto areas = row_areas(h, model);
  Accumulator acc;
  for (std::size_t r = 0; r < h.nrows; ++r) {
    for (std::size_t c = 0; c < h.ncols; ++c) {
      if (!include.empty() && include[r * h.ncols + c] == 0) {
        continue;
      }
      const double v = cluster_grid(r, c);
      if (!cluster_grid.is_nodata(v) && v > trace_mm) {
        acc.add(v, areas[r], r, c);
      }
    }
  }
  return acc.finish(h, "");
}

LatLon cluster_centroid(const Cluster& cluster, const Grid& grid) {
  if (cluster.pixels.empty()) {
    throw std::invalid_argument("centroid of an empty cluster");
  }
  double lat = 0.0;
  double lon = 0.0;
  for (const PixelIndex& p : cluster.pixels) {
    const LatLon center = cell_center(grid, p.row, p.col);
    lat += center.lat;
    lon += center.lon;
  }
  const auto n = static_cast<double>(cluster.pixels.size());
  return {lat / n, lon / n};
}

Footprint union_footprint(std::span<const DayMask> daily_clusters) {
  if (daily_clusters.empty()) {
    throw std::invalid_argument("footprint needs at least one daily mask");
  }
  const GridHeader& header = daily_clusters.front().mask.header();
  std::vector<std::uint8_t> bits(header.size(), 0);
  Footprint fp;
  for (const DayMask& day : daily_clusters) {
    if (!day.mask.header().same_georeference(header)) {
      throw GeoreferenceMismatch("mask for " + day.day_id + " does not match the footprint georeferencing");
    }
    const auto& src = day.mask.bits();
    for (std::size_t i = 0; i < bits.size(); ++i) {
      bits[i] |= src[i] != 0 ? 1 : 0;
    }
    fp.day_ids.push_back(day.day_id);
  }
  fp.mask = BinaryMask(header, std::move(bits));
  return fp;
}

FootprintArea footprint_area(const Footprint& footprint, const ZoneMap& zone_map, const AreaModel& model) {
  const GridHeader& h = footprint.mask.header();
  check_shapes(h, zone_map.header);
  const auto areas = row_areas(h, model);
  FootprintArea out;
  out.per_zone_km2.assign(zone_map.zone_names.size(), 0.0);
  for (std::size_t r = 0; r < h.nrows; ++r) {
    for (std::size_t c = 0; c < h.ncols; ++c) {
      if (!footprint.mask(r, c)) {
        continue;
      }
      out.total_km2 += areas[r];
      const std::int32_t z = zone_map(r, c);
      if (z >= 0) {
        out.zoned_km2 += areas[r];
        out.per_zone_km2[static_cast<std::size_t>(z)] += areas[r];
      }
    }
  }
  return out;
}

}  // namespace tcrain
