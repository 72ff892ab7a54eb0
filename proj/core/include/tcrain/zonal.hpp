#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tcrain/cluster.hpp"
#include "tcrain/grid.hpp"
#include "tcrain/polygons.hpp"
#include "tcrain/projection.hpp"

namespace tcrain {

enum class AreaMode {
  Spherical,  // exact area of the lat/lon cell on the sphere
  Flat,       // (R * cellsize)^2 at every latitude
};

struct AreaModel {
  double sphere_radius_km = kEarthRadiusKm;
  AreaMode mode = AreaMode::Spherical;
};

/// Area of a cell centred at `lat_center` with side `cellsize_deg`.
/// Throws std::domain_error if the cell extends past a pole.
double cell_area_km2(double lat_center, double cellsize_deg, const AreaModel& model = {});

/// Per-cell zone index (-1 = outside every zone), shaped like the grid it was built for.
struct ZoneMap {
  GridHeader header;
  std::vector<std::int32_t> zone;
  std::vector<std::string> zone_names;

  std::int32_t operator()(std::size_t row, std::size_t col) const { return zone[row * header.ncols + col]; }
};

/// Rasterizes `polys` onto the grid's cell centres. Overlaps go to the
/// first zone in file order.
ZoneMap assign_zones(const GridHeader& header, const PolygonSet& polys);
inline ZoneMap assign_zones(const Grid& grid, const PolygonSet& polys) { return assign_zones(grid.header(), polys); }

struct MeanResult {
  std::optional<double> mean_mm;  // absent when no cell is significant
  std::size_t significant_pixels = 0;
};

/// Simple mean over non-nodata cells strictly above `trace_mm`.
MeanResult cluster_mean(const Grid& cluster_grid, double trace_mm);

struct ZoneStats {
  std::string day_id;
  std::string date;
  std::string zone;
  std::optional<double> mean_mm;
  std::optional<double> max_mm;
  std::optional<LatLon> max_point;
  std::size_t significant_pixels = 0;
  double area_km2 = 0.0;
};

/// One entry per zone, in zone order. Only significant cells (value > trace_mm)
/// contribute to mean, max, count and area. Max ties keep the first cell in
/// row-major order. day_id/date are left empty for the caller.
std::vector<ZoneStats> zonal_stats(const Grid& cluster_grid, const ZoneMap& zone_map, double trace_mm,
                                   const AreaModel& model = {});

/// Same aggregation over the cells selected by `include` (all cells when empty).
ZoneStats region_stats(const Grid& cluster_grid, std::span<const std::uint8_t> include, double trace_mm,
                       const AreaModel& model = {});

/// Unweighted mean of the cluster's pixel-centre coordinates.
LatLon cluster_centroid(const Cluster& cluster, const Grid& grid);

struct DayMask {
  std::string day_id;
  BinaryMask mask;
};

struct Footprint {
  BinaryMask mask;
  std::vector<std::string> day_ids;
};

/// Per-cell OR of the daily cluster masks.
Footprint union_footprint(std::span<const DayMask> daily_clusters);

struct FootprintArea {
  double total_km2 = 0.0;
  double zoned_km2 = 0.0;  // footprint cells inside any zone
  std::vector<double> per_zone_km2;
};

FootprintArea footprint_area(const Footprint& footprint, const ZoneMap& zone_map, const AreaModel& model = {});

}  // namespace tcrain
