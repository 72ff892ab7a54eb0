#pragma once

#include <cstddef>

#include "tcrain/grid.hpp"

namespace tcrain {

inline constexpr double kEarthRadiusKm = 6371.0;

struct SinusoidalParams {
  double sphere_radius_km = kEarthRadiusKm;
};

struct SinusoidalPoint {
  double x_km = 0.0;
  double y_km = 0.0;
};

/// Geographic rectangle. west < east, south < north, no antimeridian crossing.
struct GeoBounds {
  double west = 0.0;
  double east = 0.0;
  double south = 0.0;
  double north = 0.0;

  void validate() const;

  friend bool operator==(const GeoBounds&, const GeoBounds&) = default;
};

/// x = R * lon * cos(lat), y = R * lat, angles in radians.
SinusoidalPoint sinu_forward(double lat_deg, double lon_deg, const SinusoidalParams& params = {});

/// Inverse of sinu_forward. At the poles the longitude is reported as 0.
/// Throws std::domain_error when |y| exceeds R * pi / 2.
LatLon sinu_inverse(double x_km, double y_km, const SinusoidalParams& params = {});

/// Centre of a cell in the grid's own units (degrees for geographic grids).
LatLon cell_center(const GridHeader& header, std::size_t row, std::size_t col);
LatLon cell_center(const Grid& grid, std::size_t row, std::size_t col);

/// Nearest-neighbour warp of a sinusoidal grid onto a regular lat/lon grid
/// covering `target`. Target cells whose centre maps outside the source are nodata.
Grid reproject_to_geographic(const Grid& source, const GeoBounds& target, double cellsize_deg,
                             const SinusoidalParams& params = {});

/// Rows and columns whose cell centres fall inside `bounds` (inclusive).
Grid subset(const Grid& grid, const GeoBounds& bounds);

}  // namespace tcrain
