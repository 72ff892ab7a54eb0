#include "tcrain/projection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tcrain {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

void check_radius(const SinusoidalParams& params) {
  if (!(params.sphere_radius_km > 0.0)) {
    throw std::invalid_argument("sphere radius must be positive");
  }
}

std::size_t cells_spanning(double extent, double cellsize) {
  const double n = extent / cellsize;
  const double rounded = std::round(n);
  // Accept extents that are a whole number of cells up to rounding noise.
  if (std::abs(n - rounded) < 1e-6) {
    return static_cast<std::size_t>(rounded);
  }
  return static_cast<std::size_t>(std::ceil(n));
}

}  // namespace

void GeoBounds::validate() const {
  if (!(west < east) || !(south < north)) {
    throw std::invalid_argument("bounds require west < east and south < north");
  }
  if (west < -180.0 || east > 180.0 || south < -90.0 || north > 90.0) {
    throw std::invalid_argument("bounds outside [-180, 180] x [-90, 90]");
  }
}

SinusoidalPoint sinu_forward(double lat_deg, double lon_deg, const SinusoidalParams& params) {
  check_radius(params);
  const double phi = lat_deg * kDegToRad;
  const double lambda = lon_deg * kDegToRad;
  return {params.sphere_radius_km * lambda * std::cos(phi), params.sphere_radius_km * phi};
}

LatLon sinu_inverse(double x_km, double y_km, const SinusoidalParams& params) {
  check_radius(params);
  const double r = params.sphere_radius_km;
  const double y_max = r * std::numbers::pi / 2.0;
  if (std::abs(y_km) > y_max * (1.0 + 1e-12)) {
    throw std::domain_error("sinusoidal y " + std::to_string(y_km) + " km beyond the pole");
  }
  const double phi = std::clamp(y_km / r, -std::numbers::pi / 2.0, std::numbers::pi / 2.0);
  const double cos_phi = std::cos(phi);
  if (std::abs(y_km) >= y_max * (1.0 - 1e-15) || cos_phi < 1e-15) {
    return {phi > 0 ? 90.0 : -90.0, 0.0};
  }
  return {phi * kRadToDeg, x_km / (r * cos_phi) * kRadToDeg};
}

LatLon cell_center(const GridHeader& header, std::size_t row, std::size_t col) {
  if (row >= header.nrows || col >= header.ncols) {
    throw std::out_of_range("cell (" + std::to_string(row) + ", " + std::to_string(col) + ") outside grid");
  }
  const double lon = header.xll + (static_cast<double>(col) + 0.5) * header.cellsize;
  const double lat = header.yll + (static_cast<double>(header.nrows - row) - 0.5) * header.cellsize;
  return {lat, lon};
}

LatLon cell_center(const Grid& grid, std::size_t row, std::size_t col) {
  return cell_center(grid.header(), row, col);
}

Grid reproject_to_geographic(const Grid& source, const GeoBounds& target, double cellsize_deg,
                             const SinusoidalParams& params) {
  target.validate();
  check_radius(params);
  if (!(cellsize_deg > 0.0)) {
    throw std::invalid_argument("target cellsize must be positive");
  }
  const GridHeader& src = source.header();
  if (src.projection != Projection::Sinusoidal) {
    throw std::invalid_argument("reprojection source must be a sinusoidal grid");
  }
  if (src.ncols == 0 || src.nrows == 0 || !(src.cellsize > 0.0)) {
    throw std::invalid_argument("degenerate source extent");
  }

  GridHeader header;
  header.ncols = cells_spanning(target.east - target.west, cellsize_deg);
  header.nrows = cells_spanning(target.north - target.south, cellsize_deg);
  header.xll = target.west;
  header.yll = target.south;
  header.cellsize = cellsize_deg;
  header.nodata = src.nodata;
  header.projection = Projection::Geographic;

  Grid out(header, header.nodata);
  out.set_precision(source.precision());
  const double top = src.north();
  for (std::size_t r = 0; r < header.nrows; ++r) {
    for (std::size_t c = 0; c < header.ncols; ++c) {
      const LatLon center = cell_center(header, r, c);
      const SinusoidalPoint p = sinu_forward(center.lat, center.lon, params);
      const double fc = std::floor((p.x_km - src.xll) / src.cellsize);
      const double fr = std::floor((top - p.y_km) / src.cellsize);
      if (fc < 0.0 || fr < 0.0 || fc >= static_cast<double>(src.ncols) || fr >= static_cast<double>(src.nrows)) {
        continue;
      }
      const double v = source(static_cast<std::size_t>(fr), static_cast<std::size_t>(fc));
      if (!source.is_nodata(v)) {
        out(r, c) = v;
      }
    }
  }
  return out;
}

Grid subset(const Grid& grid, const GeoBounds& bounds) {
  if (!(bounds.west < bounds.east) || !(bounds.south < bounds.north)) {
    throw std::invalid_argument("bounds require west < east and south < north");
  }
  const GridHeader& h = grid.header();

  std::size_t col_begin = h.ncols;
  std::size_t col_end = 0;
  for (std::size_t c = 0; c < h.ncols; ++c) {
    const double lon = cell_center(h, 0, c).lon;
    if (lon >= bounds.west && lon <= bounds.east) {
      col_begin = std::min(col_begin, c);
      col_end = c + 1;
    }
  }
  std::size_t row_begin = h.nrows;
  std::size_t row_end = 0;
  for (std::size_t r = 0; r < h.nrows; ++r) {
    const double lat = cell_center(h, r, 0).lat;
    if (lat >= bounds.south && lat <= bounds.north) {
      row_begin = std::min(row_begin, r);
      row_end = r + 1;
    }
  }
  if (col_begin >= col_end || row_begin >= row_end) {
    throw std::invalid_argument("bounds do not intersect the grid");
  }

  GridHeader out_header = h;
  out_header.ncols = col_end - col_begin;
  out_header.nrows = row_end - row_begin;
  out_header.xll = h.xll + static_cast<double>(col_begin) * h.cellsize;
  out_header.yll = h.yll + static_cast<double>(h.nrows - row_end) * h.cellsize;

  std::vector<double> values;
  values.reserve(out_header.size());
  for (std::size_t r = row_begin; r < row_end; ++r) {
    for (std::size_t c = col_begin; c < col_end; ++c) {
      values.push_back(grid(r, c));
    }
  }
  Grid out(out_header, std::move(values));
  out.set_precision(grid.precision());
  return out;
}

}  // namespace tcrain
