#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tcrain/format.hpp"

namespace tcrain {

inline constexpr double kDefaultNodata = -9999.0;

enum class Projection {
  Geographic,  // xll/yll/cellsize in degrees
  Sinusoidal,  // xll/yll/cellsize in km on the sinusoidal plane
};

struct LatLon {
  double lat = 0.0;
  double lon = 0.0;

  friend bool operator==(const LatLon&, const LatLon&) = default;
};

struct PixelIndex {
  std::size_t row = 0;
  std::size_t col = 0;

  friend bool operator==(const PixelIndex&, const PixelIndex&) = default;
};

/// Georeferencing of a north-up raster. Row 0 is the northernmost row.
struct GridHeader {
  std::size_t ncols = 0;
  std::size_t nrows = 0;
  double xll = 0.0;
  double yll = 0.0;
  double cellsize = 0.0;
  double nodata = kDefaultNodata;
  Projection projection = Projection::Geographic;

  std::size_t size() const noexcept { return ncols * nrows; }
  double east() const noexcept { return xll + static_cast<double>(ncols) * cellsize; }
  double north() const noexcept { return yll + static_cast<double>(nrows) * cellsize; }

  /// Same shape, origin, cell size and projection. The nodata sentinel is not compared.
  bool same_georeference(const GridHeader& other) const noexcept;

  /// Throws std::invalid_argument when the header breaks a grid invariant.
  void validate() const;

  friend bool operator==(const GridHeader&, const GridHeader&) = default;
};

class Grid {
 public:
  Grid() = default;
  Grid(const GridHeader& header, double fill);
  Grid(const GridHeader& header, std::vector<double> values);

  const GridHeader& header() const noexcept { return header_; }
  std::size_t ncols() const noexcept { return header_.ncols; }
  std::size_t nrows() const noexcept { return header_.nrows; }
  std::size_t size() const noexcept { return values_.size(); }
  double nodata() const noexcept { return header_.nodata; }

  int precision() const noexcept { return precision_; }
  void set_precision(int digits);

  double operator()(std::size_t row, std::size_t col) const { return values_[row * header_.ncols + col]; }
  double& operator()(std::size_t row, std::size_t col) { return values_[row * header_.ncols + col]; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  bool is_nodata(double value) const noexcept { return value == header_.nodata; }
  bool is_nodata(std::size_t row, std::size_t col) const { return is_nodata((*this)(row, col)); }

  /// Header invariants plus non-negative, finite data values.
  void validate() const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  GridHeader header_;
  std::vector<double> values_;
  int precision_ = kDefaultPrecision;
};

}  // namespace tcrain
