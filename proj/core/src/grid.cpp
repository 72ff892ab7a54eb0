#include "tcrain/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace tcrain {

bool GridHeader::same_georeference(const GridHeader& other) const noexcept {
  return ncols == other.ncols && nrows == other.nrows && xll == other.xll && yll == other.yll &&
         cellsize == other.cellsize && projection == other.projection;
}

void GridHeader::validate() const {
  if (ncols == 0 || nrows == 0) {
    throw std::invalid_argument("grid must have at least one row and one column");
  }
  if (!(cellsize > 0.0) || !std::isfinite(cellsize)) {
    throw std::invalid_argument("grid cellsize must be positive");
  }
  if (!std::isfinite(xll) || !std::isfinite(yll)) {
    throw std::invalid_argument("grid origin must be finite");
  }
  if (projection == Projection::Geographic) {
    if (xll < -180.0 || xll >= 180.0) {
      throw std::invalid_argument("xllcorner " + format_shortest(xll) + " outside [-180, 180)");
    }
    if (yll < -90.0 - 1e-9 || north() > 90.0 + 1e-9) {
      throw std::invalid_argument("grid latitude extent outside [-90, 90]");
    }
  }
}

Grid::Grid(const GridHeader& header, double fill) : header_(header) {
  header_.validate();
  values_.assign(header_.size(), fill);
}

Grid::Grid(const GridHeader& header, std::vector<double> values) : header_(header), values_(std::move(values)) {
  header_.validate();
  if (values_.size() != header_.size()) {
    throw std::invalid_argument("grid holds " + std::to_string(values_.size()) + " values, header requires " +
                                std::to_string(header_.size()));
  }
}

void Grid::set_precision(int digits) {
  if (digits < 1 || digits > 17) {
    throw std::invalid_argument("precision must be in 1..17");
  }
  precision_ = digits;
}

void Grid::validate() const {
  header_.validate();
  if (values_.size() != header_.size()) {
    throw std::invalid_argument("value count does not match ncols * nrows");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (is_nodata(v)) {
      continue;
    }
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("invalid precipitation value " + format_shortest(v) + " at row " +
                                  std::to_string(i / header_.ncols) + ", col " + std::to_string(i % header_.ncols));
    }
  }
}

}  // namespace tcrain
