#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tcrain/grid.hpp"
#include "tcrain/projection.hpp"

namespace tcrain {

enum class Connectivity : int { Four = 4, Eight = 8 };

/// Thresholds for one day of extraction.
///
/// `threshold_mm` builds the rain mask (cells strictly above it are kept);
/// `trace_mm` is the cut-off below which rainfall is ignored by the
/// statistics. The two serve different stages and are not ordered.
struct MaskConfig {
  double threshold_mm = 0.9;
  double trace_mm = 0.1;
  Connectivity connectivity = Connectivity::Four;

  void validate() const;
};

/// Thresholded raster with the georeferencing of its source grid.
class BinaryMask {
 public:
  BinaryMask() = default;
  explicit BinaryMask(const GridHeader& header);
  BinaryMask(const GridHeader& header, std::vector<std::uint8_t> bits);

  const GridHeader& header() const noexcept { return header_; }
  std::size_t ncols() const noexcept { return header_.ncols; }
  std::size_t nrows() const noexcept { return header_.nrows; }
  std::size_t size() const noexcept { return bits_.size(); }

  bool operator()(std::size_t row, std::size_t col) const { return bits_[row * header_.ncols + col] != 0; }
  void set(std::size_t row, std::size_t col, bool value) { bits_[row * header_.ncols + col] = value ? 1 : 0; }

  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  std::size_t count() const noexcept;

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  GridHeader header_;
  std::vector<std::uint8_t> bits_;
};

/// Connected-component labels. 0 is background; components are numbered
/// 1..component_count in order of their first pixel in row-major order.
struct LabeledGrid {
  std::size_t nrows = 0;
  std::size_t ncols = 0;
  std::vector<std::int32_t> labels;
  std::int32_t component_count = 0;
  /// Pixel count per label; index 0 (background) is always 0.
  std::vector<std::size_t> component_sizes;

  std::int32_t operator()(std::size_t row, std::size_t col) const { return labels[row * ncols + col]; }
};

/// The component attributed to the cyclone on one day.
struct Cluster {
  std::int32_t label = 0;
  std::vector<PixelIndex> pixels;  // row-major order
  std::string source_day;
};

struct PixelCounts {
  std::size_t mask_count = 0;
  std::size_t cluster_count = 0;
};

/// bit = value is not nodata and value > threshold_mm.
BinaryMask make_mask(const Grid& grid, double threshold_mm);

/// Two-pass labeling with a union-find equivalence table.
LabeledGrid label_components(const BinaryMask& mask, Connectivity connectivity = Connectivity::Four);

/// All pixels carrying `label`. Throws std::out_of_range for an unknown label.
Cluster component_pixels(const LabeledGrid& labeled, std::int32_t label);

/// Picks the component belonging to the cyclone whose centre is `fix`.
///
/// If the cell under the fix is labeled, that component wins. Otherwise the
/// component whose nearest pixel centre is closest to the fix (haversine on
/// a sphere of `sphere_radius_km`) is chosen; ties go to the larger
/// component, then to the smaller label. Throws NoClusterError when the
/// labeling is empty.
Cluster select_cyclone_cluster(const LabeledGrid& labeled, const LatLon& fix, const Grid& grid,
                               double sphere_radius_km = kEarthRadiusKm);

/// Copy of `grid` keeping only the cluster's cells; everything else becomes nodata.
Grid extract_cluster_grid(const Grid& grid, const Cluster& cluster);

BinaryMask cluster_mask(const GridHeader& header, const Cluster& cluster);

PixelCounts pixel_counts(const BinaryMask& mask, const Cluster& cluster);

/// Great-circle distance in km.
double haversine_km(const LatLon& a, const LatLon& b, double sphere_radius_km = kEarthRadiusKm);

}  // namespace tcrain
