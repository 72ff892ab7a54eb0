#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tcrain/grid.hpp"

namespace tcrain {

/// Isotropic Gaussian rain blob in degree space.
struct BlobSpec {
  std::string id;
  LatLon center;
  double amplitude_mm = 0.0;
  double sigma_deg = 0.0;

  void validate() const;
};

struct GridSpec {
  std::size_t ncols = 0;
  std::size_t nrows = 0;
  double xll = 0.0;
  double yll = 0.0;
  double cellsize = 0.0;

  GridHeader header() const;
};

struct SynthField {
  Grid grid;
  /// Index into the blob list of the largest contribution per cell.
  std::vector<std::int32_t> owner;
};

/// value = sum of amplitude * exp(-d^2 / (2 sigma^2)), d the planar degree
/// distance from the cell centre to the blob centre.
SynthField render_field(std::span<const BlobSpec> blobs, const GridSpec& spec);

/// Area in degree^2 of the disk where a lone blob exceeds `threshold_mm`.
double analytic_disk_area_deg2(const BlobSpec& blob, double threshold_mm);

/// Ground-truth JSON: blob specs with owned cell counts and, when a
/// threshold is given, owned super-threshold cell counts and sums.
std::string synth_sidecar_json(std::span<const BlobSpec> blobs, const SynthField& field,
                               std::optional<double> threshold_mm);

}  // namespace tcrain
