#include "tcrain/synth.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "tcrain/projection.hpp"

namespace tcrain {

void BlobSpec::validate() const {
  if (!(amplitude_mm > 0.0)) {
    throw std::invalid_argument("blob '" + id + "': amplitude_mm must be positive");
  }
  if (!(sigma_deg > 0.0)) {
    throw std::invalid_argument("blob '" + id + "': sigma_deg must be positive");
  }
}

GridHeader GridSpec::header() const {
  GridHeader h;
  h.ncols = ncols;
  h.nrows = nrows;
  h.xll = xll;
  h.yll = yll;
  h.cellsize = cellsize;
  h.validate();
  return h;
}

SynthField render_field(std::span<const BlobSpec> blobs, const GridSpec& spec) {
  if (blobs.empty()) {
    throw std::invalid_argument("render_field needs at least one blob");
  }
  for (const BlobSpec& b : blobs) {
    b.validate();
  }
  const GridHeader header = spec.header();
  SynthField field{Grid(header, 0.0), std::vector<std::int32_t>(header.size(), -1)};
  for (std::size_t r = 0; r < header.nrows; ++r) {
    for (std::size_t c = 0; c < header.ncols; ++c) {
      const LatLon center = cell_center(header, r, c);
      double total = 0.0;
      double best = 0.0;
      std::int32_t owner = -1;
      for (std::size_t i = 0; i < blobs.size(); ++i) {
        const BlobSpec& b = blobs[i];
        const double dlat = center.lat - b.center.lat;
        const double dlon = center.lon - b.center.lon;
        const double d2 = dlat * dlat + dlon * dlon;
        const double contribution = b.amplitude_mm * std::exp(-d2 / (2.0 * b.sigma_deg * b.sigma_deg));
        total += contribution;
        if (contribution > best) {
          best = contribution;
          owner = static_cast<std::int32_t>(i);
        }
      }
      field.grid(r, c) = total;
      field.owner[r * header.ncols + c] = owner;
    }
  }
  return field;
}

double analytic_disk_area_deg2(const BlobSpec& blob, double threshold_mm) {
  blob.validate();
  if (!(threshold_mm > 0.0) || threshold_mm >= blob.amplitude_mm) {
    return 0.0;
  }
  return std::numbers::pi * blob.sigma_deg * blob.sigma_deg * 2.0 * std::log(blob.amplitude_mm / threshold_mm);
}

std::string synth_sidecar_json(std::span<const BlobSpec> blobs, const SynthField& field,
                               std::optional<double> threshold_mm) {
  using nlohmann::json;
  const GridHeader& h = field.grid.header();
  json doc;
  doc["grid"] = {{"ncols", h.ncols}, {"nrows", h.nrows}, {"xll", h.xll},
                 {"yll", h.yll},     {"cellsize", h.cellsize}};
  doc["threshold_mm"] = threshold_mm ? json(*threshold_mm) : json(nullptr);

  std::vector<std::size_t> owned(blobs.size(), 0);
  std::vector<std::size_t> above(blobs.size(), 0);
  std::vector<double> above_sum(blobs.size(), 0.0);
  const auto values = field.grid.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::int32_t o = field.owner[i];
    if (o < 0) {
      continue;
    }
    const auto idx = static_cast<std::size_t>(o);
    ++owned[idx];
    if (threshold_mm && values[i] > *threshold_mm) {
      ++above[idx];
      above_sum[idx] += values[i];
    }
  }

  json list = json::array();
  for (std::size_t i = 0; i < blobs.size(); ++i) {
    const BlobSpec& b = blobs[i];
    json entry = {{"id", b.id},
                  {"center", {{"lat", b.center.lat}, {"lon", b.center.lon}}},
                  {"amplitude_mm", b.amplitude_mm},
                  {"sigma_deg", b.sigma_deg},
                  {"owned_cells", owned[i]}};
    if (threshold_mm) {
      entry["super_threshold_cells"] = above[i];
      entry["super_threshold_sum_mm"] = above_sum[i];
    }
    list.push_back(std::move(entry));
  }
  doc["blobs"] = std::move(list);
  return doc.dump(2) + "\n";
}

}  // namespace tcrain
