#include "tcrain/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "tcrain/errors.hpp"

namespace tcrain {
namespace {

// Equivalence table for provisional labels. The root of a set is always its
// smallest label.
class UnionFind {
 public:
  UnionFind() { parent_.push_back(0); }

  std::int32_t make_set() {
    const auto label = static_cast<std::int32_t>(parent_.size());
    parent_.push_back(label);
    return label;
  }

  std::int32_t find(std::int32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  std::int32_t merge(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) {
      return a;
    }
    if (b < a) {
      std::swap(a, b);
    }
    parent_[b] = a;
    return a;
  }

 private:
  std::vector<std::int32_t> parent_;
};

}  // namespace

void MaskConfig::validate() const {
  if (!(threshold_mm > 0.0)) {
    throw std::invalid_argument("threshold_mm must be positive");
  }
  if (!(trace_mm >= 0.0)) {
    throw std::invalid_argument("trace_mm must be non-negative");
  }
  if (connectivity != Connectivity::Four && connectivity != Connectivity::Eight) {
    throw std::invalid_argument("connectivity must be 4 or 8");
  }
}

BinaryMask::BinaryMask(const GridHeader& header) : header_(header), bits_(header.size(), 0) {}

BinaryMask::BinaryMask(const GridHeader& header, std::vector<std::uint8_t> bits)
    : header_(header), bits_(std::move(bits)) {
  if (bits_.size() != header_.size()) {
    throw std::invalid_argument("mask size does not match its header");
  }
}

std::size_t BinaryMask::count() const noexcept {
  return static_cast<std::size_t>(std::count_if(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b != 0; }));
}

BinaryMask make_mask(const Grid& grid, double threshold_mm) {
  BinaryMask mask(grid.header());
  const auto values = grid.values();
  for (std::size_t r = 0; r < grid.nrows(); ++r) {
    for (std::size_t c = 0; c < grid.ncols(); ++c) {
      const double v = values[r * grid.ncols() + c];
      if (!grid.is_nodata(v) && v > threshold_mm) {
        mask.set(r, c, true);
      }
    }
  }
  return mask;
}

LabeledGrid label_components(const BinaryMask& mask, Connectivity connectivity) {
  if (connectivity != Connectivity::Four && connectivity != Connectivity::Eight) {
    throw std::invalid_argument("connectivity must be 4 or 8");
  }
  const bool diagonal = connectivity == Connectivity::Eight;
  const std::size_t rows = mask.nrows();
  const std::size_t cols = mask.ncols();

  LabeledGrid out;
  out.nrows = rows;
  out.ncols = cols;
  out.labels.assign(rows * cols, 0);
  auto& labels = out.labels;

  // First pass: provisional labels from the already-visited neighbours
  // (W, N and, for 8-connectivity, NW and NE), recording equivalences.
  UnionFind sets;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (!mask(r, c)) {
        continue;
      }
      std::int32_t label = 0;
      const auto visit = [&](std::size_t nr, std::size_t nc) {
        const std::int32_t neighbour = labels[nr * cols + nc];
        if (neighbour == 0) {
          return;
        }
        label = label == 0 ? neighbour : sets.merge(label, neighbour);
      };
      if (c > 0) {
        visit(r, c - 1);
      }
      if (r > 0) {
        visit(r - 1, c);
        if (diagonal) {
          if (c > 0) {
            visit(r - 1, c - 1);
          }
          if (c + 1 < cols) {
            visit(r - 1, c + 1);
          }
        }
      }
      labels[r * cols + c] = label == 0 ? sets.make_set() : label;
    }
  }

  // Second pass: resolve to roots and renumber by first appearance.
  std::vector<std::int32_t> final_label;
  out.component_sizes.assign(1, 0);
  for (auto& label : labels) {
    if (label == 0) {
      continue;
    }
    const auto root = static_cast<std::size_t>(sets.find(label));
    if (root >= final_label.size()) {
      final_label.resize(root + 1, 0);
    }
    if (final_label[root] == 0) {
      final_label[root] = ++out.component_count;
      out.component_sizes.push_back(0);
    }
    label = final_label[root];
    ++out.component_sizes[static_cast<std::size_t>(label)];
  }
  return out;
}

Cluster component_pixels(const LabeledGrid& labeled, std::int32_t label) {
  if (label < 1 || label > labeled.component_count) {
    throw std::out_of_range("no component with label " + std::to_string(label));
  }
  Cluster cluster;
  cluster.label = label;
  cluster.pixels.reserve(labeled.component_sizes[static_cast<std::size_t>(label)]);
  for (std::size_t i = 0; i < labeled.labels.size(); ++i) {
    if (labeled.labels[i] == label) {
      cluster.pixels.push_back({i / labeled.ncols, i % labeled.ncols});
    }
  }
  return cluster;
}

double haversine_km(const LatLon& a, const LatLon& b, double sphere_radius_km) {
  constexpr double kDegToRad = std::numbers::pi / 180.0;
  const double phi1 = a.lat * kDegToRad;
  const double phi2 = b.lat * kDegToRad;
  const double dphi = phi2 - phi1;
  const double dlambda = (b.lon - a.lon) * kDegToRad;
  const double s = std::sin(dphi / 2.0);
  const double t = std::sin(dlambda / 2.0);
  const double h = std::clamp(s * s + std::cos(phi1) * std::cos(phi2) * t * t, 0.0, 1.0);
  return 2.0 * sphere_radius_km * std::asin(std::sqrt(h));
}

Cluster select_cyclone_cluster(const LabeledGrid& labeled, const LatLon& fix, const Grid& grid,
                               double sphere_radius_km) {
  if (labeled.component_count == 0) {
    throw NoClusterError("no precipitation cluster on this day");
  }
  const GridHeader& h = grid.header();
  if (labeled.nrows != h.nrows || labeled.ncols != h.ncols) {
    throw std::invalid_argument("labeling and grid shapes differ");
  }

  const double fc = std::floor((fix.lon - h.xll) / h.cellsize);
  const double fr = std::floor((h.north() - fix.lat) / h.cellsize);
  if (fc >= 0.0 && fr >= 0.0 && fc < static_cast<double>(h.ncols) && fr < static_cast<double>(h.nrows)) {
    const std::int32_t hit = labeled(static_cast<std::size_t>(fr), static_cast<std::size_t>(fc));
    if (hit != 0) {
      return component_pixels(labeled, hit);
    }
  }

  std::vector<double> nearest(static_cast<std::size_t>(labeled.component_count) + 1,
                              std::numeric_limits<double>::infinity());
  for (std::size_t r = 0; r < h.nrows; ++r) {
    const double lat = h.yll + (static_cast<double>(h.nrows - r) - 0.5) * h.cellsize;
    for (std::size_t c = 0; c < h.ncols; ++c) {
      const std::int32_t label = labeled(r, c);
      if (label == 0) {
        continue;
      }
      const double lon = h.xll + (static_cast<double>(c) + 0.5) * h.cellsize;
      auto& best = nearest[static_cast<std::size_t>(label)];
      best = std::min(best, haversine_km(fix, {lat, lon}, sphere_radius_km));
    }
  }

  // Distances within 1e-9 km are treated as equal so the documented
  // tie-break is not defeated by rounding in the pixel-centre coordinates.
  constexpr double kTieKm = 1e-9;
  std::int32_t best_label = 1;
  for (std::int32_t label = 2; label <= labeled.component_count; ++label) {
    const double d = nearest[static_cast<std::size_t>(label)];
    const double best_d = nearest[static_cast<std::size_t>(best_label)];
    if (d < best_d - kTieKm) {
      best_label = label;
    } else if (std::abs(d - best_d) <= kTieKm &&
               labeled.component_sizes[static_cast<std::size_t>(label)] >
                   labeled.component_sizes[static_cast<std::size_t>(best_label)]) {
      best_label = label;
    }
  }
  return component_pixels(labeled, best_label);
}

Grid extract_cluster_grid(const Grid& grid, const Cluster& cluster) {
  Grid out(grid.header(), grid.nodata());
  out.set_precision(grid.precision());
  for (const PixelIndex& p : cluster.pixels) {
    if (p.row >= grid.nrows() || p.col >= grid.ncols()) {
      throw std::out_of_range("cluster pixel outside grid");
    }
    out(p.row, p.col) = grid(p.row, p.col);
  }
  return out;
}

BinaryMask cluster_mask(const GridHeader& header, const Cluster& cluster) {
  BinaryMask mask(header);
  for (const PixelIndex& p : cluster.pixels) {
    mask.set(p.row, p.col, true);
  }
  return mask;
}

PixelCounts pixel_counts(const BinaryMask& mask, const Cluster& cluster) {
  return {mask.count(), cluster.pixels.size()};
}

}  // namespace tcrain
