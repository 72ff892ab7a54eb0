#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

namespace oracle {

std::vector<int> flood_fill(const std::vector<std::uint8_t>& bits, std::size_t rows, std::size_t cols,
                            int connectivity) {
  std::vector<int> label(rows * cols, 0);
  int next = 0;
  std::deque<std::size_t> queue;
  for (std::size_t start = 0; start < bits.size(); ++start) {
    if (!bits[start] || label[start] != 0) {
      continue;
    }
    label[start] = ++next;
    queue.push_back(start);
    while (!queue.empty()) {
      const std::size_t cur = queue.front();
      queue.pop_front();
      const long r = static_cast<long>(cur / cols);
      const long c = static_cast<long>(cur % cols);
      for (long dr = -1; dr <= 1; ++dr) {
        for (long dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) {
            continue;
          }
          if (connectivity == 4 && dr != 0 && dc != 0) {
            continue;
          }
          const long nr = r + dr;
          const long nc = c + dc;
          if (nr < 0 || nc < 0 || nr >= static_cast<long>(rows) || nc >= static_cast<long>(cols)) {
            continue;
          }
          const std::size_t idx = static_cast<std::size_t>(nr) * cols + static_cast<std::size_t>(nc);
          if (bits[idx] && label[idx] == 0) {
            label[idx] = next;
            queue.push_back(idx);
          }
        }
      }
    }
  }
  return label;
}

bool same_partition(const std::vector<int>& a, const std::vector<std::int32_t>& b) {
  if (a.size() != b.size()) {
    return false;
  }
  std::map<int, std::int32_t> forward;
  std::map<std::int32_t, int> backward;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] == 0) != (b[i] == 0)) {
      return false;
    }
    if (a[i] == 0) {
      continue;
    }
    const auto [f, f_new] = forward.emplace(a[i], b[i]);
    const auto [g, g_new] = backward.emplace(b[i], a[i]);
    if (f->second != b[i] || g->second != a[i]) {
      return false;
    }
  }
  return true;
}

int winding_number(const tcrain::Ring& ring, double x, double y) {
  int wn = 0;
  for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
    const auto& p = ring[i];
    const auto& q = ring[i + 1];
    const double cross = (q.lon - p.lon) * (y - p.lat) - (x - p.lon) * (q.lat - p.lat);
    if (p.lat <= y) {
      if (q.lat > y && cross > 0) {
        ++wn;
      }
    } else if (q.lat <= y && cross < 0) {
      --wn;
    }
  }
  return wn;
}

double distance_to_ring(const tcrain::Ring& ring, double x, double y) {
  double best = INFINITY;
  for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
    const double ax = ring[i].lon, ay = ring[i].lat;
    const double bx = ring[i + 1].lon, by = ring[i + 1].lat;
    const double dx = bx - ax, dy = by - ay;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? ((x - ax) * dx + (y - ay) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, std::hypot(x - (ax + t * dx), y - (ay + t * dy)));
  }
  return best;
}

double sphere_cell_area(double lat_center, double cellsize, double radius) {
  const double d2r = M_PI / 180.0;
  const double top = (lat_center + cellsize / 2.0) * d2r;
  const double bottom = (lat_center - cellsize / 2.0) * d2r;
  return radius * radius * (cellsize * d2r) * (std::sin(top) - std::sin(bottom));
}

std::vector<BruteStats> brute_zonal(const tcrain::Grid& grid, const std::vector<Rect>& rects, double trace,
                                    double radius, bool flat) {
  std::vector<BruteStats> out(rects.size());
  std::vector<double> sums(rects.size(), 0.0);
  const auto& h = grid.header();
  for (std::size_t r = 0; r < h.nrows; ++r) {
    for (std::size_t c = 0; c < h.ncols; ++c) {
      const double lon = h.xll + h.cellsize * (static_cast<double>(c) + 0.5);
      const double lat = h.yll + h.cellsize * (static_cast<double>(h.nrows) - static_cast<double>(r) - 0.5);
      std::optional<std::size_t> zone;
      for (std::size_t z = 0; z < rects.size(); ++z) {
        const Rect& q = rects[z];
        if (lon > q.west && lon < q.east && lat > q.south && lat < q.north) {
          zone = z;
          break;
        }
      }
      const double v = grid(r, c);
      if (!zone || v == h.nodata || !(v > trace)) {
        continue;
      }
      BruteStats& s = out[*zone];
      sums[*zone] += v;
      s.count += 1;
      const double d = h.cellsize * M_PI / 180.0;
      s.area += flat ? (radius * d) * (radius * d) : sphere_cell_area(lat, h.cellsize, radius);
      if (!s.max || v > *s.max) {
        s.max = v;
        s.max_lat = lat;
        s.max_lon = lon;
      }
    }
  }
  for (std::size_t z = 0; z < rects.size(); ++z) {
    if (out[z].count > 0) {
      out[z].mean = sums[z] / static_cast<double>(out[z].count);
    }
  }
  return out;
}

tcrain::PolygonSet rect_zones(const std::vector<Rect>& rects) {
  tcrain::PolygonSet set;
  for (std::size_t i = 0; i < rects.size(); ++i) {
    const Rect& q = rects[i];
    tcrain::Ring ring{{q.west, q.south}, {q.east, q.south}, {q.east, q.north}, {q.west, q.north}, {q.west, q.south}};
    set.zones.push_back({"Z" + std::to_string(i), {tcrain::Polygon{{ring}}}});
  }
  return set;
}

std::vector<Rect> random_cell_rects(std::mt19937_64& rng, const tcrain::GridHeader& grid, std::size_t n) {
  std::uniform_int_distribution<std::size_t> col(0, grid.ncols);
  std::uniform_int_distribution<std::size_t> row(0, grid.nrows);
  std::vector<Rect> rects;
  while (rects.size() < n) {
    std::size_t c0 = col(rng), c1 = col(rng), r0 = row(rng), r1 = row(rng);
    if (c0 == c1 || r0 == r1) {
      continue;
    }
    if (c0 > c1) std::swap(c0, c1);
    if (r0 > r1) std::swap(r0, r1);
    rects.push_back({grid.xll + grid.cellsize * static_cast<double>(c0), grid.xll + grid.cellsize * static_cast<double>(c1),
                     grid.yll + grid.cellsize * static_cast<double>(r0), grid.yll + grid.cellsize * static_cast<double>(r1)});
  }
  return rects;
}

tcrain::Grid random_grid(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double nodata_fraction,
                         double max_value) {
  tcrain::GridHeader h;
  h.ncols = cols;
  h.nrows = rows;
  h.xll = 60.0;
  h.yll = 0.0;
  h.cellsize = 0.1;
  tcrain::Grid g(h, 0.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double& v : g.values()) {
    v = u(rng) < nodata_fraction ? h.nodata : u(rng) * max_value;
  }
  return g;
}

std::vector<std::uint8_t> random_bits(std::mt19937_64& rng, std::size_t n, double density) {
  std::bernoulli_distribution b(density);
  std::vector<std::uint8_t> bits(n);
  for (auto& x : bits) {
    x = b(rng) ? 1 : 0;
  }
  return bits;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      record.push_back(std::move(field));
      field.clear();
    } else if (ch == '\n') {
      record.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(record));
      record.clear();
    } else {
      field += ch;
    }
  }
  if (!field.empty() || !record.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

bool relative_close(double a, double b, double rel) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) <= rel * scale;
}

}  // namespace oracle
