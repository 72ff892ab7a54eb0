#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace tcrain {

struct LonLatVertex {
  double lon = 0.0;
  double lat = 0.0;
};

/// Closed ring: at least four vertices, first == last.
using Ring = std::vector<LonLatVertex>;

struct Polygon {
  std::vector<Ring> rings;  // rings[0] is the outer boundary, the rest are holes
};

/// One named administrative area. A MultiPolygon feature contributes several polygons.
struct Zone {
  std::string name;
  std::vector<Polygon> polygons;
};

struct PolygonSet {
  std::vector<Zone> zones;
};

/// FeatureCollection of Polygon / MultiPolygon features, each with a "name" property.
PolygonSet read_geojson_polygons(std::string_view text);
PolygonSet read_geojson_polygons_file(const std::filesystem::path& path);

/// Even-odd containment with the half-open crossing rule: an edge counts
/// when exactly one endpoint lies strictly above the horizontal ray.
bool polygon_contains(const Polygon& polygon, double lon, double lat);
bool zone_contains(const Zone& zone, double lon, double lat);

}  // namespace tcrain
