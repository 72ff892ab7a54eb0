#include "tcrain/polygons.hpp"

#include <set>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "tcrain/grid_io.hpp"

namespace tcrain {
namespace {

using nlohmann::json;

std::string where(std::size_t feature) { return "feature " + std::to_string(feature); }

Ring parse_ring(const json& coords, std::size_t feature) {
  if (!coords.is_array()) {
    throw std::invalid_argument(where(feature) + ": ring is not an array");
  }
  Ring ring;
  ring.reserve(coords.size());
  for (const json& vertex : coords) {
    if (!vertex.is_array() || vertex.size() < 2 || !vertex[0].is_number() || !vertex[1].is_number()) {
      throw std::invalid_argument(where(feature) + ": vertex must be [lon, lat]");
    }
    ring.push_back({vertex[0].get<double>(), vertex[1].get<double>()});
  }
  if (ring.size() < 4 || ring.front().lon != ring.back().lon || ring.front().lat != ring.back().lat) {
    throw std::invalid_argument(where(feature) + ": unclosed ring (need >= 4 vertices with first == last)");
  }
  return ring;
}

Polygon parse_polygon(const json& coords, std::size_t feature) {
  if (!coords.is_array() || coords.empty()) {
    throw std::invalid_argument(where(feature) + ": polygon needs at least one ring");
  }
  Polygon polygon;
  for (const json& ring : coords) {
    polygon.rings.push_back(parse_ring(ring, feature));
  }
  return polygon;
}

// Crossing test for one ring; toggles `inside` per crossing to the right of the point.
void toggle_crossings(const Ring& ring, double lon, double lat, bool& inside) {
  const std::size_t n = ring.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const LonLatVertex& a = ring[i];
    const LonLatVertex& b = ring[j];
    if ((a.lat > lat) != (b.lat > lat)) {
      const double x = a.lon + (lat - a.lat) * (b.lon - a.lon) / (b.lat - a.lat);
      if (lon < x) {
        inside = !inside;
      }
    }
  }
}

}  // namespace

PolygonSet read_geojson_polygons(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid GeoJSON: ") + e.what());
  }
  if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" || !doc.contains("features") ||
      !doc["features"].is_array()) {
    throw std::invalid_argument("GeoJSON root must be a FeatureCollection");
  }

  PolygonSet set;
  std::set<std::string> names;
  std::size_t index = 0;
  for (const json& feature : doc["features"]) {
    const auto props = feature.find("properties");
    if (props == feature.end() || !props->is_object() || !props->contains("name") || !(*props)["name"].is_string()) {
      throw std::invalid_argument(where(index) + ": missing \"name\" property");
    }
    Zone zone;
    zone.name = (*props)["name"].get<std::string>();
    if (!names.insert(zone.name).second) {
      throw std::invalid_argument(where(index) + ": duplicate zone name '" + zone.name + "'");
    }

    const auto geometry = feature.find("geometry");
    if (geometry == feature.end() || !geometry->is_object()) {
      throw std::invalid_argument(where(index) + ": unsupported geometry type (null)");
    }
    const std::string type = geometry->value("type", "");
    const json& coords = (*geometry)["coordinates"];
    if (type == "Polygon") {
      zone.polygons.push_back(parse_polygon(coords, index));
    } else if (type == "MultiPolygon") {
      if (!coords.is_array() || coords.empty()) {
        throw std::invalid_argument(where(index) + ": empty MultiPolygon");
      }
      for (const json& part : coords) {
        zone.polygons.push_back(parse_polygon(part, index));
      }
    } else {
      throw std::invalid_argument(where(index) + ": unsupported geometry type '" + type + "'");
    }
    set.zones.push_back(std::move(zone));
    ++index;
  }
  return set;
}

PolygonSet read_geojson_polygons_file(const std::filesystem::path& path) {
  try {
    return read_geojson_polygons(read_text_file(path));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

bool polygon_contains(const Polygon& polygon, double lon, double lat) {
  bool inside = false;
  for (const Ring& ring : polygon.rings) {
    toggle_crossings(ring, lon, lat, inside);
  }
  return inside;
}

bool zone_contains(const Zone& zone, double lon, double lat) {
  for (const Polygon& polygon : zone.polygons) {
    if (polygon_contains(polygon, lon, lat)) {
      return true;
    }
  }
  return false;
}

}  // namespace tcrain
