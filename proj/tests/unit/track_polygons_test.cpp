#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tcrain/errors.hpp"
#include "tcrain/polygons.hpp"
#include "tcrain/track.hpp"

namespace tcrain {
namespace {

using namespace std::chrono;

TEST(ReadTrackCsv, LandfallRow) {
  const Track t = read_track_csv("timestamp,lat,lon,label\n2023-06-15T12:00Z,23.28,68.56,VSCS\n");
  ASSERT_EQ(t.points.size(), 1u);
  EXPECT_DOUBLE_EQ(t.points[0].lat, 23.28);
  EXPECT_DOUBLE_EQ(t.points[0].lon, 68.56);
  EXPECT_EQ(t.points[0].label, "VSCS");
  EXPECT_EQ(format_utc_timestamp(t.points[0].time), "2023-06-15T12:00:00Z");
}

TEST(ReadTrackCsv, LabelIsOptional) {
  const Track t = read_track_csv("timestamp,lat,lon\n2023-06-06T03:00:00Z,14,66\n2023-06-06T09:00:00+00:00,14.5,66.2\n");
  ASSERT_EQ(t.points.size(), 2u);
  EXPECT_TRUE(t.points[1].label.empty());
}

TEST(ReadTrackCsv, Errors) {
  EXPECT_THROW(read_track_csv("timestamp,lat,lon,label\n"), std::invalid_argument);
  try {
    read_track_csv("timestamp,lat,lon,label\n2023-06-15T12:00Z,23,68,D\n2023-06-15T06:00Z,22,68,D\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("not after the previous row"), std::string::npos);
  }
  EXPECT_THROW(read_track_csv("2023-06-15T12:00Z,23,68,D\n"), ParseError);
  EXPECT_THROW(read_track_csv("timestamp,lat,lon,label\n2023-06-15T12:00Z,95,68,D\n"), ParseError);
  EXPECT_THROW(read_track_csv("timestamp,lat,lon,label\n2023-06-15T12:00Z,x,68,D\n"), ParseError);
  EXPECT_THROW(read_track_csv("timestamp,lat,lon,label\n2023-06-15 12:00,23,68,D\n"), ParseError);
  EXPECT_THROW(read_track_csv("timestamp,lat,lon,label\n2023-06-15T12:00Z,23\n"), ParseError);
}

TEST(UtcTimestamp, OffsetsNormaliseToUtc) {
  EXPECT_EQ(parse_utc_timestamp("2023-06-15T08:30+05:30"), parse_utc_timestamp("2023-06-15T03:00Z"));
  EXPECT_EQ(parse_utc_timestamp("2023-06-15T03:00:00.000Z"), parse_utc_timestamp("2023-06-15T03:00Z"));
  EXPECT_EQ(parse_date("2023-06-15") + hours(3), parse_utc_timestamp("2023-06-15T03:00Z"));
  EXPECT_THROW(parse_utc_timestamp("2023-02-30T00:00Z"), std::invalid_argument);
  EXPECT_THROW(parse_utc_timestamp("2023-06-15T03:00"), std::invalid_argument);
  EXPECT_THROW(parse_date("15/06/2023"), std::invalid_argument);
}

TEST(TrackFixAt, ExactInterpolatedAndTolerance) {
  const Track t = read_track_csv(
      "timestamp,lat,lon,label\n"
      "2023-06-15T00:00Z,20,66,ESCS\n"
      "2023-06-15T06:00Z,22,68,VSCS\n");
  const auto exact = track_fix_at(t, parse_utc_timestamp("2023-06-15T06:00Z"));
  ASSERT_TRUE(exact);
  EXPECT_EQ(exact->label, "VSCS");
  const auto mid = track_fix_at(t, parse_utc_timestamp("2023-06-15T03:00Z"));
  ASSERT_TRUE(mid);
  EXPECT_DOUBLE_EQ(mid->lat, 21.0);
  EXPECT_DOUBLE_EQ(mid->lon, 67.0);
  const auto after = track_fix_at(t, parse_utc_timestamp("2023-06-15T12:00Z"));
  ASSERT_TRUE(after);
  EXPECT_DOUBLE_EQ(after->lat, 22.0);
  EXPECT_FALSE(track_fix_at(t, parse_utc_timestamp("2023-06-15T12:01Z")));
  EXPECT_FALSE(track_fix_at(t, parse_utc_timestamp("2023-06-14T17:00Z")));
}

constexpr const char* kUnitSquare = R"({
  "type": "FeatureCollection",
  "features": [
    {"type": "Feature", "properties": {"name": "Square"},
     "geometry": {"type": "Polygon", "coordinates": [[[0,0],[1,0],[1,1],[0,1],[0,0]]]}}
  ]
})";

TEST(ReadGeojson, UnitSquare) {
  const PolygonSet set = read_geojson_polygons(kUnitSquare);
  ASSERT_EQ(set.zones.size(), 1u);
  EXPECT_EQ(set.zones[0].name, "Square");
  ASSERT_EQ(set.zones[0].polygons.size(), 1u);
  EXPECT_EQ(set.zones[0].polygons[0].rings[0].size(), 5u);
  EXPECT_TRUE(zone_contains(set.zones[0], 0.5, 0.5));
  EXPECT_FALSE(zone_contains(set.zones[0], 1.5, 0.5));
}

TEST(ReadGeojson, MultiPolygonAndHoles) {
  const PolygonSet set = read_geojson_polygons(R"({
    "type": "FeatureCollection",
    "features": [
      {"type": "Feature", "properties": {"name": "Kutch"},
       "geometry": {"type": "MultiPolygon", "coordinates": [
         [[[0,0],[4,0],[4,4],[0,4],[0,0]], [[1,1],[2,1],[2,2],[1,2],[1,1]]],
         [[[10,10],[11,10],[11,11],[10,11],[10,10]]]
       ]}}
    ]
  })");
  ASSERT_EQ(set.zones.size(), 1u);
  const Zone& z = set.zones[0];
  ASSERT_EQ(z.polygons.size(), 2u);
  EXPECT_EQ(z.polygons[0].rings.size(), 2u);
  EXPECT_TRUE(zone_contains(z, 3.0, 3.0));
  EXPECT_FALSE(zone_contains(z, 1.5, 1.5));
  EXPECT_TRUE(zone_contains(z, 10.5, 10.5));
  EXPECT_FALSE(zone_contains(z, 7.0, 7.0));
}

TEST(ReadGeojson, Errors) {
  const auto expect_message = [](const char* text, const std::string& fragment) {
    try {
      read_geojson_polygons(text);
      FAIL() << "expected failure for " << fragment;
    } catch (const std::invalid_argument& e) {
      EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
    }
  };
  expect_message(R"({"type":"FeatureCollection","features":[{"type":"Feature","properties":{},
    "geometry":{"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1],[0,0]]]}}]})",
                 "feature 0: missing \"name\"");
  expect_message(R"({"type":"FeatureCollection","features":[{"type":"Feature","properties":{"name":"A"},
    "geometry":{"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1],[0,1]]]}}]})",
                 "unclosed ring");
  expect_message(R"({"type":"FeatureCollection","features":[{"type":"Feature","properties":{"name":"A"},
    "geometry":{"type":"Point","coordinates":[0,0]}}]})",
                 "unsupported geometry type 'Point'");
  expect_message(R"({"type":"FeatureCollection","features":[
    {"type":"Feature","properties":{"name":"A"},"geometry":{"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1],[0,0]]]}},
    {"type":"Feature","properties":{"name":"A"},"geometry":{"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1],[0,0]]]}}]})",
                 "feature 1: duplicate zone name 'A'");
  expect_message(R"({"type":"Feature"})", "FeatureCollection");
  expect_message("{not json", "invalid GeoJSON");
}

Ring regular_polygon(double cx, double cy, double r, int n, double phase, bool clockwise) {
  Ring ring;
  for (int i = 0; i < n; ++i) {
    const double a = phase + (clockwise ? -1.0 : 1.0) * 2.0 * 3.14159265358979323846 * i / n;
    ring.push_back({cx + r * std::cos(a), cy + r * std::sin(a)});
  }
  ring.push_back(ring.front());
  return ring;
}

TEST(PolygonContains, AgreesWithWindingNumberAwayFromEdges) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int shape = 0; shape < 50; ++shape) {
    const int n = 3 + shape % 9;
    const Ring ring = regular_polygon(68.0, 22.0, 0.5 + 3.0 * u(rng), n, 6.28 * u(rng), shape % 2 == 0);
    const Polygon poly{{ring}};
    for (int i = 0; i < 400; ++i) {
      const double x = 63.0 + 10.0 * u(rng);
      const double y = 17.0 + 10.0 * u(rng);
      if (oracle::distance_to_ring(ring, x, y) < 1e-9) {
        continue;
      }
      EXPECT_EQ(polygon_contains(poly, x, y), oracle::winding_number(ring, x, y) != 0);
    }
  }
}

TEST(PolygonContains, OrientationIndependent) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  const Polygon ccw{{regular_polygon(0, 0, 3, 7, 0.3, false)}};
  const Polygon cw{{regular_polygon(0, 0, 3, 7, 0.3, true)}};
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    const double y = u(rng);
    EXPECT_EQ(polygon_contains(ccw, x, y), polygon_contains(cw, x, y));
  }
}

}  // namespace
}  // namespace tcrain
