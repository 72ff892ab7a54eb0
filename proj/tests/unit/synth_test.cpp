#include <cmath>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "tcrain/cluster.hpp"
#include "tcrain/synth.hpp"

namespace tcrain {
namespace {

TEST(RenderField, PeakAndSymmetry) {
  const std::vector<BlobSpec> blobs{{"c", {20.05, 70.05}, 50.0, 1.0}};
  const SynthField f = render_field(blobs, GridSpec{101, 101, 65.0, 15.0, 0.1});
  EXPECT_NEAR(f.grid(50, 50), 50.0, 1e-9);
  EXPECT_NEAR(f.grid(40, 50), f.grid(60, 50), 1e-9);
  EXPECT_NEAR(f.grid(50, 40), f.grid(50, 60), 1e-9);
  // One sigma away the value is A * exp(-1/2).
  EXPECT_NEAR(f.grid(40, 50), 50.0 * std::exp(-0.5), 1e-9);
  for (std::int32_t o : f.owner) {
    EXPECT_EQ(o, 0);
  }
}

TEST(RenderField, ThresholdDiskMatchesAnalyticArea) {
  const BlobSpec blob{"c", {20.0, 70.0}, 40.0, 1.0};
  const double cell = blob.sigma_deg / 10.0;
  const std::vector<BlobSpec> blobs{blob};
  const SynthField f = render_field(blobs, GridSpec{120, 120, 64.0, 14.0, cell});
  for (double threshold : {0.5, 0.9, 5.0, 20.0}) {
    const double cells = static_cast<double>(make_mask(f.grid, threshold).count());
    const double analytic = analytic_disk_area_deg2(blob, threshold);
    EXPECT_NEAR(cells * cell * cell, analytic, 0.05 * analytic) << threshold;
  }
  EXPECT_EQ(analytic_disk_area_deg2(blob, 40.0), 0.0);
}

TEST(RenderField, OwnerIsLargestContribution) {
  const std::vector<BlobSpec> blobs{{"a", {10.0, 65.0}, 30.0, 0.5}, {"b", {10.0, 66.0}, 30.0, 0.5}};
  const SynthField f = render_field(blobs, GridSpec{40, 10, 64.0, 9.5, 0.05});
  const GridHeader h = f.grid.header();
  for (std::size_t c = 0; c < h.ncols; ++c) {
    const double lon = h.xll + (c + 0.5) * h.cellsize;
    const std::int32_t owner = f.owner[5 * h.ncols + c];
    if (lon < 65.49) {
      EXPECT_EQ(owner, 0) << lon;
    } else if (lon > 65.51) {
      EXPECT_EQ(owner, 1) << lon;
    }
  }
}

TEST(RenderField, InvalidBlobs) {
  EXPECT_THROW(render_field({}, GridSpec{2, 2, 0, 0, 1}), std::invalid_argument);
  const std::vector<BlobSpec> bad{{"x", {0, 0}, -1.0, 1.0}};
  EXPECT_THROW(render_field(bad, GridSpec{2, 2, 0, 0, 1}), std::invalid_argument);
  const std::vector<BlobSpec> flat{{"x", {0, 0}, 1.0, 0.0}};
  EXPECT_THROW(render_field(flat, GridSpec{2, 2, 0, 0, 1}), std::invalid_argument);
}

TEST(SidecarJson, CountsAddUp) {
  const std::vector<BlobSpec> blobs{{"cyclone", {20.0, 68.0}, 60.0, 1.0}, {"monsoon", {12.0, 75.0}, 20.0, 1.0}};
  const SynthField f = render_field(blobs, GridSpec{200, 200, 60.0, 5.0, 0.1});
  const auto doc = nlohmann::json::parse(synth_sidecar_json(blobs, f, 0.9));
  EXPECT_EQ(doc["grid"]["ncols"], 200);
  EXPECT_EQ(doc["threshold_mm"], 0.9);
  ASSERT_EQ(doc["blobs"].size(), 2u);
  std::size_t owned = 0;
  std::size_t above = 0;
  for (const auto& b : doc["blobs"]) {
    owned += b["owned_cells"].get<std::size_t>();
    above += b["super_threshold_cells"].get<std::size_t>();
  }
  EXPECT_EQ(owned, 200u * 200u);
  EXPECT_EQ(above, make_mask(f.grid, 0.9).count());
  EXPECT_EQ(doc["blobs"][0]["id"], "cyclone");

  const auto plain = nlohmann::json::parse(synth_sidecar_json(blobs, f, std::nullopt));
  EXPECT_TRUE(plain["threshold_mm"].is_null());
  EXPECT_FALSE(plain["blobs"][0].contains("super_threshold_cells"));
}

}  // namespace
}  // namespace tcrain
