#include <cmath>
#include <random>

#include <benchmark/benchmark.h>

#include "tcrain/cluster.hpp"
#include "tcrain/polygons.hpp"
#include "tcrain/synth.hpp"
#include "tcrain/zonal.hpp"

namespace {

using namespace tcrain;

BinaryMask random_mask(std::size_t side, double density) {
  std::mt19937_64 rng(42);
  std::bernoulli_distribution bit(density);
  GridHeader h{side, side, 60.0, 0.0, 0.1};
  std::vector<std::uint8_t> bits(h.size());
  for (auto& b : bits) {
    b = bit(rng) ? 1 : 0;
  }
  return BinaryMask(h, std::move(bits));
}

void BM_LabelComponents(benchmark::State& state) {
  const BinaryMask mask = random_mask(static_cast<std::size_t>(state.range(0)), 0.5);
  const auto conn = state.range(1) == 8 ? Connectivity::Eight : Connectivity::Four;
  for (auto _ : state) {
    benchmark::DoNotOptimize(label_components(mask, conn));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(mask.size()));
}
BENCHMARK(BM_LabelComponents)->Args({400, 4})->Args({400, 8})->Args({1800, 4});

PolygonSet star_zones(int count, int vertices) {
  PolygonSet set;
  for (int z = 0; z < count; ++z) {
    Ring ring;
    const double cx = 65.0 + 4.0 * z;
    for (int i = 0; i < vertices; ++i) {
      const double a = 6.283185307179586 * i / vertices;
      const double r = i % 2 == 0 ? 3.0 : 1.5;
      ring.push_back({cx + r * std::cos(a), 20.0 + r * std::sin(a)});
    }
    ring.push_back(ring.front());
    set.zones.push_back({"Z" + std::to_string(z), {Polygon{{ring}}}});
  }
  return set;
}

void BM_AssignZones(benchmark::State& state) {
  const GridHeader h{400, 400, 60.0, 0.0, 0.1};
  const PolygonSet zones = star_zones(8, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(assign_zones(h, zones));
  }
}
BENCHMARK(BM_AssignZones)->Arg(16)->Arg(1024);

void BM_DayPipeline(benchmark::State& state) {
  const std::vector<BlobSpec> blobs{{"cyclone", {18.0, 67.0}, 70.0, 1.2}, {"monsoon", {9.0, 76.0}, 25.0, 1.0}};
  const SynthField field = render_field(blobs, GridSpec{400, 400, 60.0, 0.0, 0.1});
  const ZoneMap zones = assign_zones(field.grid, star_zones(4, 64));
  for (auto _ : state) {
    const BinaryMask mask = make_mask(field.grid, 0.9);
    const LabeledGrid labeled = label_components(mask);
    const Cluster cluster = select_cyclone_cluster(labeled, blobs[0].center, field.grid);
    const Grid cluster_grid = extract_cluster_grid(field.grid, cluster);
    benchmark::DoNotOptimize(zonal_stats(cluster_grid, zones, 0.1));
  }
}
BENCHMARK(BM_DayPipeline)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
