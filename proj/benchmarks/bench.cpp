#include <benchmark/benchmark.h>

#include <random>

#include "mclab/compress.hpp"
#include "mclab/dims.hpp"
#include "mclab/generators.hpp"
#include "mclab/learn.hpp"
#include "mclab/oig.hpp"
#include "mclab/shift.hpp"

using namespace mclab;

namespace {

Sample make_sample(const ConceptClass& cls, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Word& target = cls.words()[0];
  Sample s;
  for (int i = 0; i < n; ++i) {
    int x = static_cast<int>(rng() % static_cast<unsigned>(cls.domain_size()));
    s.push_back({x, target[static_cast<std::size_t>(x)]});
  }
  return s;
}

}  // namespace

static void BM_BuildOigTorus(benchmark::State& state) {
  ConceptClass torus = gen_torus_pseudocube().pseudocube;
  for (auto _ : state) {
    OneInclusionGraph g(torus);
    benchmark::DoNotOptimize(g.edge_count());
  }
}
BENCHMARK(BM_BuildOigTorus);

static void BM_OptimalOrientation(benchmark::State& state) {
  ConceptClass cls = state.range(0) == 0 ? gen_hexagon() : gen_torus_pseudocube().pseudocube;
  OneInclusionGraph g(cls);
  for (auto _ : state) {
    auto opt = optimal_orientation(g);
    benchmark::DoNotOptimize(opt.max_out_degree);
  }
}
BENCHMARK(BM_OptimalOrientation)->Arg(0)->Arg(1);

static void BM_DsDimensionTorus(benchmark::State& state) {
  ConceptClass torus = gen_torus_pseudocube().pseudocube;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ds_dimension(torus).value);
  }
}
BENCHMARK(BM_DsDimensionTorus);

static void BM_NatarajanTorus(benchmark::State& state) {
  ConceptClass torus = gen_torus_pseudocube().pseudocube;
  for (auto _ : state) {
    benchmark::DoNotOptimize(natarajan_dimension(torus).value);
  }
}
BENCHMARK(BM_NatarajanTorus);

static void BM_ShiftFixedPoint(benchmark::State& state) {
  ConceptClass torus = gen_torus_pseudocube().pseudocube;
  for (auto _ : state) {
    ShiftTrace trace = shift_to_fixed_point(torus);
    benchmark::DoNotOptimize(trace.final_class.size());
  }
}
BENCHMARK(BM_ShiftFixedPoint)->Unit(benchmark::kMillisecond);

static void BM_OigPredict(benchmark::State& state) {
  ConceptClass hex = gen_hexagon();
  Sample s = make_sample(hex, static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oig_predict(hex, s, 0));
  }
}
BENCHMARK(BM_OigPredict)->Arg(2)->Arg(20)->Arg(200);

static void BM_CompressEndToEnd(benchmark::State& state) {
  ConceptClass hex = gen_hexagon();
  Sample s = make_sample(hex, 20, 2);
  CompressConfig cfg;
  cfg.seed = 3;
  for (auto _ : state) {
    CompressionResult res = compress_end_to_end(hex, s, 1, cfg);
    benchmark::DoNotOptimize(res.r_achieved);
  }
}
BENCHMARK(BM_CompressEndToEnd)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
