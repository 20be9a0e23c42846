#include <benchmark/benchmark.h>

#include "monocone/cftp.hpp"
#include "monocone/classify.hpp"

using namespace monocone;

namespace {

const char* const kNames[] = {"S1", "S2", "S3", "S4", "S5", "S6", "S8", "S9", "S7"};

void monotone_rays(benchmark::State& state) {
  const Poset p = named_poset(kNames[state.range(0)]);
  const HRepCone h = monotone_cone(p).cone;
  DdOptions options;
  options.adjacency = state.range(1) ? AdjacencyTest::kAlgebraic : AdjacencyTest::kCombinatorial;
  std::size_t rays = 0;
  for (auto _ : state) {
    rays = dd_rays(h, options).rays.size();
    benchmark::DoNotOptimize(rays);
  }
  state.SetLabel(std::string(kNames[state.range(0)]) + " rays=" + std::to_string(rays));
}
BENCHMARK(monotone_rays)
    ->ArgsProduct({{0, 1, 2, 3, 4}, {0, 1}})
    ->Args({5, 0})
    ->Args({8, 0})
    ->Unit(benchmark::kMillisecond);

void extremal_indicators(benchmark::State& state) {
  const auto spec = indicator_vectors(named_poset(kNames[state.range(0)]));
  for (auto _ : state) benchmark::DoNotOptimize(extremal_indicator_indices(spec));
  state.SetLabel(kNames[state.range(0)]);
}
BENCHMARK(extremal_indicators)->DenseRange(0, 8)->Unit(benchmark::kMillisecond);

void realizability_lp(benchmark::State& state) {
  const auto examples = builtin_examples();
  const auto& e = examples[state.range(0)];
  for (auto _ : state) benchmark::DoNotOptimize(is_realizably_monotone(e.generator));
  state.SetLabel(e.id);
}
BENCHMARK(realizability_lp)->DenseRange(0, 13)->Unit(benchmark::kMicrosecond);

void poset_enumeration(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_posets(static_cast<int>(state.range(0))));
}
BENCHMARK(poset_enumeration)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void equivalence(benchmark::State& state) {
  const Poset p = named_poset(kNames[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(equivalence_holds(p).holds);
  state.SetLabel(kNames[state.range(0)]);
}
BENCHMARK(equivalence)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void cftp_diamond(benchmark::State& state) {
  const Poset d = diamond();
  const auto spec = indicator_vectors(d);
  RationalVector rates(pair_dimension(4));
  LambdaWeights weights;
  for (std::size_t i = 0; i < spec.maps.size(); ++i) {
    weights.emplace_back(spec.maps[i], 1);
    for (std::size_t k = 0; k < rates.size(); ++k) rates[k] += spec.cone.rays[i][k];
  }
  const RdsiSpec maps = RdsiSpec::maps(Generator(d, rates), weights);
  CftpOptions options;
  options.tracking = state.range(0) ? TrackingRequest::kExtremesOnly : TrackingRequest::kFullState;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(cftp_sample(maps, seed++, options));
  state.SetLabel(state.range(0) ? "extremes" : "full");
}
BENCHMARK(cftp_diamond)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
