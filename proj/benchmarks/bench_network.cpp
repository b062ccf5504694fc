#include <benchmark/benchmark.h>

#include "recnet/network.hpp"
#include "recnet/synth.hpp"

namespace {

recnet::Scenario scenario(std::size_t n) {
  recnet::SynthParams params;
  params.n_pois = n;
  return recnet::generate_scenario(params);
}

void BM_BuildNetwork(benchmark::State& state) {
  const auto s = scenario(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(recnet::build_network(s.pois, s.flows));
}
BENCHMARK(BM_BuildNetwork)->RangeMultiplier(4)->Range(1024, 16384);

void BM_GraphSummary(benchmark::State& state) {
  const auto s = scenario(static_cast<std::size_t>(state.range(0)));
  const auto net = recnet::build_network(s.pois, s.flows);
  for (auto _ : state) benchmark::DoNotOptimize(recnet::graph_summary(net));
}
BENCHMARK(BM_GraphSummary)->RangeMultiplier(4)->Range(1024, 16384);

void BM_Generate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(scenario(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_Generate)->Arg(3405)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
