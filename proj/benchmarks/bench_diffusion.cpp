#include <benchmark/benchmark.h>

#include "recnet/calibration.hpp"
#include "recnet/diffusion.hpp"
#include "recnet/network.hpp"
#include "recnet/synth.hpp"

namespace {

struct Fixture {
  recnet::DependencyNetwork net;
  recnet::Scenario scenario;
};

Fixture make(std::size_t n) {
  recnet::SynthParams params;
  params.n_pois = n;
  Fixture f{{}, recnet::generate_scenario(params)};
  f.net = recnet::build_network(f.scenario.pois, f.scenario.flows);
  return f;
}

void BM_Simulate(benchmark::State& state) {
  const auto f = make(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(recnet::simulate(f.net, f.scenario.seeds, f.scenario.theta_true, 17));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulate)->RangeMultiplier(4)->Range(256, 16384);

void BM_Mae(benchmark::State& state) {
  const auto f = make(static_cast<std::size_t>(state.range(0)));
  const auto panel = recnet::align_panel(f.net, f.scenario.panel);
  const auto trace = recnet::simulate(f.net, f.scenario.seeds, f.scenario.theta_true, 17);
  for (auto _ : state) benchmark::DoNotOptimize(recnet::mae(trace, panel));
}
BENCHMARK(BM_Mae)->Arg(3405);

}  // namespace

BENCHMARK_MAIN();
