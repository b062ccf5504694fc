#include <benchmark/benchmark.h>

#include "recnet/calibration.hpp"
#include "recnet/multiplier.hpp"
#include "recnet/network.hpp"
#include "recnet/synth.hpp"

namespace {

// One GA generation = M - 1 fitness evaluations plus selection and
// variation; measured as a short run divided by its generation count.
void BM_CalibrationGenerations(benchmark::State& state) {
  recnet::SynthParams params;
  params.n_pois = static_cast<std::size_t>(state.range(0));
  const auto s = recnet::generate_scenario(params);
  const auto net = recnet::build_network(s.pois, s.flows);
  const auto panel = recnet::align_panel(net, s.panel);
  recnet::StudyConfig config;
  config.ga_iterations = 50;
  config.baseline_samples = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(recnet::calibrate_thresholds(net, panel, config));
  }
  state.SetItemsProcessed(state.iterations() * config.ga_iterations);
}
BENCHMARK(BM_CalibrationGenerations)->Arg(500)->Arg(3405)->Unit(benchmark::kMillisecond);

void BM_MultiplierGenerations(benchmark::State& state) {
  recnet::SynthParams params;
  params.n_pois = 3405;
  const auto s = recnet::generate_scenario(params);
  const auto net = recnet::build_network(s.pois, s.flows);
  recnet::ga::GaParams ga;
  ga.max_iterations = 50;
  const double gamma = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(recnet::optimize_multipliers(net, s.theta_true, gamma, 17, ga));
  }
  state.SetItemsProcessed(state.iterations() * ga.max_iterations);
}
BENCHMARK(BM_MultiplierGenerations)->Arg(3)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
