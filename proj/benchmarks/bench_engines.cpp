#include <benchmark/benchmark.h>

#include "csmanet/bp.hpp"
#include "csmanet/cliques.hpp"
#include "csmanet/gbp.hpp"
#include "csmanet/graph.hpp"
#include "csmanet/icn.hpp"
#include "csmanet/sim.hpp"

namespace {

using namespace csmanet;

AccessIntensities uniform(const ContentionGraph& g, double rho) {
  AccessIntensities out;
  for (LinkId id : g.ids()) out[id] = rho;
  return out;
}

void BM_MaximalCliques(benchmark::State& state) {
  const ContentionGraph g =
      random_geometric_graph(static_cast<int>(state.range(0)), 4.0, 17);
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_maximal_cliques(g));
  }
}
BENCHMARK(BM_MaximalCliques)->Arg(50)->Arg(100)->Arg(200);

void BM_BpSweep(benchmark::State& state) {
  const ContentionGraph g =
      random_geometric_graph(static_cast<int>(state.range(0)), 4.0, 17);
  const auto rho = uniform(g, kDefaultRho);
  MessageTable msgs = initial_bp_messages(g, rho);
  for (auto _ : state) {
    msgs = bp_message_update(g, rho, msgs, {});
    benchmark::DoNotOptimize(msgs);
  }
}
BENCHMARK(BM_BpSweep)->Arg(50)->Arg(100)->Arg(200);

void BM_GbpSweep(benchmark::State& state) {
  const ContentionGraph g =
      random_geometric_graph(static_cast<int>(state.range(0)), 4.0, 17);
  const auto rho = uniform(g, kDefaultRho);
  const RegionGraph rg = build_region_graph(g);
  RegionMessageTable msgs = initial_gbp_messages(rg, rho);
  for (auto _ : state) {
    msgs = gbp_sweep(rg, rho, msgs, 0.5);
    benchmark::DoNotOptimize(msgs);
  }
}
BENCHMARK(BM_GbpSweep)->Arg(50)->Arg(100);

void BM_RegionGraphBuild(benchmark::State& state) {
  const ContentionGraph g =
      random_geometric_graph(static_cast<int>(state.range(0)), 4.0, 17);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_region_graph(g));
  }
}
BENCHMARK(BM_RegionGraphBuild)->Arg(50)->Arg(100);

void BM_ExactThroughputs(benchmark::State& state) {
  const ContentionGraph g =
      random_geometric_graph(static_cast<int>(state.range(0)), 4.0, 23);
  const auto rho = uniform(g, kDefaultRho);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_throughputs(g, rho, 25));
  }
}
BENCHMARK(BM_ExactThroughputs)->Arg(15)->Arg(20)->Arg(25);

void BM_SimulateIcn(benchmark::State& state) {
  const ContentionGraph g = random_geometric_graph(50, 4.0, 29);
  const auto rho = uniform(g, kDefaultRho);
  SimConfig cfg;
  cfg.horizon = static_cast<double>(state.range(0));
  cfg.seed = 5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_icn(g, rho, cfg));
  }
}
BENCHMARK(BM_SimulateIcn)->Arg(1000)->Arg(10000);

} // namespace

BENCHMARK_MAIN();
