#include <benchmark/benchmark.h>

#include "hsdpa/scenario/simulation.hpp"

namespace {

using namespace hsdpa;

void BM_TenSecondSession(benchmark::State& state) {
  ScenarioConfig cfg;
  cfg.users = static_cast<int>(state.range(0));
  cfg.session = 10s;
  cfg.output.playout_delays = false;
  for (auto _ : state) {
    const SimMetrics m = run_simulation(cfg, 1);
    benchmark::DoNotOptimize(m.nrt_bytes_delivered);
  }
  state.SetItemsProcessed(state.iterations() * 5000);
  state.SetLabel("items = TTIs");
}
BENCHMARK(BM_TenSecondSession)->Arg(1)->Arg(30)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
