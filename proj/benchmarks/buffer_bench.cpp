#include <benchmark/benchmark.h>

#include "hsdpa/mac/tsp_buffer.hpp"

namespace {

using namespace hsdpa;

// Two RT and up to eight NRT arrivals per 10 ms, one 22-PDU grant every
// third TTI.
void BM_BufferCycle(benchmark::State& state) {
  const auto scheme = static_cast<Scheme>(state.range(0));
  PriorityConfig prio;
  prio.delta = 16;
  std::int64_t ops = 0;
  for (auto _ : state) {
    TspBuffer b(scheme, BufferConfig{}, prio);
    Time now{0};
    std::uint32_t seq = 0;
    for (int tti = 0; tti < 5000; ++tti) {
      now += kTti;
      if (tti % 5 == 0) {
        MacdPdu rt;
        rt.flow = FlowClass::rt;
        rt.rlc_seq = seq++;
        b.offer(rt, now);
        b.offer(rt, now);
        for (int i = 0; i < 8; ++i) {
          MacdPdu nrt;
          nrt.rlc_seq = seq++;
          b.offer(nrt, now);
        }
        ops += 10;
      }
      b.discard_timer_sweep(now);
      if (tti % 3 == 0) {
        const Selection sel = b.select_flow(now);
        if (sel != Selection::empty) benchmark::DoNotOptimize(b.dequeue_for_tti(sel, 7179));
        ++ops;
      }
    }
  }
  state.SetItemsProcessed(ops);
}
BENCHMARK(BM_BufferCycle)->Arg(static_cast<int>(Scheme::cbs))->Arg(static_cast<int>(Scheme::stsp))
    ->Arg(static_cast<int>(Scheme::dtsp));

}  // namespace
