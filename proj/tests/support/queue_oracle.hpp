#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>

#include "hsdpa/mac/tsp_buffer.hpp"
#include "support/reference_buffer.hpp"

namespace hsdpa::testing {

struct OracleOutcome {
  int sequences = 0;
  int mismatches = 0;
  std::string first_mismatch;
};

inline bool same_pdu(const MacdPdu& a, const MacdPdu& b) {
  return a.flow == b.flow && a.rlc_seq == b.rlc_seq && a.machs_arrival == b.machs_arrival;
}

// Random admit / select+dequeue / sweep sequences (at most max_ops each),
// compared with ReferenceBuffer after every operation.
inline OracleOutcome run_queue_oracle(int sequences, int max_ops, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  OracleOutcome res;

  for (int s = 0; s < sequences; ++s) {
    ++res.sequences;
    const Scheme scheme = static_cast<Scheme>(pick(0, 2));
    BufferConfig cfg;
    if (pick(0, 1) == 0) {
      cfg = BufferConfig{12, 3, 6, 9};
    }
    PriorityConfig prio;
    static constexpr int kDeltas[] = {0, 1, 2, 3, 8, 16, 24, 32};
    prio.delta = kDeltas[pick(0, 7)];
    prio.hol_budget = pick(0, 1) == 0 ? HolBudget::db_max : HolBudget::db;
    prio.delay_budget = from_ms(5 * prio.delta);

    TspBuffer buf(scheme, cfg, prio);
    ReferenceBuffer ref(scheme, cfg, prio);
    Time now{0};
    std::uint32_t seq = 0;
    const int ops = pick(1, max_ops);
    bool ok = true;
    std::ostringstream why;

    for (int op = 0; op < ops && ok; ++op) {
      now += Time{pick(0, 4) * 5000 + pick(0, 1) * 1000};
      const int kind = pick(0, 9);
      if (kind < 6) {
        MacdPdu p;
        p.flow = pick(0, 1) == 0 ? FlowClass::rt : FlowClass::nrt;
        p.rlc_seq = seq++;
        const bool a = buf.offer(p, now) == Admission::admitted;
        const bool b = ref.admit(p, now);
        if (a != b) {
          ok = false;
          why << "admission differs at op " << op;
        } else if (a && p.flow == FlowClass::nrt && buf.occupancy() > cfg.total_capacity) {
          ok = false;
          why << "NRT admission overfilled the buffer at op " << op;
        }
      } else if (kind < 9) {
        const int bits = pick(0, 8) * kMacdPduBits + pick(0, 319);
        const Selection sa = buf.select_flow(now);
        const Selection sb = ref.select(now);
        if (sa != sb) {
          ok = false;
          why << "selection differs at op " << op;
        } else {
          const auto da = buf.dequeue_for_tti(sa, bits);
          const auto db = ref.dequeue(sb, bits);
          if (da.size() != db.size()) {
            ok = false;
            why << "dequeue size differs at op " << op;
          } else {
            for (std::size_t i = 0; i < da.size(); ++i) {
              if (!same_pdu(da[i], db[i]) || da[i].flow != (sa == Selection::rt ? FlowClass::rt : FlowClass::nrt)) {
                ok = false;
                why << "dequeued PDU differs at op " << op;
                break;
              }
            }
          }
        }
      } else {
        if (buf.discard_timer_sweep(now) != ref.sweep(now)) {
          ok = false;
          why << "sweep count differs at op " << op;
        }
      }

      if (ok) {
        const auto ca = buf.contents();
        auto cb = ref.contents();
        bool same = ca.size() == cb.size() && buf.rt_count() == ref.rt_count() &&
                    buf.nrt_count() == ref.nrt_count();
        for (std::size_t i = 0; same && i < ca.size(); ++i) same = same_pdu(ca[i], cb[i]);
        const auto& c = buf.counters();
        same = same && c.rt_admission_drops == ref.rt_drops && c.nrt_admission_drops == ref.nrt_drops &&
               c.rt_dt_discards == ref.dt_discards;
        if (scheme == Scheme::cbs) {
          same = same && buf.occupancy() <= cfg.total_capacity;
        } else {
          same = same && buf.rt_count() >= 0 && buf.rt_count() <= cfg.rt_threshold &&
                 buf.nrt_count() <= cfg.total_capacity &&
                 buf.occupancy() <= cfg.total_capacity + cfg.rt_threshold;
        }
        if (!same) {
          ok = false;
          why << "state differs after op " << op << ": rt " << buf.rt_count() << "/" << ref.rt_count()
              << " nrt " << buf.nrt_count() << "/" << ref.nrt_count() << " drops " << c.rt_admission_drops
              << "," << c.nrt_admission_drops << "/" << ref.rt_drops << "," << ref.nrt_drops << " dt "
              << c.rt_dt_discards << "/" << ref.dt_discards;
        }
      }
    }
    if (!ok) {
      ++res.mismatches;
      if (res.first_mismatch.empty()) {
        res.first_mismatch = "sequence " + std::to_string(s) + " (" + std::string(to_string(scheme)) +
                             ", delta " + std::to_string(prio.delta) + "): " + why.str();
      }
    }
  }
  return res;
}

}  // namespace hsdpa::testing
