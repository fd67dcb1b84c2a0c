#pragma once

#include <cstdint>
#include <deque>
#include <string_view>
#include <vector>

#include "hsdpa/mac/pdu.hpp"
#include "hsdpa/sim/time.hpp"

namespace hsdpa {

enum class Scheme : std::uint8_t { cbs, stsp, dtsp };

std::string_view to_string(Scheme s);

/// Thresholds in MAC-d PDUs. Valid iff 0 < R < L < H < N.
struct BufferConfig {
  int total_capacity = 192;   // N
  int rt_threshold = 32;      // R
  int fc_low_threshold = 72;  // L
  int fc_high_threshold = 144;  // H

  void validate() const;
};

/// Which delay budget the D-TSP switching test compares the RT HOL delay to.
enum class HolBudget : std::uint8_t { db_max, db };

struct PriorityConfig {
  Time delay_budget = 80ms;       // DB, selects delta
  Time max_delay_budget = 160ms;  // DB_max
  Time discard_timeout = 160ms;   // DT
  int delta = 16;                 // switching threshold in PDUs
  HolBudget hol_budget = HolBudget::db_max;

  Time switching_hol_limit() const {
    return hol_budget == HolBudget::db_max ? max_delay_budget : delay_budget;
  }
};

/// RT PDU inter-arrival time at MAC-hs implied by the guaranteed bit rate.
Time rt_inter_arrival(double lambda_rt_bps, int pdu_size_bits);

/// delta = DB / i, rounded down to whole PDUs.
int switching_threshold(Time delay_budget, double lambda_rt_bps, int pdu_size_bits);

/// R = lambda_rt * DB_max / PDU size.
int rt_threshold_for(double lambda_rt_bps, Time max_delay_budget, int pdu_size_bits);

enum class Admission : std::uint8_t { admitted, dropped };
enum class Selection : std::uint8_t { rt, nrt, empty };

struct BufferCounters {
  std::uint64_t rt_arrivals = 0;
  std::uint64_t nrt_arrivals = 0;
  std::uint64_t rt_admitted = 0;
  std::uint64_t nrt_admitted = 0;
  std::uint64_t rt_admission_drops = 0;
  std::uint64_t nrt_admission_drops = 0;
  std::uint64_t rt_dt_discards = 0;
  std::uint64_t rt_dequeued = 0;
  std::uint64_t nrt_dequeued = 0;
  std::uint64_t rt_selections = 0;
  std::uint64_t nrt_selections = 0;
};

/// Per-UE MAC-hs logical queue.
///
/// Under the TSP schemes RT and NRT PDUs sit in two FIFOs: RT admission is
/// capped at R resident PDUs, NRT may use the whole buffer (r + n < N).
/// s-TSP always transmits RT first; D-TSP hands the transmission
/// opportunity to NRT while fewer than delta RT PDUs wait and the RT
/// head-of-line delay is inside the budget. A discard timer drops RT PDUs
/// that have waited DT or longer.
///
/// Under CBS all PDUs share one drop-tail FIFO served in arrival order.
class TspBuffer {
 public:
  TspBuffer(Scheme scheme, BufferConfig buffer, PriorityConfig priority);

  /// Dispatches to admit() or admit_cbs() according to the scheme.
  Admission offer(MacdPdu pdu, Time now);

  /// TSP admission. Stamps machs_arrival on success.
  Admission admit(MacdPdu pdu, Time now);

  /// Drop-tail admission into the shared FIFO.
  Admission admit_cbs(MacdPdu pdu, Time now);

  /// Which class supplies the next transport block. Sweeps the discard
  /// timer first under the TSP schemes.
  Selection select_flow(Time now);

  /// Removes up to max_bits / 320 PDUs of `flow` from the head. Never mixes
  /// classes. Under CBS the PDUs form a contiguous run at the FIFO head.
  std::vector<MacdPdu> dequeue_for_tti(Selection flow, int max_bits);

  /// Drops RT head-of-line PDUs whose MAC-hs wait is >= DT. No-op under CBS.
  int discard_timer_sweep(Time now);

  /// now - machs_arrival of the RT head, or zero when no RT PDU is queued.
  Time rt_hol_delay(Time now) const;

  int rt_count() const { return rt_count_; }
  int nrt_count() const { return nrt_count_; }
  int occupancy() const { return rt_count_ + nrt_count_; }
  bool empty() const { return occupancy() == 0; }

  Scheme scheme() const { return scheme_; }
  const BufferConfig& buffer_config() const { return buffer_; }
  const PriorityConfig& priority_config() const { return priority_; }
  const BufferCounters& counters() const { return counters_; }

  /// Snapshot of queue contents in service order (RT FIFO then NRT FIFO, or
  /// the shared FIFO under CBS).
  std::vector<MacdPdu> contents() const;

 private:
  const MacdPdu* rt_head() const;

  Scheme scheme_;
  BufferConfig buffer_;
  PriorityConfig priority_;
  std::deque<MacdPdu> rt_queue_;
  std::deque<MacdPdu> nrt_queue_;
  std::deque<MacdPdu> shared_queue_;
  int rt_count_ = 0;
  int nrt_count_ = 0;
  BufferCounters counters_;
};

}  // namespace hsdpa
