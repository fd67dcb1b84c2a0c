#pragma once

#include <cstdint>
#include <vector>

#include "hsdpa/traffic/playout.hpp"
#include "hsdpa/sim/time.hpp"

namespace hsdpa {

/// Per-run results for the test UE plus cell-wide counters.
struct SimMetrics {
  double session_s = 0.0;

  // NRT
  std::uint64_t nrt_bytes_delivered = 0;  // in order at the UE TCP layer
  double nrt_throughput_bps = 0.0;
  std::uint64_t nrt_admission_drops = 0;
  std::uint64_t nrt_pdus_admitted = 0;
  std::uint64_t rlc_retransmissions = 0;
  std::uint64_t rlc_sdu_discards = 0;
  std::uint64_t tcp_retransmissions = 0;
  std::uint64_t tcp_timeouts = 0;
  std::uint64_t tcp_fast_retransmits = 0;

  // RT
  std::uint64_t rt_packets_emitted = 0;
  std::uint64_t rt_pdus_admitted = 0;
  std::uint64_t rt_admission_drops = 0;
  std::uint64_t rt_dt_discards = 0;
  double rt_discard_ratio = 0.0;
  std::uint64_t rt_um_gap_losses = 0;
  std::uint64_t rt_packets_delivered = 0;
  std::uint64_t rt_packets_played = 0;
  std::uint64_t rt_packets_unplayed = 0;
  std::uint64_t rt_underruns = 0;
  std::vector<PlayoutSample> playout;

  // MAC / PHY
  std::uint64_t ttis = 0;
  std::uint64_t idle_ttis = 0;
  std::uint64_t test_ue_ttis = 0;
  std::uint64_t harq_transmissions = 0;
  std::uint64_t harq_retransmissions = 0;
  std::uint64_t harq_drops = 0;
  std::uint64_t harq_blocked = 0;
  std::uint64_t reorder_tsn_skips = 0;

  std::uint64_t events_dispatched = 0;
};

/// Total bytes over the session, in bit/s. Zero for an empty session.
double average_throughput_bps(std::uint64_t bytes, Time session);

/// DT discards over RT PDUs admitted to MAC-hs (0 when nothing was admitted).
double discard_ratio(std::uint64_t discarded, std::uint64_t admitted);

}  // namespace hsdpa
