#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "hsdpa/mac/pdu.hpp"
#include "hsdpa/mac/tsp_buffer.hpp"
#include "hsdpa/radio/amc.hpp"
#include "hsdpa/sim/time.hpp"

namespace hsdpa {

/// Skip-empty round robin over TTIs ("fair time").
class RoundRobinScheduler {
 public:
  explicit RoundRobinScheduler(int num_ues);

  /// Serves the first UE at or after the cursor for which `can_serve` holds
  /// and moves the cursor past it. Returns nullopt if no UE qualifies.
  std::optional<UeId> schedule_tti(const std::function<bool(UeId)>& can_serve);

  int num_ues() const { return num_ues_; }
  int cursor() const { return cursor_; }
  std::uint64_t served_count(UeId ue) const { return served_.at(ue); }
  std::uint64_t idle_ttis() const { return idle_ttis_; }

 private:
  int num_ues_;
  int cursor_ = 0;
  std::vector<std::uint64_t> served_;
  std::uint64_t idle_ttis_ = 0;
};

/// Fills one MAC-hs PDU from the buffer-selected flow. Returns nullopt when
/// the buffer selects nothing or no SDU fits.
std::optional<MacHsPdu> build_transport_block(TspBuffer& buffer, UeId ue,
                                              const AmcDecision& amc, int header_bits, Time now);

/// Largest number of MAC-d PDUs a transport block can carry.
int sdu_capacity(int tbs_bits, int header_bits);

/// UE-side MAC-hs reordering queue for one priority class.
///
/// Blocks are released in TSN order. A gap starts the release timer; on
/// expiry every block up to the one that armed the timer is released and
/// the gap is abandoned.
class ReorderingQueue {
 public:
  explicit ReorderingQueue(Time release_timeout = 100ms) : timeout_(release_timeout) {}

  std::vector<MacHsPdu> receive(MacHsPdu block, Time now);

  /// Call at the deadline returned by timer_deadline().
  std::vector<MacHsPdu> on_timer(Time now);

  std::optional<Time> timer_deadline() const;
  std::uint32_t next_expected() const { return next_expected_; }
  std::size_t held() const { return held_.size(); }
  std::uint64_t tsns_skipped() const { return skipped_; }
  std::uint64_t duplicates() const { return duplicates_; }

 private:
  void release_in_order(std::vector<MacHsPdu>& out);
  void rearm(Time now);

  Time timeout_;
  std::uint32_t next_expected_ = 0;
  std::map<std::uint32_t, MacHsPdu> held_;
  bool timer_active_ = false;
  Time timer_started_{0};
  std::uint32_t timer_tsn_ = 0;
  std::uint64_t skipped_ = 0;
  std::uint64_t duplicates_ = 0;
};

}  // namespace hsdpa
