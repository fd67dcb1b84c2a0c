#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hsdpa/mac/pdu.hpp"

namespace hsdpa {

/// One stop-and-wait HARQ process.
struct HarqProcess {
  enum class State : std::uint8_t { idle, awaiting_feedback, pending_retransmission };

  int id = 0;
  State state = State::idle;
  MacHsPdu payload;
  int tx_count = 0;
  std::uint64_t nack_order = 0;  // orders pending retransmissions oldest-first
};

/// Per-UE set of HARQ processes.
///
/// A NACKed payload stays on its process, byte-identical, until the UE's
/// next scheduling opportunity retransmits it. After max_transmissions
/// failures the payload is released to the caller as dropped.
class HarqEntity {
 public:
  enum class Outcome : std::uint8_t { delivered, retry, dropped };

  struct Feedback {
    Outcome outcome;
    int tx_count;
    MacHsPdu payload;  // moved out for delivered/dropped, empty for retry
  };

  HarqEntity(int num_processes, int max_transmissions);

  std::optional<int> idle_process() const;
  std::optional<int> next_retransmission() const;
  bool has_pending_retransmission() const { return pending_retx_ > 0; }
  int busy_count() const;

  /// First attempt of a new payload on an idle process. Returns tx_count (1).
  /// Throws std::logic_error if the process is busy.
  int transmit(int process, MacHsPdu payload);

  /// Next attempt of the NACKed payload. Returns the new tx_count.
  int retransmit(int process);

  Feedback on_feedback(int process, bool ack);

  const HarqProcess& process(int id) const { return processes_.at(static_cast<std::size_t>(id)); }
  int max_transmissions() const { return max_transmissions_; }

 private:
  std::vector<HarqProcess> processes_;
  int max_transmissions_;
  int pending_retx_ = 0;
  std::uint64_t nack_counter_ = 0;
};

}  // namespace hsdpa
