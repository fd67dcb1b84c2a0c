#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "hsdpa/flow/flow_control.hpp"
#include "hsdpa/mac/pdu.hpp"
#include "hsdpa/sim/time.hpp"

namespace hsdpa {

struct RlcConfig {
  int pdu_size_bits = kMacdPduBits;
  int tx_window = 1024;
  int rx_window = 1024;
  int max_dat = 6;
  bool poll_every_pdu = true;
  Time retransmission_delay = 200ms;
  bool in_sequence_delivery = true;
  Time status_delay = 5ms;

  void validate() const;
};

/// Number of PDUs an SDU of `sdu_bits` occupies.
int pdu_count_for(int sdu_bits, int pdu_size_bits = kMacdPduBits);

/// Padding in the last PDU.
int padding_bits_for(int sdu_bits, int pdu_size_bits = kMacdPduBits);

struct SduInfo {
  std::uint32_t sdu_id = 0;
  std::uint64_t app_tag = 0;
  int size_bits = 0;
  Time created_at{0};
};

/// Splits an SDU into consecutive-SN PDUs starting at first_seq.
std::vector<MacdPdu> segment(FlowClass flow, const SduInfo& sdu, std::uint32_t first_seq,
                             int pdu_size_bits = kMacdPduBits);

/// A reassembled SDU handed to the upper layer.
struct DeliveredSdu {
  std::uint32_t sdu_id = 0;
  std::uint64_t app_tag = 0;
  int segment_count = 0;
  Time created_at{0};
};

/// Receiver status: everything below ack_seq arrived; SNs in
/// [ack_seq, highest_seq) are present except the listed ones.
struct StatusReport {
  std::uint32_t ack_seq = 0;
  std::uint32_t highest_seq = 0;
  std::vector<std::uint32_t> missing;
};

/// Tells the receiver that SNs [first_seq, last_seq] were abandoned.
struct MoveWindow {
  std::uint32_t first_seq = 0;
  std::uint32_t last_seq = 0;
};

struct AmSenderCounters {
  std::uint64_t sdus_accepted = 0;
  std::uint64_t new_pdus_sent = 0;
  std::uint64_t pdus_retransmitted = 0;
  std::uint64_t sdus_discarded = 0;
  std::uint64_t status_reports = 0;
  std::uint64_t window_stalls = 0;
};

/// RLC acknowledged-mode transmitter at the RNC.
///
/// SNs are assigned at segmentation and never wrap. A PDU reported missing
/// becomes eligible for retransmission once retransmission_delay has passed
/// since its last transmission. When an eligible PDU has already been sent
/// max_dat times its whole SDU is discarded and a MoveWindow is queued for
/// the receiver.
class AmSender : public NrtPduSource {
 public:
  explicit AmSender(RlcConfig cfg);

  void enqueue_sdu(const SduInfo& sdu);

  /// Re-evaluates retransmission timers and MaxDAT discards.
  void poll(Time now);

  int ready_pdus() const override;
  std::vector<MacdPdu> take(int count, Time now) override;

  void on_status(const StatusReport& report, Time now);

  /// Drains MoveWindow notifications generated since the last call.
  std::vector<MoveWindow> take_move_windows();

  std::uint32_t vt_a() const { return base_seq_; }
  std::uint32_t vt_s() const { return vt_s_; }
  int in_flight() const { return static_cast<int>(vt_s_ - base_seq_); }
  int unsent_pdus() const { return static_cast<int>(base_seq_ + records_.size() - vt_s_); }
  int missing_count() const { return static_cast<int>(missing_.size()); }
  /// Transmission count of a live PDU, nullopt once acknowledged or discarded.
  std::optional<int> tx_count(std::uint32_t seq) const;
  const AmSenderCounters& counters() const { return counters_; }
  const RlcConfig& config() const { return cfg_; }

 private:
  enum class PduState : std::uint8_t { unsent, outstanding, done };

  struct Record {
    MacdPdu pdu;
    PduState state = PduState::unsent;
    int tx_count = 0;
    Time last_tx{0};
  };

  Record* record(std::uint32_t seq);
  const Record* record(std::uint32_t seq) const;
  bool eligible(const Record& r, Time now) const;
  void mark_done(std::uint32_t seq);
  void discard_sdu_of(std::uint32_t seq);
  void advance_base();
  int new_pdus_sendable() const;

  RlcConfig cfg_;
  std::deque<Record> records_;  // records_[i] holds SN base_seq_ + i
  std::uint32_t base_seq_ = 0;  // VT(A)
  std::uint32_t vt_s_ = 0;      // first never-sent SN
  std::uint32_t next_seq_ = 0;  // next SN to assign
  std::set<std::uint32_t> missing_;
  int eligible_retx_ = 0;
  std::vector<MoveWindow> pending_mrw_;
  AmSenderCounters counters_;
};

struct AmReceiverCounters {
  std::uint64_t pdus_received = 0;
  std::uint64_t duplicates = 0;
  std::uint64_t sdus_delivered = 0;
  std::uint64_t partial_sdus_dropped = 0;
  std::uint64_t outside_window = 0;
};

/// RLC acknowledged-mode receiver at the UE with in-sequence delivery.
class AmReceiver {
 public:
  explicit AmReceiver(RlcConfig cfg);

  std::vector<DeliveredSdu> receive(const MacdPdu& pdu);
  std::vector<DeliveredSdu> move_window(const MoveWindow& mrw);
  StatusReport status() const;

  std::uint32_t vr_r() const { return vr_r_; }
  std::uint32_t vr_h() const { return vr_h_; }
  const AmReceiverCounters& counters() const { return counters_; }

 private:
  struct Slot {
    bool skipped = false;
    MacdPdu pdu;
  };

  std::vector<DeliveredSdu> drain();
  void consume(const MacdPdu& pdu, std::vector<DeliveredSdu>& out);
  void drop_partial();

  RlcConfig cfg_;
  std::uint32_t vr_r_ = 0;
  std::uint32_t vr_h_ = 0;
  std::map<std::uint32_t, Slot> buffer_;
  std::optional<MacdPdu> assembling_;  // first PDU of the SDU being reassembled
  int next_segment_ = 0;
  AmReceiverCounters counters_;
};

/// RLC unacknowledged-mode transmitter: segmentation and SN assignment only.
class UmSender {
 public:
  explicit UmSender(int pdu_size_bits = kMacdPduBits) : pdu_size_bits_(pdu_size_bits) {}

  std::vector<MacdPdu> send(const SduInfo& sdu);
  std::uint32_t next_seq() const { return next_seq_; }

 private:
  int pdu_size_bits_;
  std::uint32_t next_seq_ = 0;
};

struct UmReceiverCounters {
  std::uint64_t pdus_received = 0;
  std::uint64_t pdus_skipped = 0;  // SN gaps
  std::uint64_t late_pdus = 0;
  std::uint64_t sdus_delivered = 0;
  std::uint64_t partial_sdus_dropped = 0;
};

/// RLC unacknowledged-mode receiver. Gaps are skipped without recovery and
/// an SDU that straddles a gap is dropped.
class UmReceiver {
 public:
  std::vector<DeliveredSdu> receive(const MacdPdu& pdu);

  std::uint32_t expected_seq() const { return expected_; }
  const UmReceiverCounters& counters() const { return counters_; }

 private:
  std::uint32_t expected_ = 0;
  std::optional<MacdPdu> assembling_;
  int next_segment_ = 0;
  UmReceiverCounters counters_;
};

}  // namespace hsdpa
