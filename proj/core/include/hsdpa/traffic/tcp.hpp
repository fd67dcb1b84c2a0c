#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "hsdpa/sim/time.hpp"

namespace hsdpa {

struct TcpConfig {
  int mss_bytes = 512;
  int rwnd_bytes = 32768;
  int initial_cwnd_segments = 1;
  int dupack_threshold = 3;
  Time initial_rto = 3s;
  Time min_rto = 1s;
  Time max_rto = 64s;
  Time clock_granularity = 100ms;

  void validate() const;
};

struct TcpSegment {
  std::uint64_t seq = 0;  // first byte
  int len = 0;
  bool retransmission = false;
};

/// What the caller must do after a sender event.
struct TcpActions {
  std::vector<TcpSegment> send;
  enum class Timer : std::uint8_t { keep, restart, stop } timer = Timer::keep;
};

struct TcpSenderCounters {
  std::uint64_t segments_sent = 0;
  std::uint64_t retransmissions = 0;
  std::uint64_t fast_retransmits = 0;
  std::uint64_t timeouts = 0;
  std::uint64_t dupacks = 0;
};

/// Reno-style bulk sender with an infinite backlog.
///
/// Fast recovery is simplified: on the third duplicate ACK the missing
/// segment is resent and cwnd drops straight to ssthresh. A timeout
/// collapses cwnd to one segment and goes back to snd_una. The RTO uses the
/// Jacobson estimator with Karn's rule and exponential backoff.
class TcpSender {
 public:
  explicit TcpSender(TcpConfig cfg);

  TcpActions start(Time now);
  TcpActions on_ack(std::uint64_t ack, Time now);
  TcpActions on_timeout(Time now);

  std::uint64_t snd_una() const { return snd_una_; }
  std::uint64_t snd_nxt() const { return snd_nxt_; }
  std::uint64_t snd_max() const { return snd_max_; }
  std::uint64_t flight() const { return snd_nxt_ - snd_una_; }
  std::uint64_t cwnd() const { return cwnd_; }
  std::uint64_t ssthresh() const { return ssthresh_; }
  bool in_recovery() const { return in_recovery_; }
  int dupack_count() const { return dupacks_; }
  Time rto() const { return rto_; }
  std::optional<Time> srtt() const { return srtt_; }
  const TcpSenderCounters& counters() const { return counters_; }
  const TcpConfig& config() const { return cfg_; }

 private:
  void fill_window(Time now, TcpActions& act);
  void send_segment(std::uint64_t seq, Time now, TcpActions& act);
  void sample_rtt(Time rtt);
  std::uint64_t reduced_ssthresh() const;

  TcpConfig cfg_;
  std::uint64_t mss_;
  std::uint64_t snd_una_ = 0;
  std::uint64_t snd_nxt_ = 0;
  std::uint64_t snd_max_ = 0;
  std::uint64_t cwnd_;
  std::uint64_t ssthresh_;
  std::uint64_t recover_ = 0;
  bool in_recovery_ = false;
  int dupacks_ = 0;
  int backoff_ = 0;

  std::optional<Time> srtt_;
  Time rttvar_{0};
  Time rto_;
  bool timing_ = false;
  std::uint64_t timed_seq_ = 0;
  Time timed_at_{0};

  TcpSenderCounters counters_;
};

/// Cumulative-ACK receiver without delayed ACKs.
class TcpReceiver {
 public:
  explicit TcpReceiver(int mss_bytes = 512) : mss_(static_cast<std::uint64_t>(mss_bytes)) {}

  /// Returns the ACK to send back (rcv_nxt after processing).
  std::uint64_t on_segment(std::uint64_t seq, int len);

  std::uint64_t rcv_nxt() const { return rcv_nxt_; }
  std::uint64_t delivered_bytes() const { return rcv_nxt_; }
  std::uint64_t duplicate_segments() const { return duplicates_; }
  std::size_t out_of_order_segments() const { return ooo_.size(); }

 private:
  std::uint64_t mss_;
  std::uint64_t rcv_nxt_ = 0;
  std::set<std::pair<std::uint64_t, int>> ooo_;
  std::uint64_t duplicates_ = 0;
};

}  // namespace hsdpa
