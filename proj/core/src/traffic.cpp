#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hsdpa/traffic/cbr_source.hpp"
#include "hsdpa/traffic/metrics.hpp"
#include "hsdpa/traffic/playout.hpp"
#include "hsdpa/traffic/tcp.hpp"

namespace hsdpa {

// CBR

void CbrConfig::validate() const {
  if (!(rate_bps > 0.0)) throw std::invalid_argument("traffic.rt_rate_bps must be > 0");
  if (packet_bits <= 0) throw std::invalid_argument("traffic.rt_packet_bits must be > 0");
  if (duration < Time{0}) throw std::invalid_argument("session duration must be >= 0");
}

CbrSource::CbrSource(CbrConfig cfg) : cfg_(cfg) {
  cfg_.validate();
  interval_ = Time{std::llround(1e6 * cfg_.packet_bits / cfg_.rate_bps)};
  if (interval_ <= Time{0}) throw std::invalid_argument("CBR interval rounds to zero");
}

std::uint64_t CbrSource::total_packets() const {
  return static_cast<std::uint64_t>((cfg_.duration.count() + interval_.count() - 1) /
                                    interval_.count());
}

// TCP sender

void TcpConfig::validate() const {
  if (mss_bytes <= 0) throw std::invalid_argument("tcp.mss_bytes must be > 0");
  if (rwnd_bytes < mss_bytes) throw std::invalid_argument("tcp.rwnd_bytes must be >= mss");
  if (initial_cwnd_segments < 1) throw std::invalid_argument("tcp.initial_cwnd must be >= 1");
  if (dupack_threshold < 1) throw std::invalid_argument("tcp.dupack_threshold must be >= 1");
  if (min_rto <= Time{0} || initial_rto <= Time{0} || max_rto < min_rto) {
    throw std::invalid_argument("tcp RTO bounds are inconsistent");
  }
}

TcpSender::TcpSender(TcpConfig cfg)
    : cfg_(cfg),
      mss_(static_cast<std::uint64_t>(cfg.mss_bytes)),
      cwnd_(static_cast<std::uint64_t>(cfg.initial_cwnd_segments) * mss_),
      ssthresh_(static_cast<std::uint64_t>(cfg.rwnd_bytes)),
      rto_(cfg.initial_rto) {
  cfg_.validate();
}

std::uint64_t TcpSender::reduced_ssthresh() const { return std::max(flight() / 2, 2 * mss_); }

void TcpSender::send_segment(std::uint64_t seq, Time now, TcpActions& act) {
  const bool retx = seq < snd_max_;
  act.send.push_back(TcpSegment{seq, static_cast<int>(mss_), retx});
  ++counters_.segments_sent;
  if (retx) {
    ++counters_.retransmissions;
  } else if (!timing_) {
    timing_ = true;
    timed_seq_ = seq;
    timed_at_ = now;
  }
}

void TcpSender::fill_window(Time now, TcpActions& act) {
  const std::uint64_t wnd = std::min(cwnd_, static_cast<std::uint64_t>(cfg_.rwnd_bytes));
  while (snd_nxt_ + mss_ - snd_una_ <= wnd) {
    send_segment(snd_nxt_, now, act);
    snd_nxt_ += mss_;
    snd_max_ = std::max(snd_max_, snd_nxt_);
  }
}

TcpActions TcpSender::start(Time now) {
  TcpActions act;
  fill_window(now, act);
  if (!act.send.empty()) act.timer = TcpActions::Timer::restart;
  return act;
}

void TcpSender::sample_rtt(Time rtt) {
  if (!srtt_) {
    srtt_ = rtt;
    rttvar_ = rtt / 2;
  } else {
    const Time err = *srtt_ > rtt ? *srtt_ - rtt : rtt - *srtt_;
    rttvar_ = (3 * rttvar_ + err) / 4;
    srtt_ = (7 * *srtt_ + rtt) / 8;
  }
  rto_ = std::clamp(*srtt_ + std::max(cfg_.clock_granularity, 4 * rttvar_), cfg_.min_rto,
                    cfg_.max_rto);
  backoff_ = 0;
}

TcpActions TcpSender::on_ack(std::uint64_t ack, Time now) {
  TcpActions act;
  if (ack > snd_max_) return act;

  if (ack > snd_una_) {
    if (timing_ && ack > timed_seq_) {
      sample_rtt(now - timed_at_);
      timing_ = false;
    }
    snd_una_ = ack;
    snd_nxt_ = std::max(snd_nxt_, snd_una_);
    dupacks_ = 0;
    if (in_recovery_) {
      in_recovery_ = false;
    } else if (cwnd_ < ssthresh_) {
      cwnd_ += mss_;
    } else {
      cwnd_ += std::max<std::uint64_t>(1, mss_ * mss_ / cwnd_);
    }
    fill_window(now, act);
    act.timer = snd_una_ == snd_max_ ? TcpActions::Timer::stop : TcpActions::Timer::restart;
    return act;
  }

  if (ack == snd_una_ && snd_max_ > snd_una_) {
    ++dupacks_;
    ++counters_.dupacks;
    if (dupacks_ == cfg_.dupack_threshold && !in_recovery_) {
      ssthresh_ = reduced_ssthresh();
      cwnd_ = ssthresh_;
      in_recovery_ = true;
      recover_ = snd_max_;
      timing_ = false;
      send_segment(snd_una_, now, act);
      ++counters_.fast_retransmits;
      act.timer = TcpActions::Timer::restart;
    }
  }
  return act;
}

TcpActions TcpSender::on_timeout(Time now) {
  TcpActions act;
  if (snd_una_ == snd_max_) {
    act.timer = TcpActions::Timer::stop;
    return act;
  }
  ++counters_.timeouts;
  ssthresh_ = reduced_ssthresh();
  cwnd_ = mss_;
  snd_nxt_ = snd_una_;
  in_recovery_ = false;
  dupacks_ = 0;
  timing_ = false;
  ++backoff_;
  rto_ = std::min(rto_ * 2, cfg_.max_rto);
  fill_window(now, act);
  act.timer = TcpActions::Timer::restart;
  return act;
}

// TCP receiver

std::uint64_t TcpReceiver::on_segment(std::uint64_t seq, int len) {
  const auto end = seq + static_cast<std::uint64_t>(len);
  if (end <= rcv_nxt_) {
    ++duplicates_;
    return rcv_nxt_;
  }
  if (seq > rcv_nxt_) {
    if (!ooo_.emplace(seq, len).second) ++duplicates_;
    return rcv_nxt_;
  }
  rcv_nxt_ = end;
  auto it = ooo_.begin();
  while (it != ooo_.end() && it->first <= rcv_nxt_) {
    rcv_nxt_ = std::max(rcv_nxt_, it->first + static_cast<std::uint64_t>(it->second));
    it = ooo_.erase(it);
  }
  return rcv_nxt_;
}

// Playout

PlayoutBuffer::PlayoutBuffer(Time initial_buffering, Time spacing, Time session_end)
    : initial_buffering_(initial_buffering), spacing_(spacing), session_end_(session_end) {
  if (spacing <= Time{0}) throw std::invalid_argument("playout spacing must be > 0");
  if (initial_buffering < Time{0}) throw std::invalid_argument("initial buffering must be >= 0");
}

void PlayoutBuffer::on_arrival(Time arrival) {
  const Time nominal = last_play_ ? *last_play_ + spacing_ : arrival + initial_buffering_;
  const Time play = std::max(nominal, arrival);
  if (play >= session_end_) {
    ++unplayed_;
    return;
  }
  if (last_play_) {
    if (arrival > nominal) ++underruns_;
    if (record_) samples_.push_back(PlayoutSample{play, play - *last_play_});
  }
  last_play_ = play;
  ++played_;
}

// Metrics

double average_throughput_bps(std::uint64_t bytes, Time session) {
  if (session <= Time{0}) return 0.0;
  return static_cast<double>(bytes) * 8.0 / to_seconds(session);
}

double discard_ratio(std::uint64_t discarded, std::uint64_t admitted) {
  if (admitted == 0) return 0.0;
  return static_cast<double>(discarded) / static_cast<double>(admitted);
}

}  // namespace hsdpa
