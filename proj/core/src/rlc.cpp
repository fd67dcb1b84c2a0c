#include "hsdpa/rlc/rlc.hpp"

#include <algorithm>
#include <stdexcept>

namespace hsdpa {

namespace {

DeliveredSdu to_delivered(const MacdPdu& first) {
  return DeliveredSdu{first.sdu_id, first.app_tag, first.segment_count, first.created_at};
}

void reassemble(const MacdPdu& pdu, std::optional<MacdPdu>& assembling, int& next_segment,
                std::uint64_t& partial_drops, std::uint64_t& delivered,
                std::vector<DeliveredSdu>& out) {
  if (pdu.segment_index == 0) {
    if (assembling) {
      ++partial_drops;
      assembling.reset();
    }
    if (pdu.last_in_sdu()) {
      out.push_back(to_delivered(pdu));
      ++delivered;
      return;
    }
    assembling = pdu;
    next_segment = 1;
    return;
  }
  if (assembling && assembling->sdu_id == pdu.sdu_id && pdu.segment_index == next_segment) {
    ++next_segment;
    if (pdu.last_in_sdu()) {
      out.push_back(to_delivered(*assembling));
      ++delivered;
      assembling.reset();
    }
    return;
  }
  if (assembling) {
    ++partial_drops;
    assembling.reset();
  }
}

}  // namespace

void RlcConfig::validate() const {
  if (pdu_size_bits <= 0) throw std::invalid_argument("rlc.pdu_size_bits must be > 0");
  if (tx_window <= 0 || rx_window <= 0) throw std::invalid_argument("rlc windows must be > 0");
  if (max_dat < 1) throw std::invalid_argument("rlc.max_dat must be >= 1");
  if (retransmission_delay < Time{0} || status_delay < Time{0}) {
    throw std::invalid_argument("rlc delays must be >= 0");
  }
}

int pdu_count_for(int sdu_bits, int pdu_size_bits) {
  if (sdu_bits <= 0) throw std::invalid_argument("segment: SDU size must be > 0");
  return (sdu_bits + pdu_size_bits - 1) / pdu_size_bits;
}

int padding_bits_for(int sdu_bits, int pdu_size_bits) {
  return pdu_count_for(sdu_bits, pdu_size_bits) * pdu_size_bits - sdu_bits;
}

std::vector<MacdPdu> segment(FlowClass flow, const SduInfo& sdu, std::uint32_t first_seq,
                             int pdu_size_bits) {
  const int n = pdu_count_for(sdu.size_bits, pdu_size_bits);
  std::vector<MacdPdu> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& p = out[static_cast<std::size_t>(i)];
    p.flow = flow;
    p.rlc_seq = first_seq + static_cast<std::uint32_t>(i);
    p.sdu_id = sdu.sdu_id;
    p.segment_index = static_cast<std::uint16_t>(i);
    p.segment_count = static_cast<std::uint16_t>(n);
    p.app_tag = sdu.app_tag;
    p.created_at = sdu.created_at;
  }
  return out;
}

// AmSender

AmSender::AmSender(RlcConfig cfg) : cfg_(cfg) { cfg_.validate(); }

void AmSender::enqueue_sdu(const SduInfo& sdu) {
  for (auto& pdu : segment(FlowClass::nrt, sdu, next_seq_, cfg_.pdu_size_bits)) {
    records_.push_back(Record{pdu, PduState::unsent, 0, Time{0}});
  }
  next_seq_ += static_cast<std::uint32_t>(pdu_count_for(sdu.size_bits, cfg_.pdu_size_bits));
  ++counters_.sdus_accepted;
}

AmSender::Record* AmSender::record(std::uint32_t seq) {
  if (seq < base_seq_ || seq - base_seq_ >= records_.size()) return nullptr;
  return &records_[seq - base_seq_];
}

const AmSender::Record* AmSender::record(std::uint32_t seq) const {
  if (seq < base_seq_ || seq - base_seq_ >= records_.size()) return nullptr;
  return &records_[seq - base_seq_];
}

std::optional<int> AmSender::tx_count(std::uint32_t seq) const {
  const Record* r = record(seq);
  if (!r || r->state == PduState::done) return std::nullopt;
  return r->tx_count;
}

bool AmSender::eligible(const Record& r, Time now) const {
  return r.state == PduState::outstanding && now - r.last_tx >= cfg_.retransmission_delay;
}

void AmSender::mark_done(std::uint32_t seq) {
  if (Record* r = record(seq)) r->state = PduState::done;
  missing_.erase(seq);
}

void AmSender::discard_sdu_of(std::uint32_t seq) {
  const Record* r = record(seq);
  if (!r) return;
  const std::uint32_t first = seq - r->pdu.segment_index;
  const std::uint32_t last = first + r->pdu.segment_count - 1;
  for (std::uint32_t s = first; s <= last; ++s) mark_done(s);
  pending_mrw_.push_back(MoveWindow{first, last});
  ++counters_.sdus_discarded;
}

void AmSender::advance_base() {
  while (!records_.empty() && records_.front().state == PduState::done) {
    records_.pop_front();
    ++base_seq_;
  }
  vt_s_ = std::max(vt_s_, base_seq_);
}

void AmSender::poll(Time now) {
  std::vector<std::uint32_t> expired;
  int ready = 0;
  for (std::uint32_t seq : missing_) {
    const Record* r = record(seq);
    if (!r || !eligible(*r, now)) continue;
    if (r->tx_count >= cfg_.max_dat) {
      expired.push_back(seq);
    } else {
      ++ready;
    }
  }
  for (std::uint32_t seq : expired) discard_sdu_of(seq);
  eligible_retx_ = ready;
  advance_base();
}

int AmSender::new_pdus_sendable() const {
  const std::uint32_t window_end = base_seq_ + static_cast<std::uint32_t>(cfg_.tx_window);
  const std::uint32_t end = base_seq_ + static_cast<std::uint32_t>(records_.size());
  const std::uint32_t limit = std::min(window_end, end);
  int n = 0;
  for (std::uint32_t s = vt_s_; s < limit; ++s) {
    n += record(s)->state == PduState::unsent;
  }
  return n;
}

int AmSender::ready_pdus() const { return eligible_retx_ + new_pdus_sendable(); }

std::vector<MacdPdu> AmSender::take(int count, Time now) {
  std::vector<MacdPdu> out;
  if (count <= 0) return out;
  poll(now);

  std::vector<std::uint32_t> resent;
  for (std::uint32_t seq : missing_) {
    if (static_cast<int>(out.size()) >= count) break;
    Record* r = record(seq);
    if (!r || !eligible(*r, now)) continue;
    ++r->tx_count;
    r->last_tx = now;
    out.push_back(r->pdu);
    resent.push_back(seq);
    ++counters_.pdus_retransmitted;
  }
  for (std::uint32_t seq : resent) missing_.erase(seq);
  eligible_retx_ -= static_cast<int>(resent.size());

  const std::uint32_t window_end = base_seq_ + static_cast<std::uint32_t>(cfg_.tx_window);
  const std::uint32_t end = base_seq_ + static_cast<std::uint32_t>(records_.size());
  while (static_cast<int>(out.size()) < count && vt_s_ < end) {
    if (vt_s_ >= window_end) {
      ++counters_.window_stalls;
      break;
    }
    Record* r = record(vt_s_);
    ++vt_s_;
    if (r->state != PduState::unsent) continue;
    r->state = PduState::outstanding;
    r->tx_count = 1;
    r->last_tx = now;
    out.push_back(r->pdu);
    ++counters_.new_pdus_sent;
  }
  return out;
}

void AmSender::on_status(const StatusReport& report, Time now) {
  ++counters_.status_reports;
  const std::uint32_t acked_to = std::min(report.ack_seq, vt_s_);
  for (std::uint32_t s = base_seq_; s < acked_to; ++s) mark_done(s);

  auto miss = report.missing.begin();
  const std::uint32_t top = std::min(report.highest_seq, vt_s_);
  for (std::uint32_t s = std::max(report.ack_seq, base_seq_); s < top; ++s) {
    while (miss != report.missing.end() && *miss < s) ++miss;
    Record* r = record(s);
    if (!r || r->state != PduState::outstanding) continue;
    if (miss != report.missing.end() && *miss == s) {
      missing_.insert(s);
    } else {
      mark_done(s);
    }
  }
  poll(now);
}

std::vector<MoveWindow> AmSender::take_move_windows() {
  std::vector<MoveWindow> out;
  out.swap(pending_mrw_);
  return out;
}

// AmReceiver

AmReceiver::AmReceiver(RlcConfig cfg) : cfg_(cfg) { cfg_.validate(); }

std::vector<DeliveredSdu> AmReceiver::receive(const MacdPdu& pdu) {
  ++counters_.pdus_received;
  const std::uint32_t s = pdu.rlc_seq;
  if (s < vr_r_ || buffer_.count(s) != 0) {
    ++counters_.duplicates;
    return {};
  }
  if (s - vr_r_ >= static_cast<std::uint32_t>(cfg_.rx_window)) {
    ++counters_.outside_window;
    return {};
  }
  buffer_.emplace(s, Slot{false, pdu});
  vr_h_ = std::max(vr_h_, s + 1);
  return drain();
}

std::vector<DeliveredSdu> AmReceiver::move_window(const MoveWindow& mrw) {
  for (std::uint32_t s = std::max(mrw.first_seq, vr_r_); s <= mrw.last_seq; ++s) {
    buffer_[s].skipped = true;
  }
  if (mrw.last_seq >= vr_r_) vr_h_ = std::max(vr_h_, mrw.last_seq + 1);
  return drain();
}

std::vector<DeliveredSdu> AmReceiver::drain() {
  std::vector<DeliveredSdu> out;
  while (!buffer_.empty() && buffer_.begin()->first == vr_r_) {
    const Slot& slot = buffer_.begin()->second;
    if (slot.skipped) {
      drop_partial();
    } else {
      consume(slot.pdu, out);
    }
    buffer_.erase(buffer_.begin());
    ++vr_r_;
  }
  return out;
}

void AmReceiver::consume(const MacdPdu& pdu, std::vector<DeliveredSdu>& out) {
  reassemble(pdu, assembling_, next_segment_, counters_.partial_sdus_dropped,
             counters_.sdus_delivered, out);
}

void AmReceiver::drop_partial() {
  if (assembling_) {
    ++counters_.partial_sdus_dropped;
    assembling_.reset();
  }
}

StatusReport AmReceiver::status() const {
  StatusReport report;
  report.ack_seq = vr_r_;
  report.highest_seq = vr_h_;
  auto it = buffer_.begin();
  for (std::uint32_t s = vr_r_; s < vr_h_; ++s) {
    if (it != buffer_.end() && it->first == s) {
      ++it;
    } else {
      report.missing.push_back(s);
    }
  }
  return report;
}

// UM

std::vector<MacdPdu> UmSender::send(const SduInfo& sdu) {
  auto pdus = segment(FlowClass::rt, sdu, next_seq_, pdu_size_bits_);
  next_seq_ += static_cast<std::uint32_t>(pdus.size());
  return pdus;
}

std::vector<DeliveredSdu> UmReceiver::receive(const MacdPdu& pdu) {
  ++counters_.pdus_received;
  std::vector<DeliveredSdu> out;
  if (pdu.rlc_seq < expected_) {
    ++counters_.late_pdus;
    return out;
  }
  if (pdu.rlc_seq > expected_) {
    counters_.pdus_skipped += pdu.rlc_seq - expected_;
    if (assembling_) {
      ++counters_.partial_sdus_dropped;
      assembling_.reset();
    }
  }
  expected_ = pdu.rlc_seq + 1;
  reassemble(pdu, assembling_, next_segment_, counters_.partial_sdus_dropped,
             counters_.sdus_delivered, out);
  return out;
}

}  // namespace hsdpa
