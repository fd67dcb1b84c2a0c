#include "hsdpa/mac/tsp_buffer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hsdpa {

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::cbs: return "cbs";
    case Scheme::stsp: return "stsp";
    case Scheme::dtsp: return "dtsp";
  }
  return "?";
}

void BufferConfig::validate() const {
  const int n = total_capacity, r = rt_threshold, l = fc_low_threshold, h = fc_high_threshold;
  if (!(0 < r && r < l && l < h && h < n)) {
    throw std::invalid_argument("buffer thresholds must satisfy 0 < R < L < H < N (got R=" +
                                std::to_string(r) + " L=" + std::to_string(l) +
                                " H=" + std::to_string(h) + " N=" + std::to_string(n) + ")");
  }
}

Time rt_inter_arrival(double lambda_rt_bps, int pdu_size_bits) {
  if (lambda_rt_bps <= 0.0 || pdu_size_bits <= 0) {
    throw std::invalid_argument("rt_inter_arrival: rate and PDU size must be positive");
  }
  return Time{std::llround(1e6 * pdu_size_bits / lambda_rt_bps)};
}

int switching_threshold(Time delay_budget, double lambda_rt_bps, int pdu_size_bits) {
  const Time i = rt_inter_arrival(lambda_rt_bps, pdu_size_bits);
  return static_cast<int>(delay_budget.count() / i.count());
}

int rt_threshold_for(double lambda_rt_bps, Time max_delay_budget, int pdu_size_bits) {
  return static_cast<int>(std::floor(lambda_rt_bps * to_seconds(max_delay_budget) / pdu_size_bits +
                                     1e-9));
}

TspBuffer::TspBuffer(Scheme scheme, BufferConfig buffer, PriorityConfig priority)
    : scheme_(scheme), buffer_(buffer), priority_(priority) {
  buffer_.validate();
  if (priority_.delta < 0) throw std::invalid_argument("delta must be >= 0");
}

Admission TspBuffer::offer(MacdPdu pdu, Time now) {
  return scheme_ == Scheme::cbs ? admit_cbs(std::move(pdu), now) : admit(std::move(pdu), now);
}

Admission TspBuffer::admit(MacdPdu pdu, Time now) {
  pdu.machs_arrival = now;
  if (pdu.flow == FlowClass::rt) {
    ++counters_.rt_arrivals;
    if (rt_count_ < buffer_.rt_threshold) {
      rt_queue_.push_back(pdu);
      ++rt_count_;
      ++counters_.rt_admitted;
      return Admission::admitted;
    }
    ++counters_.rt_admission_drops;
    return Admission::dropped;
  }
  ++counters_.nrt_arrivals;
  if (rt_count_ + nrt_count_ < buffer_.total_capacity) {
    nrt_queue_.push_back(pdu);
    ++nrt_count_;
    ++counters_.nrt_admitted;
    return Admission::admitted;
  }
  ++counters_.nrt_admission_drops;
  return Admission::dropped;
}

Admission TspBuffer::admit_cbs(MacdPdu pdu, Time now) {
  pdu.machs_arrival = now;
  const bool rt = pdu.flow == FlowClass::rt;
  ++(rt ? counters_.rt_arrivals : counters_.nrt_arrivals);
  if (occupancy() >= buffer_.total_capacity) {
    ++(rt ? counters_.rt_admission_drops : counters_.nrt_admission_drops);
    return Admission::dropped;
  }
  shared_queue_.push_back(pdu);
  ++(rt ? rt_count_ : nrt_count_);
  ++(rt ? counters_.rt_admitted : counters_.nrt_admitted);
  return Admission::admitted;
}

Selection TspBuffer::select_flow(Time now) {
  Selection sel = Selection::empty;
  switch (scheme_) {
    case Scheme::cbs:
      if (!shared_queue_.empty()) {
        sel = shared_queue_.front().flow == FlowClass::rt ? Selection::rt : Selection::nrt;
      }
      break;
    case Scheme::stsp:
      discard_timer_sweep(now);
      if (rt_count_ > 0) {
        sel = Selection::rt;
      } else if (nrt_count_ > 0) {
        sel = Selection::nrt;
      }
      break;
    case Scheme::dtsp:
      discard_timer_sweep(now);
      if (rt_count_ < priority_.delta && rt_hol_delay(now) < priority_.switching_hol_limit() &&
          nrt_count_ > 0) {
        sel = Selection::nrt;
      } else if (rt_count_ > 0) {
        sel = Selection::rt;
      } else if (nrt_count_ > 0) {
        sel = Selection::nrt;
      }
      break;
  }
  if (sel == Selection::rt) ++counters_.rt_selections;
  if (sel == Selection::nrt) ++counters_.nrt_selections;
  return sel;
}

std::vector<MacdPdu> TspBuffer::dequeue_for_tti(Selection flow, int max_bits) {
  std::vector<MacdPdu> out;
  if (flow == Selection::empty || max_bits < kMacdPduBits) return out;
  const auto limit = static_cast<std::size_t>(max_bits / kMacdPduBits);
  const FlowClass cls = flow == Selection::rt ? FlowClass::rt : FlowClass::nrt;

  if (scheme_ == Scheme::cbs) {
    while (out.size() < limit && !shared_queue_.empty() && shared_queue_.front().flow == cls) {
      out.push_back(shared_queue_.front());
      shared_queue_.pop_front();
    }
  } else {
    auto& q = cls == FlowClass::rt ? rt_queue_ : nrt_queue_;
    while (out.size() < limit && !q.empty()) {
      out.push_back(q.front());
      q.pop_front();
    }
  }
  const auto taken = static_cast<int>(out.size());
  if (cls == FlowClass::rt) {
    rt_count_ -= taken;
    counters_.rt_dequeued += static_cast<std::uint64_t>(taken);
  } else {
    nrt_count_ -= taken;
    counters_.nrt_dequeued += static_cast<std::uint64_t>(taken);
  }
  return out;
}

int TspBuffer::discard_timer_sweep(Time now) {
  if (scheme_ == Scheme::cbs) return 0;
  int discarded = 0;
  while (!rt_queue_.empty() && now - rt_queue_.front().machs_arrival >= priority_.discard_timeout) {
    rt_queue_.pop_front();
    --rt_count_;
    ++discarded;
  }
  counters_.rt_dt_discards += static_cast<std::uint64_t>(discarded);
  return discarded;
}

const MacdPdu* TspBuffer::rt_head() const {
  if (scheme_ != Scheme::cbs) return rt_queue_.empty() ? nullptr : &rt_queue_.front();
  for (const auto& p : shared_queue_) {
    if (p.flow == FlowClass::rt) return &p;
  }
  return nullptr;
}

Time TspBuffer::rt_hol_delay(Time now) const {
  const MacdPdu* head = rt_head();
  return head ? now - head->machs_arrival : Time{0};
}

std::vector<MacdPdu> TspBuffer::contents() const {
  std::vector<MacdPdu> out;
  if (scheme_ == Scheme::cbs) {
    out.assign(shared_queue_.begin(), shared_queue_.end());
  } else {
    out.assign(rt_queue_.begin(), rt_queue_.end());
    out.insert(out.end(), nrt_queue_.begin(), nrt_queue_.end());
  }
  return out;
}

}  // namespace hsdpa
