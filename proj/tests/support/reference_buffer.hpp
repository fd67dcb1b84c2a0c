#pragma once

#include <cstdint>
#include <list>
#include <vector>

#include "hsdpa/mac/pdu.hpp"
#include "hsdpa/mac/tsp_buffer.hpp"
#include "hsdpa/sim/time.hpp"

namespace hsdpa::testing {

// Straightforward list-based model of the MAC-hs queue, written directly from
// the admission, switching and discard rules. Used as an oracle for
// TspBuffer.
class ReferenceBuffer {
 public:
  ReferenceBuffer(Scheme scheme, BufferConfig cfg, PriorityConfig prio)
      : scheme_(scheme), cfg_(cfg), prio_(prio) {}

  bool admit(MacdPdu pdu, Time now) {
    pdu.machs_arrival = now;
    const bool rt = pdu.flow == FlowClass::rt;
    bool ok = false;
    if (scheme_ == Scheme::cbs) {
      ok = size() < cfg_.total_capacity;
      if (ok) shared_.push_back(pdu);
    } else if (rt) {
      ok = static_cast<int>(rt_.size()) < cfg_.rt_threshold;
      if (ok) rt_.push_back(pdu);
    } else {
      ok = size() < cfg_.total_capacity;
      if (ok) nrt_.push_back(pdu);
    }
    if (!ok) ++(rt ? rt_drops : nrt_drops);
    return ok;
  }

  int sweep(Time now) {
    if (scheme_ == Scheme::cbs) return 0;
    int n = 0;
    for (auto it = rt_.begin(); it != rt_.end();) {
      if (now - it->machs_arrival >= prio_.discard_timeout) {
        it = rt_.erase(it);
        ++n;
      } else {
        break;
      }
    }
    dt_discards += static_cast<std::uint64_t>(n);
    return n;
  }

  Selection select(Time now) {
    if (scheme_ == Scheme::cbs) {
      if (shared_.empty()) return Selection::empty;
      return shared_.front().flow == FlowClass::rt ? Selection::rt : Selection::nrt;
    }
    sweep(now);
    const int r = static_cast<int>(rt_.size());
    const int n = static_cast<int>(nrt_.size());
    if (scheme_ == Scheme::dtsp) {
      const Time hol = rt_.empty() ? Time{0} : now - rt_.front().machs_arrival;
      if (r < prio_.delta && hol < prio_.switching_hol_limit() && n > 0) return Selection::nrt;
    }
    if (r > 0) return Selection::rt;
    if (n > 0) return Selection::nrt;
    return Selection::empty;
  }

  std::vector<MacdPdu> dequeue(Selection sel, int max_bits) {
    std::vector<MacdPdu> out;
    if (sel == Selection::empty) return out;
    const int room = max_bits / kMacdPduBits;
    const FlowClass cls = sel == Selection::rt ? FlowClass::rt : FlowClass::nrt;
    std::list<MacdPdu>& q = scheme_ == Scheme::cbs ? shared_ : (cls == FlowClass::rt ? rt_ : nrt_);
    while (static_cast<int>(out.size()) < room && !q.empty() && q.front().flow == cls) {
      out.push_back(q.front());
      q.pop_front();
    }
    return out;
  }

  int rt_count() const {
    if (scheme_ != Scheme::cbs) return static_cast<int>(rt_.size());
    int c = 0;
    for (const auto& p : shared_) c += p.flow == FlowClass::rt ? 1 : 0;
    return c;
  }
  int size() const { return static_cast<int>(rt_.size() + nrt_.size() + shared_.size()); }
  int nrt_count() const { return size() - rt_count(); }

  std::vector<MacdPdu> contents() const {
    std::vector<MacdPdu> out(shared_.begin(), shared_.end());
    out.insert(out.end(), rt_.begin(), rt_.end());
    out.insert(out.end(), nrt_.begin(), nrt_.end());
    return out;
  }

  std::uint64_t rt_drops = 0;
  std::uint64_t nrt_drops = 0;
  std::uint64_t dt_discards = 0;

 private:
  Scheme scheme_;
  BufferConfig cfg_;
  PriorityConfig prio_;
  std::list<MacdPdu> rt_;
  std::list<MacdPdu> nrt_;
  std::list<MacdPdu> shared_;
};

}  // namespace hsdpa::testing
