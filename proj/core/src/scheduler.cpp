#include "hsdpa/mac/scheduler.hpp"

#include <stdexcept>

namespace hsdpa {

RoundRobinScheduler::RoundRobinScheduler(int num_ues)
    : num_ues_(num_ues), served_(static_cast<std::size_t>(num_ues), 0) {
  if (num_ues < 1) throw std::invalid_argument("scheduler needs at least one UE");
}

std::optional<UeId> RoundRobinScheduler::schedule_tti(const std::function<bool(UeId)>& can_serve) {
  for (int k = 0; k < num_ues_; ++k) {
    const auto ue = static_cast<UeId>((cursor_ + k) % num_ues_);
    if (can_serve(ue)) {
      cursor_ = (static_cast<int>(ue) + 1) % num_ues_;
      ++served_[ue];
      return ue;
    }
  }
  ++idle_ttis_;
  return std::nullopt;
}

int sdu_capacity(int tbs_bits, int header_bits) {
  const int room = tbs_bits - header_bits;
  return room < kMacdPduBits ? 0 : room / kMacdPduBits;
}

std::optional<MacHsPdu> build_transport_block(TspBuffer& buffer, UeId ue,
                                              const AmcDecision& amc, int header_bits, Time now) {
  if (amc.cqi <= 0 || sdu_capacity(amc.tbs_bits, header_bits) == 0) return std::nullopt;
  const Selection sel = buffer.select_flow(now);
  if (sel == Selection::empty) return std::nullopt;
  auto sdus = buffer.dequeue_for_tti(sel, amc.tbs_bits - header_bits);
  if (sdus.empty()) return std::nullopt;

  MacHsPdu block;
  block.ue = ue;
  block.flow = sel == Selection::rt ? FlowClass::rt : FlowClass::nrt;
  block.sdu_count = static_cast<int>(sdus.size());
  block.sdus = std::move(sdus);
  block.header_bits = header_bits;
  block.cqi = amc.cqi;
  block.tbs_bits = amc.tbs_bits;
  block.transmitted_at = now;
  return block;
}

// ReorderingQueue

void ReorderingQueue::release_in_order(std::vector<MacHsPdu>& out) {
  auto it = held_.begin();
  while (it != held_.end() && it->first == next_expected_) {
    out.push_back(std::move(it->second));
    it = held_.erase(it);
    ++next_expected_;
  }
}

void ReorderingQueue::rearm(Time now) {
  if (timer_active_ && next_expected_ > timer_tsn_) timer_active_ = false;
  if (!timer_active_ && !held_.empty()) {
    timer_active_ = true;
    timer_started_ = now;
    timer_tsn_ = held_.rbegin()->first;
  }
}

std::vector<MacHsPdu> ReorderingQueue::receive(MacHsPdu block, Time now) {
  std::vector<MacHsPdu> out;
  const std::uint32_t tsn = block.tsn;
  if (tsn < next_expected_ || held_.count(tsn) != 0) {
    ++duplicates_;
    return out;
  }
  held_.emplace(tsn, std::move(block));
  release_in_order(out);
  rearm(now);
  return out;
}

std::vector<MacHsPdu> ReorderingQueue::on_timer(Time now) {
  std::vector<MacHsPdu> out;
  if (!timer_active_ || now < timer_started_ + timeout_) return out;
  timer_active_ = false;
  auto it = held_.begin();
  while (it != held_.end() && it->first <= timer_tsn_) {
    skipped_ += it->first - next_expected_;
    next_expected_ = it->first + 1;
    out.push_back(std::move(it->second));
    it = held_.erase(it);
  }
  release_in_order(out);
  rearm(now);
  return out;
}

std::optional<Time> ReorderingQueue::timer_deadline() const {
  if (!timer_active_) return std::nullopt;
  return timer_started_ + timeout_;
}

}  // namespace hsdpa
