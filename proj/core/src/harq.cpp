#include "hsdpa/radio/harq.hpp"

#include <stdexcept>
#include <string>

namespace hsdpa {

HarqEntity::HarqEntity(int num_processes, int max_transmissions)
    : max_transmissions_(max_transmissions) {
  if (num_processes < 1 || max_transmissions < 1) {
    throw std::invalid_argument("HarqEntity: need >= 1 process and >= 1 transmission");
  }
  processes_.resize(static_cast<std::size_t>(num_processes));
  for (int i = 0; i < num_processes; ++i) processes_[static_cast<std::size_t>(i)].id = i;
}

std::optional<int> HarqEntity::idle_process() const {
  for (const auto& p : processes_) {
    if (p.state == HarqProcess::State::idle) return p.id;
  }
  return std::nullopt;
}

std::optional<int> HarqEntity::next_retransmission() const {
  std::optional<int> best;
  std::uint64_t best_order = 0;
  for (const auto& p : processes_) {
    if (p.state == HarqProcess::State::pending_retransmission &&
        (!best || p.nack_order < best_order)) {
      best = p.id;
      best_order = p.nack_order;
    }
  }
  return best;
}

int HarqEntity::busy_count() const {
  int n = 0;
  for (const auto& p : processes_) n += p.state != HarqProcess::State::idle;
  return n;
}

int HarqEntity::transmit(int process, MacHsPdu payload) {
  auto& p = processes_.at(static_cast<std::size_t>(process));
  if (p.state != HarqProcess::State::idle) {
    throw std::logic_error("HARQ transmit on busy process " + std::to_string(process));
  }
  payload.harq_process = process;
  p.payload = std::move(payload);
  p.tx_count = 1;
  p.state = HarqProcess::State::awaiting_feedback;
  return p.tx_count;
}

int HarqEntity::retransmit(int process) {
  auto& p = processes_.at(static_cast<std::size_t>(process));
  if (p.state != HarqProcess::State::pending_retransmission) {
    throw std::logic_error("HARQ retransmit without pending NACK on process " +
                           std::to_string(process));
  }
  --pending_retx_;
  ++p.tx_count;
  p.state = HarqProcess::State::awaiting_feedback;
  return p.tx_count;
}

HarqEntity::Feedback HarqEntity::on_feedback(int process, bool ack) {
  auto& p = processes_.at(static_cast<std::size_t>(process));
  if (p.state != HarqProcess::State::awaiting_feedback) {
    throw std::logic_error("HARQ feedback for process not awaiting it: " + std::to_string(process));
  }
  if (ack || p.tx_count >= max_transmissions_) {
    Feedback fb{ack ? Outcome::delivered : Outcome::dropped, p.tx_count, std::move(p.payload)};
    p.payload = MacHsPdu{};
    p.tx_count = 0;
    p.state = HarqProcess::State::idle;
    return fb;
  }
  p.state = HarqProcess::State::pending_retransmission;
  p.nack_order = nack_counter_++;
  ++pending_retx_;
  return Feedback{Outcome::retry, p.tx_count, MacHsPdu{}};
}

}  // namespace hsdpa
