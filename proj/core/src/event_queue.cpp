#include "hsdpa/sim/event_queue.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hsdpa {

EventHandle EventQueue::schedule(Time fire_time, EventKind kind, EntityId target, Action action) {
  if (fire_time < now_) {
    throw std::logic_error("event scheduled in the past: fire_time=" +
                           std::to_string(fire_time.count()) + "us now=" +
                           std::to_string(now_.count()) + "us kind=" +
                           std::to_string(static_cast<int>(kind)));
  }
  const std::uint64_t seq = scheduled_++;
  state_.push_back(State::pending);
  heap_.push_back(Entry{fire_time, seq, kind, target, std::move(action)});
  std::push_heap(heap_.begin(), heap_.end(), Later{});
  return EventHandle{seq};
}

bool EventQueue::cancel(EventHandle handle) {
  if (!is_pending(handle)) return false;
  state_[handle.seq] = State::cancelled;
  ++cancelled_;
  return true;
}

bool EventQueue::is_pending(EventHandle handle) const {
  return handle.valid() && handle.seq < state_.size() && state_[handle.seq] == State::pending;
}

EventQueue::Entry EventQueue::pop_next() {
  std::pop_heap(heap_.begin(), heap_.end(), Later{});
  Entry e = std::move(heap_.back());
  heap_.pop_back();
  return e;
}

void EventQueue::discard_cancelled_head() {
  while (!heap_.empty() && state_[heap_.front().seq] == State::cancelled) {
    pop_next();
  }
}

bool EventQueue::step() {
  discard_cancelled_head();
  if (heap_.empty()) return false;
  Entry e = pop_next();
  now_ = e.fire_time;
  state_[e.seq] = State::fired;
  ++dispatched_;
  current_kind_ = e.kind;
  current_target_ = e.target;
  e.action();
  return true;
}

void EventQueue::run_until(Time t_end) {
  for (;;) {
    discard_cancelled_head();
    if (heap_.empty() || heap_.front().fire_time >= t_end) break;
    step();
  }
  if (t_end > now_) now_ = t_end;
}

}  // namespace hsdpa
