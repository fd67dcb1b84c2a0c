#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "hsdpa/sim/time.hpp"

namespace hsdpa {

enum class EventKind : std::uint8_t {
  generic,
  tti_tick,
  cbr_emit,
  cn_arrival,
  iub_arrival,
  harq_feedback,
  rlc_status,
  rlc_move_window,
  reorder_timeout,
  tcp_ack,
  tcp_rto,
};

using EntityId = std::uint32_t;

struct EventHandle {
  static constexpr std::uint64_t kInvalid = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t seq = kInvalid;

  bool valid() const { return seq != kInvalid; }
};

/// Single-threaded discrete-event core.
///
/// Events fire in (fire_time, seq) order, where seq is the insertion counter,
/// so simultaneous events run FIFO. The clock never moves backwards, and
/// scheduling an event before `now()` throws std::logic_error.
class EventQueue {
 public:
  using Action = std::function<void()>;

  Time now() const { return now_; }

  EventHandle schedule(Time fire_time, EventKind kind, EntityId target, Action action);
  EventHandle schedule_in(Time delay, EventKind kind, EntityId target, Action action) {
    return schedule(now_ + delay, kind, target, std::move(action));
  }

  /// Returns true iff the event had not fired (or been cancelled) yet.
  bool cancel(EventHandle handle);
  bool is_pending(EventHandle handle) const;

  /// Dispatches every event with fire_time < t_end, then advances the clock
  /// to t_end. Stops early if the queue drains.
  void run_until(Time t_end);

  /// Dispatches the next live event. Returns false when nothing is pending.
  bool step();

  std::uint64_t scheduled_count() const { return scheduled_; }
  std::uint64_t dispatched_count() const { return dispatched_; }
  std::uint64_t cancelled_count() const { return cancelled_; }
  std::uint64_t pending_count() const { return scheduled_ - dispatched_ - cancelled_; }

  /// Kind and target of the event currently being dispatched.
  EventKind current_kind() const { return current_kind_; }
  EntityId current_target() const { return current_target_; }

 private:
  enum class State : std::uint8_t { pending, fired, cancelled };

  struct Entry {
    Time fire_time;
    std::uint64_t seq;
    EventKind kind;
    EntityId target;
    Action action;
  };

  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.fire_time != b.fire_time) return a.fire_time > b.fire_time;
      return a.seq > b.seq;
    }
  };

  Entry pop_next();
  void discard_cancelled_head();

  Time now_{0};
  std::vector<Entry> heap_;
  std::vector<State> state_;
  std::uint64_t scheduled_ = 0;
  std::uint64_t dispatched_ = 0;
  std::uint64_t cancelled_ = 0;
  EventKind current_kind_ = EventKind::generic;
  EntityId current_target_ = 0;
};

}  // namespace hsdpa
