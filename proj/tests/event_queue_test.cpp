#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "hsdpa/sim/event_queue.hpp"
#include "hsdpa/sim/rng.hpp"

namespace hsdpa {
namespace {

TEST(EventQueue, SameTimeEventsRunInInsertionOrder) {
  EventQueue q;
  std::vector<char> order;
  q.schedule(Time{0}, EventKind::generic, 0, [&] { order.push_back('A'); });
  q.schedule(Time{0}, EventKind::generic, 0, [&] { order.push_back('B'); });
  q.run_until(1ms);
  EXPECT_EQ(order, (std::vector<char>{'A', 'B'}));
}

TEST(EventQueue, TenThousandRandomEventsDispatchInSortedOrder) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> when(0, 5000);
  EventQueue q;
  struct Item {
    std::int64_t t;
    int id;
  };
  std::vector<Item> expected;
  std::vector<int> seen;
  for (int i = 0; i < 10000; ++i) {
    const std::int64_t t = when(rng);
    expected.push_back({t, i});
    q.schedule(Time{t}, EventKind::generic, 0, [&seen, i] { seen.push_back(i); });
  }
  std::stable_sort(expected.begin(), expected.end(),
                   [](const Item& a, const Item& b) { return a.t < b.t; });
  q.run_until(Time{5001});
  ASSERT_EQ(seen.size(), expected.size());
  for (std::size_t i = 0; i < seen.size(); ++i) ASSERT_EQ(seen[i], expected[i].id) << "position " << i;
}

TEST(EventQueue, ClockNeverMovesBackwards) {
  EventQueue q;
  Time last{0};
  bool monotone = true;
  std::mt19937 rng(3);
  std::function<void()> chain = [&] {
    if (q.now() < last) monotone = false;
    last = q.now();
    if (q.dispatched_count() < 2000) {
      q.schedule_in(Time{static_cast<std::int64_t>(rng() % 50)}, EventKind::generic, 0, chain);
    }
  };
  q.schedule(Time{0}, EventKind::generic, 0, chain);
  q.run_until(10s);
  EXPECT_TRUE(monotone);
}

TEST(EventQueue, SchedulingInThePastThrows) {
  EventQueue q;
  q.schedule(5ms, EventKind::generic, 0, [] {});
  q.run_until(10ms);
  EXPECT_THROW(q.schedule(9ms, EventKind::generic, 0, [] {}), std::logic_error);
}

TEST(EventQueue, RunUntilIsExclusiveAndAdvancesClock) {
  EventQueue q;
  int fired = 0;
  q.schedule(10ms, EventKind::generic, 0, [&] { ++fired; });
  q.run_until(10ms);
  EXPECT_EQ(fired, 0);
  EXPECT_EQ(q.now(), 10ms);
  q.run_until(11ms);
  EXPECT_EQ(fired, 1);
}

TEST(EventQueue, EmptyRunLeavesCountersAtZero) {
  EventQueue q;
  q.run_until(Time{0});
  EXPECT_EQ(q.dispatched_count(), 0u);
  EXPECT_EQ(q.scheduled_count(), 0u);
}

TEST(EventQueue, TtiTickerFiresSixtyThousandTimesIn120s) {
  EventQueue q;
  std::uint64_t ticks = 0;
  std::function<void()> tick = [&] {
    ++ticks;
    q.schedule_in(kTti, EventKind::tti_tick, 0, tick);
  };
  q.schedule(Time{0}, EventKind::tti_tick, 0, tick);
  q.run_until(120s);
  EXPECT_EQ(ticks, 60000u);
}

TEST(EventQueue, CancelBeforeFireSuppressesDispatch) {
  EventQueue q;
  int fired = 0;
  auto h = q.schedule(1ms, EventKind::generic, 0, [&] { ++fired; });
  EXPECT_TRUE(q.cancel(h));
  q.run_until(5ms);
  EXPECT_EQ(fired, 0);
  EXPECT_FALSE(q.cancel(h));
}

TEST(EventQueue, CancelAfterDispatchReturnsFalse) {
  EventQueue q;
  auto h = q.schedule(1ms, EventKind::generic, 0, [] {});
  q.run_until(2ms);
  EXPECT_FALSE(q.cancel(h));
  EXPECT_FALSE(q.is_pending(h));
}

TEST(EventQueue, RestartedTimerOnlyLastInstanceFires) {
  std::mt19937_64 rng(11);
  EventQueue q;
  EventHandle timer;
  int fires = 0;
  Time expected_fire{-1};
  Time actual_fire{-1};
  for (int i = 0; i < 1000; ++i) {
    q.cancel(timer);
    const Time at = q.now() + Time{static_cast<std::int64_t>(1000 + rng() % 100000)};
    timer = q.schedule(at, EventKind::tcp_rto, 0, [&] {
      ++fires;
      actual_fire = q.now();
    });
    expected_fire = at;
    if (i % 3 == 0) q.run_until(q.now() + Time{500});
  }
  q.run_until(q.now() + 1s);
  EXPECT_EQ(fires, 1);
  EXPECT_EQ(actual_fire, expected_fire);
}

TEST(EventQueue, ScheduledEqualsDispatchedPlusCancelledPlusPending) {
  std::mt19937_64 rng(5);
  EventQueue q;
  std::vector<EventHandle> handles;
  for (int i = 0; i < 3000; ++i) {
    handles.push_back(q.schedule(Time{static_cast<std::int64_t>(rng() % 100000)}, EventKind::generic, 0, [] {}));
  }
  for (int i = 0; i < 3000; i += 7) q.cancel(handles[static_cast<std::size_t>(i)]);
  q.run_until(50ms);
  EXPECT_EQ(q.scheduled_count(), q.dispatched_count() + q.cancelled_count() + q.pending_count());
  EXPECT_GT(q.pending_count(), 0u);
  EXPECT_GT(q.dispatched_count(), 0u);
}

TEST(RandomStreams, SameMasterSeedGivesSameDraws) {
  RngStreams a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.stream("decode", 3).next_u64(), b.stream("decode", 3).next_u64());
}

TEST(RandomStreams, DrawsOnOneStreamDoNotPerturbAnother) {
  RngStreams a(42), b(42);
  for (int i = 0; i < 1000; ++i) a.stream("shadowing", 1).normal();
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.stream("placement").uniform(), b.stream("placement").uniform());
}

TEST(RandomStreams, DistinctNamesAndIndicesAreIndependentSeeds) {
  std::set<std::uint64_t> seeds;
  for (const char* name : {"placement", "shadowing", "decode", "traffic"}) {
    for (std::uint32_t i = 0; i < 40; ++i) seeds.insert(RngStreams::derive_seed(9, name, i));
  }
  EXPECT_EQ(seeds.size(), 160u);
}

TEST(RandomStreams, UniformStaysInUnitInterval) {
  RandomStream s(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = s.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

}  // namespace
}  // namespace hsdpa
