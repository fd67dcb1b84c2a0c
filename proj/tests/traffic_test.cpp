#include <gtest/gtest.h>

#include "hsdpa/traffic/cbr_source.hpp"
#include "hsdpa/traffic/metrics.hpp"
#include "hsdpa/traffic/playout.hpp"
#include "hsdpa/traffic/tcp.hpp"

namespace hsdpa {
namespace {

TEST(Cbr, VoiceStreamCadence) {
  CbrSource src(CbrConfig{});
  EXPECT_EQ(src.interval(), 5ms);
  EXPECT_EQ(src.total_packets(), 24000u);
  EXPECT_EQ(src.emission_time(0), Time{0});
  EXPECT_EQ(src.emission_time(23999), 119995ms);
  std::uint64_t n = 0;
  while (!src.exhausted()) EXPECT_EQ(src.emit(), n++);
  EXPECT_EQ(n, 24000u);
}

TEST(Cbr, RejectsBadConfig) {
  EXPECT_THROW(CbrSource(CbrConfig{0.0, 320, 1s}), std::invalid_argument);
  EXPECT_THROW(CbrSource(CbrConfig{64000.0, 0, 1s}), std::invalid_argument);
}

TEST(Tcp, SlowStartDoublesPerRoundTrip) {
  TcpSender s(TcpConfig{});
  auto act = s.start(Time{0});
  ASSERT_EQ(act.send.size(), 1u);
  EXPECT_EQ(act.timer, TcpActions::Timer::restart);
  Time now{0};
  std::size_t burst = 1;
  for (int round = 0; round < 5; ++round) {
    now += 100ms;
    std::size_t next = 0;
    const std::uint64_t base = s.snd_una();
    for (std::size_t i = 1; i <= burst; ++i) {
      next += s.on_ack(base + 512 * i, now).send.size();
    }
    EXPECT_EQ(next, 2 * burst);
    burst = next;
  }
  EXPECT_EQ(s.cwnd(), 32u * 512u);
}

TEST(Tcp, WindowCappedByReceiverWindow) {
  TcpSender s(TcpConfig{});
  s.start(Time{0});
  Time now{0};
  for (int i = 0; i < 200; ++i) {
    now += 1ms;
    s.on_ack(s.snd_una() + 512, now);
    EXPECT_LE(s.flight(), 32768u);
  }
  EXPECT_EQ(s.flight(), 32768u);
}

TEST(Tcp, TripleDupackHalvesWindow) {
  TcpSender s(TcpConfig{});
  s.start(Time{0});
  Time now{0};
  for (int i = 0; i < 31; ++i) {
    now += 1ms;
    s.on_ack(s.snd_una() + 512, now);
  }
  ASSERT_EQ(s.cwnd(), 16384u);
  ASSERT_EQ(s.flight(), 16384u);

  const std::uint64_t hole = s.snd_una();
  EXPECT_TRUE(s.on_ack(hole, now).send.empty());
  EXPECT_TRUE(s.on_ack(hole, now).send.empty());
  const auto act = s.on_ack(hole, now);
  ASSERT_EQ(act.send.size(), 1u);
  EXPECT_EQ(act.send[0].seq, hole);
  EXPECT_TRUE(act.send[0].retransmission);
  EXPECT_EQ(s.ssthresh(), 8192u);
  EXPECT_EQ(s.cwnd(), 8192u);
  EXPECT_EQ(s.counters().fast_retransmits, 1u);
}

TEST(Tcp, TimeoutCollapsesWindow) {
  TcpSender s(TcpConfig{});
  s.start(Time{0});
  Time now{0};
  for (int i = 0; i < 15; ++i) {
    now += 1ms;
    s.on_ack(s.snd_una() + 512, now);
  }
  const std::uint64_t flight = s.flight();
  const Time rto = s.rto();
  const auto act = s.on_timeout(now + rto);
  EXPECT_EQ(s.cwnd(), 512u);
  EXPECT_EQ(s.ssthresh(), std::max<std::uint64_t>(flight / 2, 1024));
  ASSERT_EQ(act.send.size(), 1u);
  EXPECT_EQ(act.send[0].seq, s.snd_una());
  EXPECT_EQ(s.rto(), std::min(rto * 2, TcpConfig{}.max_rto));
  EXPECT_EQ(s.counters().timeouts, 1u);
}

TEST(Tcp, RtoStaysWithinBounds) {
  TcpSender s(TcpConfig{});
  EXPECT_EQ(s.rto(), 3s);
  s.start(Time{0});
  s.on_ack(512, 10ms);
  EXPECT_EQ(s.rto(), 1s);
  for (int i = 0; i < 10; ++i) s.on_timeout(Time{0});
  EXPECT_EQ(s.rto(), 64s);
}

TEST(TcpReceiver, DupackThenCatchUp) {
  TcpReceiver r(512);
  EXPECT_EQ(r.on_segment(0, 512), 512u);
  EXPECT_EQ(r.on_segment(1024, 512), 512u);
  EXPECT_EQ(r.on_segment(1536, 512), 512u);
  EXPECT_EQ(r.out_of_order_segments(), 2u);
  EXPECT_EQ(r.on_segment(512, 512), 2048u);
  EXPECT_EQ(r.out_of_order_segments(), 0u);
  EXPECT_EQ(r.on_segment(0, 512), 2048u);
  EXPECT_EQ(r.duplicate_segments(), 1u);
  EXPECT_EQ(r.delivered_bytes(), 2048u);
}

TEST(Playout, ConstantCadenceWhenOnTime) {
  PlayoutBuffer p(160ms, 5ms, 120s);
  for (int i = 0; i < 100; ++i) p.on_arrival(50ms + 5ms * i);
  EXPECT_EQ(p.played(), 100u);
  EXPECT_EQ(p.underruns(), 0u);
  ASSERT_EQ(p.samples().size(), 99u);
  EXPECT_EQ(p.samples().front().play_time, 215ms);
  for (const auto& s : p.samples()) EXPECT_EQ(s.inter_packet_delay, 5ms);
}

TEST(Playout, LatePacketGivesOneSpike) {
  PlayoutBuffer p(Time{0}, 5ms, 120s);
  for (int i = 0; i < 50; ++i) {
    const Time arrival = 5ms * i + (i == 20 ? 40ms : Time{0});
    if (i > 20 && arrival < 5ms * 20 + 40ms) {
      p.on_arrival(5ms * 20 + 40ms);
    } else {
      p.on_arrival(arrival);
    }
  }
  EXPECT_EQ(p.underruns(), 1u);
  int spikes = 0;
  for (const auto& s : p.samples()) {
    EXPECT_GE(s.inter_packet_delay, 5ms);
    if (s.inter_packet_delay > 5ms) {
      ++spikes;
      EXPECT_EQ(s.inter_packet_delay, 45ms);
    }
  }
  EXPECT_EQ(spikes, 1);
}

TEST(Playout, JitterAbsorbedByInitialBuffering) {
  PlayoutBuffer p(160ms, 5ms, 120s);
  for (int i = 0; i < 50; ++i) p.on_arrival(5ms * i + (i == 20 ? 40ms : Time{0}));
  EXPECT_EQ(p.underruns(), 0u);
  for (const auto& s : p.samples()) EXPECT_EQ(s.inter_packet_delay, 5ms);
}

TEST(Playout, PacketsAfterSessionEndAreUnplayed) {
  PlayoutBuffer p(160ms, 5ms, 1s);
  for (int i = 0; i < 200; ++i) p.on_arrival(5ms * i);
  EXPECT_EQ(p.played() + p.unplayed(), 200u);
  EXPECT_EQ(p.played(), 168u);
}

TEST(Metrics, DiscardRatio) {
  EXPECT_DOUBLE_EQ(discard_ratio(480, 24000), 0.02);
  EXPECT_DOUBLE_EQ(discard_ratio(0, 0), 0.0);
}

TEST(Metrics, AverageThroughput) {
  EXPECT_DOUBLE_EQ(average_throughput_bps(1500000, 120s), 100000.0);
  EXPECT_DOUBLE_EQ(average_throughput_bps(10, Time{0}), 0.0);
}

}  // namespace
}  // namespace hsdpa
