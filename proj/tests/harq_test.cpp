#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

#include "hsdpa/radio/harq.hpp"

namespace hsdpa {
namespace {

MacHsPdu block(std::uint32_t tsn, int sdus) {
  MacHsPdu b;
  b.tsn = tsn;
  b.flow = FlowClass::nrt;
  for (int i = 0; i < sdus; ++i) {
    MacdPdu p;
    p.rlc_seq = tsn * 100 + static_cast<std::uint32_t>(i);
    b.sdus.push_back(p);
  }
  b.sdu_count = sdus;
  return b;
}

TEST(Harq, AckFreesProcess) {
  HarqEntity h(4, 4);
  EXPECT_EQ(h.transmit(0, block(1, 3)), 1);
  EXPECT_EQ(h.busy_count(), 1);
  const auto fb = h.on_feedback(0, true);
  EXPECT_EQ(fb.outcome, HarqEntity::Outcome::delivered);
  EXPECT_EQ(fb.payload.tsn, 1u);
  EXPECT_EQ(h.busy_count(), 0);
  EXPECT_EQ(h.idle_process(), 0);
}

TEST(Harq, TwoNacksGiveThirdAttempt) {
  HarqEntity h(4, 4);
  h.transmit(2, block(7, 2));
  EXPECT_EQ(h.on_feedback(2, false).outcome, HarqEntity::Outcome::retry);
  EXPECT_EQ(h.retransmit(2), 2);
  EXPECT_EQ(h.on_feedback(2, false).outcome, HarqEntity::Outcome::retry);
  EXPECT_EQ(h.retransmit(2), 3);
  EXPECT_EQ(h.process(2).tx_count, 3);
}

TEST(Harq, RetransmittedPayloadIsIdentical) {
  HarqEntity h(4, 4);
  const MacHsPdu original = block(3, 5);
  h.transmit(1, original);
  h.on_feedback(1, false);
  ASSERT_EQ(h.next_retransmission(), 1);
  h.retransmit(1);
  const auto& p = h.process(1).payload;
  ASSERT_EQ(p.sdus.size(), original.sdus.size());
  for (std::size_t i = 0; i < p.sdus.size(); ++i) EXPECT_EQ(p.sdus[i].rlc_seq, original.sdus[i].rlc_seq);
  EXPECT_EQ(p.tsn, original.tsn);
}

TEST(Harq, DroppedAfterMaxTransmissions) {
  HarqEntity h(4, 4);
  h.transmit(0, block(1, 1));
  for (int i = 0; i < 3; ++i) {
    ASSERT_EQ(h.on_feedback(0, false).outcome, HarqEntity::Outcome::retry);
    h.retransmit(0);
  }
  const auto fb = h.on_feedback(0, false);
  EXPECT_EQ(fb.outcome, HarqEntity::Outcome::dropped);
  EXPECT_EQ(fb.tx_count, 4);
  EXPECT_EQ(h.busy_count(), 0);
}

TEST(Harq, TransmitOnBusyProcessThrows) {
  HarqEntity h(4, 4);
  h.transmit(0, block(1, 1));
  EXPECT_THROW(h.transmit(0, block(2, 1)), std::logic_error);
}

TEST(Harq, OldestNackIsRetransmittedFirst) {
  HarqEntity h(4, 4);
  h.transmit(0, block(1, 1));
  h.transmit(1, block(2, 1));
  h.on_feedback(1, false);
  h.on_feedback(0, false);
  EXPECT_EQ(h.next_retransmission(), 1);
}

TEST(Harq, NeverMoreThanFourBusyUnderRandomTraffic) {
  std::mt19937 rng(17);
  HarqEntity h(4, 4);
  std::vector<int> awaiting;
  for (int step = 0; step < 20000; ++step) {
    if (!awaiting.empty() && rng() % 2 == 0) {
      const std::size_t k = rng() % awaiting.size();
      const int pid = awaiting[k];
      awaiting.erase(awaiting.begin() + static_cast<long>(k));
      h.on_feedback(pid, rng() % 3 != 0);
    } else if (auto r = h.next_retransmission()) {
      h.retransmit(*r);
      awaiting.push_back(*r);
    } else if (auto idle = h.idle_process()) {
      h.transmit(*idle, block(static_cast<std::uint32_t>(step), 1));
      awaiting.push_back(*idle);
    }
    ASSERT_LE(h.busy_count(), 4);
    for (int p = 0; p < 4; ++p) ASSERT_LE(h.process(p).tx_count, 4);
  }
}

}  // namespace
}  // namespace hsdpa
