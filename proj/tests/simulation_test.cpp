#include <gtest/gtest.h>

#include <sstream>

#include "hsdpa/scenario/simulation.hpp"
#include "hsdpa/scenario/sweep.hpp"

namespace hsdpa {
namespace {

ScenarioConfig short_run(std::vector<std::string> overrides) {
  overrides.insert(overrides.begin(), "session_s=10");
  return load_config("", overrides);
}

void expect_same(const SimMetrics& a, const SimMetrics& b) {
  EXPECT_EQ(a.nrt_bytes_delivered, b.nrt_bytes_delivered);
  EXPECT_EQ(a.nrt_admission_drops, b.nrt_admission_drops);
  EXPECT_EQ(a.rt_pdus_admitted, b.rt_pdus_admitted);
  EXPECT_EQ(a.rt_dt_discards, b.rt_dt_discards);
  EXPECT_EQ(a.rt_admission_drops, b.rt_admission_drops);
  EXPECT_EQ(a.rt_packets_played, b.rt_packets_played);
  EXPECT_EQ(a.rt_underruns, b.rt_underruns);
  EXPECT_EQ(a.harq_transmissions, b.harq_transmissions);
  EXPECT_EQ(a.idle_ttis, b.idle_ttis);
  EXPECT_EQ(a.test_ue_ttis, b.test_ue_ttis);
  EXPECT_EQ(a.events_dispatched, b.events_dispatched);
  ASSERT_EQ(a.playout.size(), b.playout.size());
  for (std::size_t i = 0; i < a.playout.size(); ++i) {
    EXPECT_EQ(a.playout[i].play_time, b.playout[i].play_time);
  }
}

TEST(Simulation, SameSeedSameResult) {
  const auto cfg = short_run({"users=5"});
  expect_same(run_simulation(cfg, 42), run_simulation(cfg, 42));
}

TEST(Simulation, DifferentSeedsDiffer) {
  const auto cfg = short_run({"users=5"});
  const auto a = run_simulation(cfg, 1);
  const auto b = run_simulation(cfg, 2);
  EXPECT_NE(a.events_dispatched, b.events_dispatched);
}

TEST(Simulation, ZeroDeltaEqualsStaticPriority) {
  for (int users : {1, 10}) {
    const std::string u = "users=" + std::to_string(users);
    const auto dtsp = short_run({u, "scheme=dtsp", "db_ms=0"});
    const auto stsp = short_run({u, "scheme=stsp"});
    ASSERT_EQ(dtsp.delta(), 0);
    expect_same(run_simulation(dtsp, 7), run_simulation(stsp, 7));
  }
}

TEST(Simulation, PerfectDecodingHasNoHarqLoss) {
  const auto cfg = short_run({"users=10", "radio.forced_decode_p=1"});
  const auto m = run_simulation(cfg, 3);
  EXPECT_GT(m.harq_transmissions, 0u);
  EXPECT_EQ(m.harq_retransmissions, 0u);
  EXPECT_EQ(m.harq_drops, 0u);
}

TEST(Simulation, SessionAccounting) {
  const auto cfg = short_run({"users=5", "scheme=dtsp", "db_ms=80"});
  const auto m = run_simulation(cfg, 11);
  EXPECT_EQ(m.ttis, 5000u);
  EXPECT_EQ(m.rt_packets_emitted, 2000u);
  EXPECT_LE(m.rt_dt_discards, m.rt_pdus_admitted);
  EXPECT_LE(m.rt_pdus_admitted + m.rt_admission_drops, m.rt_packets_emitted);
  EXPECT_LE(m.rt_packets_delivered, m.rt_pdus_admitted - m.rt_dt_discards);
  EXPECT_LE(m.rt_packets_played + m.rt_packets_unplayed, m.rt_packets_delivered);
  EXPECT_LE(m.idle_ttis + m.test_ue_ttis, m.ttis);
  EXPECT_DOUBLE_EQ(m.rt_discard_ratio, discard_ratio(m.rt_dt_discards, m.rt_pdus_admitted));
  EXPECT_NEAR(m.nrt_throughput_bps, average_throughput_bps(m.nrt_bytes_delivered, 10s), 1e-9);
  EXPECT_GT(m.nrt_bytes_delivered, 0u);
}

TEST(Simulation, SingleUserCarriesBothFlows) {
  const auto m = run_simulation(short_run({"users=1", "radio.forced_decode_p=1"}), 5);
  EXPECT_EQ(m.rt_dt_discards, 0u);
  EXPECT_EQ(m.rt_admission_drops, 0u);
  EXPECT_GT(m.nrt_throughput_bps, 100000.0);
}

TEST(Sweep, CsvIdenticalAcrossThreadCounts) {
  const auto base = short_run({});
  SweepAxes axes;
  axes.users = {1, 5};
  axes.schemes = {Scheme::cbs, Scheme::stsp, Scheme::dtsp};
  axes.db_ms = {80};

  std::string csv[2];
  for (int jobs : {1, 3}) {
    SweepOptions opt;
    opt.reps = 2;
    opt.jobs = jobs;
    const auto res = run_sweep(base, axes, opt);
    ASSERT_TRUE(res.complete) << res.error;
    ASSERT_EQ(res.records.size(), 12u);
    std::ostringstream os;
    write_summary_csv(os, res.records);
    write_playout_csv(os, res.records);
    csv[jobs == 1 ? 0 : 1] = os.str();
  }
  EXPECT_EQ(csv[0], csv[1]);
}

TEST(Sweep, RecordsFollowCellOrder) {
  const auto base = short_run({});
  SweepAxes axes;
  axes.users = {1, 5};
  axes.schemes = {Scheme::stsp, Scheme::cbs};
  SweepOptions opt;
  opt.reps = 1;
  opt.jobs = 2;
  const auto res = run_sweep(base, axes, opt);
  ASSERT_EQ(res.records.size(), 4u);
  EXPECT_EQ(res.records[0].cell.users, 1);
  EXPECT_EQ(res.records[0].cell.scheme, Scheme::stsp);
  EXPECT_EQ(res.records[1].cell.scheme, Scheme::cbs);
  EXPECT_EQ(res.records[2].cell.users, 5);
  EXPECT_EQ(res.records[0].seed, res.records[1].seed);
  EXPECT_EQ(res.records[0].seed, run_seed(base.seed, 1, 0));
}

}  // namespace
}  // namespace hsdpa
