#include "hsdpa/scenario/simulation.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hsdpa/flow/flow_control.hpp"
#include "hsdpa/mac/scheduler.hpp"
#include "hsdpa/mac/tsp_buffer.hpp"
#include "hsdpa/radio/amc.hpp"
#include "hsdpa/radio/channel.hpp"
#include "hsdpa/radio/harq.hpp"
#include "hsdpa/rlc/rlc.hpp"
#include "hsdpa/sim/event_queue.hpp"
#include "hsdpa/sim/rng.hpp"
#include "hsdpa/traffic/cbr_source.hpp"
#include "hsdpa/traffic/playout.hpp"
#include "hsdpa/traffic/tcp.hpp"

namespace hsdpa {

namespace {

constexpr UeId kTestUe = 0;

std::size_t class_index(FlowClass f) { return f == FlowClass::rt ? 0 : 1; }

ScenarioConfig validated(const ScenarioConfig& cfg) {
  cfg.validate();
  return cfg;
}

CbrConfig cbr_config(const ScenarioConfig& cfg) {
  return CbrConfig{cfg.traffic.rt_rate_bps, cfg.traffic.rt_packet_bits, cfg.session};
}

}  // namespace

struct Simulation::Impl {
  struct UeRadio {
    std::unique_ptr<UeChannel> channel;
    HarqEntity harq;
    RandomStream* decode;
  };

  Impl(const ScenarioConfig& config, std::uint64_t run_seed)
      : cfg(validated(config)),
        rng(run_seed),
        sched(cfg.users),
        buffer(cfg.scheme, cfg.buffer, cfg.priority()),
        fc(cfg.qos, cfg.fc, cfg.buffer),
        am(cfg.rlc),
        amr(cfg.rlc),
        ums(cfg.rlc.pdu_size_bits),
        reorder{ReorderingQueue(cfg.reorder_timeout), ReorderingQueue(cfg.reorder_timeout)},
        tcp(cfg.tcp),
        tcpr(cfg.tcp.mss_bytes),
        cbr(cbr_config(cfg)),
        playout(cfg.initial_buffering, cbr.interval(), cfg.session) {
    fc.mutable_state().nrt_rate_est_bps = cfg.qos.nrt_max_bitrate_bps;
    playout.set_record_samples(cfg.output.playout_delays);

    auto& placement = rng.stream("placement");
    const double ri = cfg.placement.cell_inner_km;
    const double ro = cfg.placement.cell_outer_km;
    ues.reserve(static_cast<std::size_t>(cfg.users));
    for (int i = 0; i < cfg.users; ++i) {
      const auto idx = static_cast<std::uint32_t>(i);
      double distance = cfg.placement.test_ue_distance_km;
      double speed = cfg.placement.test_ue_speed_kmh;
      if (i != 0) {
        distance = std::sqrt(placement.uniform() * (ro * ro - ri * ri) + ri * ri);
        speed = 0.0;
      }
      ues.push_back(UeRadio{
          std::make_unique<UeChannel>(cfg.radio, rng.stream("shadowing", idx), distance, speed),
          HarqEntity(cfg.radio.num_harq_processes, cfg.radio.max_harq_transmissions),
          &rng.stream("decode", idx)});
    }
  }

  // Scheduling -------------------------------------------------------------

  bool can_serve(UeId ue) {
    auto& u = ues[ue];
    if (u.harq.has_pending_retransmission()) return true;
    const bool has_data = ue != kTestUe || !buffer.empty();
    if (!has_data || u.channel->reported_cqi() <= 0) return false;
    if (!u.harq.idle_process()) {
      ++m.harq_blocked;
      return false;
    }
    return true;
  }

  void on_tti() {
    const Time now = q.now();
    for (auto& u : ues) u.channel->advance(now);
    buffer.discard_timer_sweep(now);
    ++m.ttis;
    if (auto ue = sched.schedule_tti([this](UeId id) { return can_serve(id); })) serve(*ue, now);
    q.schedule_in(kTti, EventKind::tti_tick, 0, [this] { on_tti(); });
  }

  void serve(UeId ue, Time now) {
    auto& u = ues[ue];
    int pid = 0;
    int tx = 0;
    bool new_tx = false;
    const bool nrt_backlogged = ue == kTestUe && buffer.nrt_count() > 0;
    if (auto r = u.harq.next_retransmission()) {
      pid = *r;
      tx = u.harq.retransmit(pid);
      ++m.harq_retransmissions;
    } else {
      pid = *u.harq.idle_process();
      const auto amc = select_amc(cfg.radio, u.channel->reported_cqi());
      if (!amc) return;
      std::optional<MacHsPdu> block;
      if (ue == kTestUe) {
        block = build_transport_block(buffer, ue, *amc, cfg.mac_header_bits, now);
        if (!block) {
          if (rate_tick(nrt_backlogged)) update_rate(0, now);
          return;
        }
        block->tsn = next_tsn[class_index(block->flow)]++;
      } else {
        block.emplace();
        block->ue = ue;
        block->flow = FlowClass::nrt;
        block->sdu_count = sdu_capacity(amc->tbs_bits, cfg.mac_header_bits);
        block->header_bits = cfg.mac_header_bits;
        block->cqi = amc->cqi;
        block->tbs_bits = amc->tbs_bits;
        block->transmitted_at = now;
      }
      tx = u.harq.transmit(pid, std::move(*block));
      new_tx = true;
    }

    const MacHsPdu& payload = u.harq.process(pid).payload;
    if (ue == kTestUe) {
      ++m.test_ue_ttis;
      const int bits = new_tx && payload.flow == FlowClass::nrt ? payload.payload_bits() : 0;
      if (rate_tick(nrt_backlogged)) update_rate(bits, now);
    }
    ++m.harq_transmissions;
    const double p = decode_success_probability(cfg.radio, payload.cqi, u.channel->sinr_db(), tx);
    const bool ack = u.decode->bernoulli(p);
    q.schedule_in(cfg.radio.harq_feedback_latency, EventKind::harq_feedback, ue,
                  [this, ue, pid, ack] { on_feedback(ue, pid, ack); });
  }

  void update_rate(int bits, Time now) {
    Time interval = cfg.fc.tti;
    if (cfg.rate_normalization == RateNormalization::elapsed && last_rate_update) {
      interval = std::max(cfg.fc.tti, now - *last_rate_update);
    }
    last_rate_update = now;
    fc.update_nrt_rate(bits, interval);
  }

  bool rate_tick(bool nrt_backlogged) const {
    return cfg.rate_update == RateUpdate::granted || nrt_backlogged;
  }

  void on_feedback(UeId ue, int pid, bool ack) {
    auto fb = ues[ue].harq.on_feedback(pid, ack);
    if (fb.outcome == HarqEntity::Outcome::dropped) ++m.harq_drops;
    if (fb.outcome == HarqEntity::Outcome::delivered && ue == kTestUe) {
      deliver_block(std::move(fb.payload));
    }
  }

  // UE side ----------------------------------------------------------------

  void deliver_block(MacHsPdu block) {
    const std::size_t idx = class_index(block.flow);
    auto released = reorder[idx].receive(std::move(block), q.now());
    process_released(idx, released);
    update_reorder_timer(idx);
  }

  void process_released(std::size_t idx, const std::vector<MacHsPdu>& blocks) {
    if (blocks.empty()) return;
    if (idx == 0) {
      for (const auto& b : blocks) {
        for (const auto& pdu : b.sdus) {
          for (const auto& sdu : umr.receive(pdu)) {
            (void)sdu;
            ++m.rt_packets_delivered;
            playout.on_arrival(q.now());
          }
        }
      }
      return;
    }
    for (const auto& b : blocks) {
      for (const auto& pdu : b.sdus) deliver_nrt(amr.receive(pdu));
    }
    send_status();
  }

  void update_reorder_timer(std::size_t idx) {
    const auto deadline = reorder[idx].timer_deadline();
    if (!deadline) {
      q.cancel(reorder_timer[idx]);
      return;
    }
    if (q.is_pending(reorder_timer[idx]) && reorder_deadline[idx] == *deadline) return;
    q.cancel(reorder_timer[idx]);
    reorder_deadline[idx] = *deadline;
    reorder_timer[idx] = q.schedule(*deadline, EventKind::reorder_timeout, kTestUe, [this, idx] {
      auto released = reorder[idx].on_timer(q.now());
      process_released(idx, released);
      update_reorder_timer(idx);
    });
  }

  void deliver_nrt(const std::vector<DeliveredSdu>& sdus) {
    for (const auto& sdu : sdus) {
      const std::uint64_t ack = tcpr.on_segment(sdu.app_tag, cfg.tcp.mss_bytes);
      q.schedule_in(cfg.delay.cn + cfg.delay.uplink_extra, EventKind::tcp_ack, kTestUe,
                    [this, ack] { handle_tcp(tcp.on_ack(ack, q.now())); });
    }
  }

  void send_status() {
    q.schedule_in(cfg.rlc.status_delay, EventKind::rlc_status, kTestUe,
                  [this, report = amr.status()] {
                    am.on_status(report, q.now());
                    flush_move_windows();
                  });
  }

  void flush_move_windows() {
    for (const auto& mrw : am.take_move_windows()) {
      q.schedule_in(cfg.delay.iub + kTti, EventKind::rlc_move_window, kTestUe, [this, mrw] {
        deliver_nrt(amr.move_window(mrw));
        send_status();
      });
    }
  }

  // RNC side ---------------------------------------------------------------

  void on_frame() {
    const Time now = q.now();
    fc.update_occupancy_filter(buffer.occupancy());
    am.poll(now);
    int space = std::numeric_limits<int>::max();
    if (cfg.fc_space_guard) {
      space = cfg.buffer.total_capacity - buffer.occupancy() - iub_in_flight -
              std::min(rnc.rt_backlog_size(), fc.peek_rt_credits());
    }
    const CreditGrant grant = fc.compute_credits(am.ready_pdus(), space);
    IubFrames frames = release_frame(rnc, am, grant, now);
    flush_move_windows();
    for (auto* frame : {&frames.rt, &frames.nrt}) {
      if (frame->empty()) continue;
      iub_in_flight += static_cast<int>(frame->size());
      q.schedule_in(cfg.delay.iub, EventKind::iub_arrival, kTestUe,
                    [this, pdus = std::move(*frame)] { offer(pdus); });
    }
    q.schedule_in(cfg.fc.frame_period, EventKind::generic, kTestUe, [this] { on_frame(); });
  }

  void offer(const std::vector<MacdPdu>& pdus) {
    buffer.discard_timer_sweep(q.now());
    for (const auto& pdu : pdus) buffer.offer(pdu, q.now());
    iub_in_flight -= static_cast<int>(pdus.size());
  }

  void on_cbr() {
    const Time now = q.now();
    const std::uint64_t n = cbr.emit();
    q.schedule_in(cfg.delay.cn, EventKind::cn_arrival, kTestUe, [this, n, now] {
      const SduInfo sdu{static_cast<std::uint32_t>(n), n, cfg.traffic.rt_packet_bits, now};
      for (auto& pdu : ums.send(sdu)) rnc.rt_backlog.push_back(pdu);
    });
    if (!cbr.exhausted()) {
      q.schedule(cbr.emission_time(n + 1), EventKind::cbr_emit, kTestUe, [this] { on_cbr(); });
    }
  }

  void handle_tcp(const TcpActions& act) {
    const Time now = q.now();
    for (const auto& seg : act.send) {
      q.schedule_in(cfg.delay.cn, EventKind::cn_arrival, kTestUe, [this, seg, now] {
        am.enqueue_sdu(SduInfo{next_sdu_id++, seg.seq, seg.len * 8, now});
      });
    }
    switch (act.timer) {
      case TcpActions::Timer::keep: break;
      case TcpActions::Timer::stop: q.cancel(rto_timer); break;
      case TcpActions::Timer::restart:
        q.cancel(rto_timer);
        rto_timer = q.schedule_in(tcp.rto(), EventKind::tcp_rto, kTestUe,
                                  [this] { handle_tcp(tcp.on_timeout(q.now())); });
        break;
    }
  }

  // Run --------------------------------------------------------------------

  SimMetrics run() {
    if (ran) throw std::logic_error("Simulation::run called twice");
    ran = true;
    q.schedule(Time{0}, EventKind::tti_tick, 0, [this] { on_tti(); });
    q.schedule(Time{0}, EventKind::generic, kTestUe, [this] { on_frame(); });
    if (!cbr.exhausted()) q.schedule(Time{0}, EventKind::cbr_emit, kTestUe, [this] { on_cbr(); });
    q.schedule(Time{0}, EventKind::generic, kTestUe, [this] { handle_tcp(tcp.start(q.now())); });
    q.run_until(cfg.session);
    return finalize();
  }

  SimMetrics finalize() {
    m.session_s = to_seconds(cfg.session);
    m.nrt_bytes_delivered = tcpr.delivered_bytes();
    m.nrt_throughput_bps = average_throughput_bps(m.nrt_bytes_delivered, cfg.session);

    const auto& bc = buffer.counters();
    m.nrt_admission_drops = bc.nrt_admission_drops;
    m.nrt_pdus_admitted = bc.nrt_admitted;
    m.rt_pdus_admitted = bc.rt_admitted;
    m.rt_admission_drops = bc.rt_admission_drops;
    m.rt_dt_discards = bc.rt_dt_discards;
    m.rt_discard_ratio = discard_ratio(bc.rt_dt_discards, bc.rt_admitted);

    m.rlc_retransmissions = am.counters().pdus_retransmitted;
    m.rlc_sdu_discards = am.counters().sdus_discarded;
    m.tcp_retransmissions = tcp.counters().retransmissions;
    m.tcp_timeouts = tcp.counters().timeouts;
    m.tcp_fast_retransmits = tcp.counters().fast_retransmits;

    m.rt_packets_emitted = cbr.emitted();
    m.rt_um_gap_losses = umr.counters().pdus_skipped;
    m.rt_packets_played = playout.played();
    m.rt_packets_unplayed = playout.unplayed();
    m.rt_underruns = playout.underruns();
    m.playout = playout.samples();

    m.idle_ttis = sched.idle_ttis();
    m.reorder_tsn_skips = reorder[0].tsns_skipped() + reorder[1].tsns_skipped();
    m.events_dispatched = q.dispatched_count();
    return m;
  }

  ScenarioConfig cfg;
  RngStreams rng;
  EventQueue q;
  std::vector<UeRadio> ues;
  RoundRobinScheduler sched;

  TspBuffer buffer;
  FlowController fc;
  RncQueueState rnc;
  AmSender am;
  AmReceiver amr;
  UmSender ums;
  UmReceiver umr;
  std::array<ReorderingQueue, 2> reorder;
  std::array<EventHandle, 2> reorder_timer{};
  std::array<Time, 2> reorder_deadline{};
  std::array<std::uint32_t, 2> next_tsn{};
  TcpSender tcp;
  TcpReceiver tcpr;
  EventHandle rto_timer{};
  CbrSource cbr;
  PlayoutBuffer playout;
  std::uint32_t next_sdu_id = 0;
  int iub_in_flight = 0;
  std::optional<Time> last_rate_update;

  SimMetrics m;
  bool ran = false;
};

Simulation::Simulation(const ScenarioConfig& cfg, std::uint64_t seed)
    : impl_(std::make_unique<Impl>(cfg, seed)) {}
Simulation::~Simulation() = default;
Simulation::Simulation(Simulation&&) noexcept = default;
Simulation& Simulation::operator=(Simulation&&) noexcept = default;

SimMetrics Simulation::run() { return impl_->run(); }

SimMetrics run_simulation(const ScenarioConfig& cfg, std::uint64_t seed) {
  Simulation sim(cfg, seed);
  return sim.run();
}

}  // namespace hsdpa
