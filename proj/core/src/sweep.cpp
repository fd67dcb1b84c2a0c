#include "hsdpa/scenario/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "hsdpa/scenario/simulation.hpp"
#include "hsdpa/sim/rng.hpp"

namespace hsdpa {

SweepAxes SweepAxes::reference_grid() {
  return SweepAxes{{1, 5, 10, 20, 30}, {Scheme::cbs, Scheme::stsp, Scheme::dtsp}, {40, 80, 120, 160}};
}

std::vector<CellSpec> expand_cells(const ScenarioConfig& base, const SweepAxes& axes) {
  const std::vector<int> users = axes.users.empty() ? std::vector<int>{base.users} : axes.users;
  const std::vector<Scheme> schemes =
      axes.schemes.empty() ? std::vector<Scheme>{base.scheme} : axes.schemes;
  const std::vector<int> dbs = axes.db_ms.empty() ? std::vector<int>{base.db_ms} : axes.db_ms;

  std::vector<CellSpec> cells;
  for (int u : users) {
    for (Scheme s : schemes) {
      if (s != Scheme::dtsp) {
        cells.push_back(CellSpec{u, s, 0, 0});
        continue;
      }
      for (int db : dbs) {
        ScenarioConfig c = base;
        c.db_ms = db;
        cells.push_back(CellSpec{u, s, db, c.delta()});
      }
    }
  }
  return cells;
}

ScenarioConfig cell_config(const ScenarioConfig& base, const CellSpec& cell) {
  ScenarioConfig c = base;
  c.users = cell.users;
  c.scheme = cell.scheme;
  c.db_ms = cell.db_ms;
  c.validate();
  return c;
}

std::uint64_t run_seed(std::uint64_t master_seed, int users, int rep) {
  std::uint64_t h = splitmix64(master_seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(users));
  h = splitmix64(h ^ (static_cast<std::uint64_t>(rep) << 32));
  return h;
}

SweepResult run_sweep(const ScenarioConfig& base, const SweepAxes& axes, const SweepOptions& opt) {
  if (opt.reps < 1) throw std::invalid_argument("reps must be >= 1");
  const auto cells = expand_cells(base, axes);
  std::vector<ScenarioConfig> configs;
  configs.reserve(cells.size());
  for (const auto& cell : cells) configs.push_back(cell_config(base, cell));

  const std::size_t reps = static_cast<std::size_t>(opt.reps);
  const std::size_t total = cells.size() * reps;
  std::vector<std::optional<RunRecord>> slots(total);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex mu;
  std::string error;

  auto worker = [&] {
    for (;;) {
      if (stop.load()) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= total) return;
      const std::size_t c = i / reps;
      const int rep = static_cast<int>(i % reps);
      try {
        RunRecord rec;
        rec.cell = cells[c];
        rec.rep = rep;
        rec.seed = run_seed(base.seed, cells[c].users, rep);
        rec.config_hash = config_hash(configs[c]);
        const auto t0 = std::chrono::steady_clock::now();
        rec.metrics = run_simulation(configs[c], rec.seed);
        rec.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::lock_guard lock(mu);
        slots[i] = std::move(rec);
        if (opt.on_complete) opt.on_complete(*slots[i]);
      } catch (const std::exception& e) {
        std::lock_guard lock(mu);
        if (error.empty()) {
          error = "run failed (users=" + std::to_string(cells[c].users) + " scheme=" +
                  std::string(to_string(cells[c].scheme)) + " db_ms=" +
                  std::to_string(cells[c].db_ms) + " rep=" + std::to_string(rep) + "): " + e.what();
        }
        stop.store(true);
        return;
      }
    }
  };

  const int jobs = std::max(1, opt.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SweepResult result;
  result.error = error;
  for (auto& s : slots) {
    if (s) {
      result.records.push_back(std::move(*s));
    } else {
      result.complete = false;
    }
  }
  return result;
}

// CSV

std::string summary_row(const RunRecord& r) {
  const auto& m = r.metrics;
  std::string row;
  row += to_string(r.cell.scheme);
  row += ',' + std::to_string(r.cell.db_ms);
  row += ',' + std::to_string(r.cell.delta);
  row += ',' + std::to_string(r.cell.users);
  row += ',' + std::to_string(r.seed);
  row += ',' + std::to_string(r.rep);
  row += ',' + format_number(m.nrt_throughput_bps);
  row += ',' + format_number(m.rt_discard_ratio);
  row += ',' + std::to_string(m.rt_underruns);
  row += ',' + std::to_string(m.rt_packets_played);
  row += ',' + std::to_string(m.nrt_admission_drops);
  row += ',' + std::to_string(m.rt_admission_drops);
  return row;
}

void write_summary_csv(std::ostream& os, const std::vector<RunRecord>& records) {
  os << kSummaryHeader << '\n';
  for (const auto& r : records) os << summary_row(r) << '\n';
}

void write_playout_csv(std::ostream& os, const std::vector<RunRecord>& records) {
  os << kPlayoutHeader << '\n';
  std::string prefix;
  for (const auto& r : records) {
    prefix = std::string(to_string(r.cell.scheme)) + ',' + std::to_string(r.cell.db_ms) + ',' +
             std::to_string(r.cell.users) + ',' + std::to_string(r.rep) + ',';
    for (const auto& s : r.metrics.playout) {
      os << prefix << format_number(to_seconds(s.play_time)) << ','
         << format_number(to_seconds(s.inter_packet_delay)) << '\n';
    }
  }
}

namespace {

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t n = 0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++n;
  }
  double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
  double sample_std() const {
    if (n < 2) return 0.0;
    const double mu = mean();
    const double var = (sum_sq - static_cast<double>(n) * mu * mu) / static_cast<double>(n - 1);
    return var > 0.0 ? std::sqrt(var) : 0.0;
  }
};

bool same_cell(const CellSpec& a, const CellSpec& b) {
  return a.users == b.users && a.scheme == b.scheme && a.db_ms == b.db_ms;
}

}  // namespace

void write_summary_stats_csv(std::ostream& os, const std::vector<RunRecord>& records) {
  os << kSummaryStatsHeader << '\n';
  std::size_t i = 0;
  while (i < records.size()) {
    std::size_t j = i;
    Moments thr, disc, und, nrt_drop, rt_drop;
    while (j < records.size() && same_cell(records[j].cell, records[i].cell)) {
      const auto& m = records[j].metrics;
      thr.add(m.nrt_throughput_bps);
      disc.add(m.rt_discard_ratio);
      und.add(static_cast<double>(m.rt_underruns));
      nrt_drop.add(static_cast<double>(m.nrt_admission_drops));
      rt_drop.add(static_cast<double>(m.rt_admission_drops));
      ++j;
    }
    const auto& c = records[i].cell;
    os << to_string(c.scheme) << ',' << c.db_ms << ',' << c.delta << ',' << c.users << ','
       << (j - i) << ',' << format_number(thr.mean()) << ',' << format_number(thr.sample_std())
       << ',' << format_number(disc.mean()) << ',' << format_number(disc.sample_std()) << ','
       << format_number(und.mean()) << ',' << format_number(und.sample_std()) << ','
       << format_number(nrt_drop.mean()) << ',' << format_number(rt_drop.mean()) << '\n';
    i = j;
  }
}

void write_outputs(const std::string& dir, const ScenarioConfig& base,
                   const std::vector<RunRecord>& records) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());

  auto open = [&](const char* name) {
    const auto path = (fs::path(dir) / name).string();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    return out;
  };
  auto finish = [&](std::ofstream& out, const char* name) {
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + (fs::path(dir) / name).string() + "'");
  };

  {
    auto out = open("summary.csv");
    write_summary_csv(out, records);
    finish(out, "summary.csv");
  }
  {
    auto out = open("summary_stats.csv");
    write_summary_stats_csv(out, records);
    finish(out, "summary_stats.csv");
  }
  if (base.output.playout_delays) {
    auto out = open("playout_delays.csv");
    write_playout_csv(out, records);
    finish(out, "playout_delays.csv");
  }
  {
    auto out = open("effective_config.txt");
    out << effective_config_text(base);
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(base)));
    out << "# config_hash = " << hash << '\n';
    finish(out, "effective_config.txt");
  }
}

}  // namespace hsdpa
