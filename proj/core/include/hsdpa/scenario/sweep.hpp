#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "hsdpa/scenario/config.hpp"
#include "hsdpa/traffic/metrics.hpp"

namespace hsdpa {

struct SweepAxes {
  std::vector<int> users;
  std::vector<Scheme> schemes;
  std::vector<int> db_ms;

  /// users=1,5,10,20,30 x {cbs, stsp, dtsp x db_ms 40,80,120,160}.
  static SweepAxes reference_grid();
};

/// One sweep cell. db_ms is only meaningful for D-TSP and is reported as 0
/// otherwise.
struct CellSpec {
  int users = 1;
  Scheme scheme = Scheme::dtsp;
  int db_ms = 0;
  int delta = 0;
};

struct RunRecord {
  CellSpec cell;
  int rep = 0;
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
  SimMetrics metrics;
  double wall_seconds = 0.0;
};

/// Cells in output order: users outermost, then scheme, then db_ms. Empty
/// axes fall back to the base configuration's value.
std::vector<CellSpec> expand_cells(const ScenarioConfig& base, const SweepAxes& axes);

ScenarioConfig cell_config(const ScenarioConfig& base, const CellSpec& cell);

/// Seed of one run. The scheme and delay budget are deliberately left out so
/// all schemes at a given load and replication see identical random streams.
std::uint64_t run_seed(std::uint64_t master_seed, int users, int rep);

struct SweepOptions {
  int reps = 1;
  int jobs = 1;
  std::function<void(const RunRecord&)> on_complete;  // called under a lock
};

struct SweepResult {
  std::vector<RunRecord> records;  // completed runs, in cell-major order
  bool complete = true;
  std::string error;
};

/// One simulation per (cell, rep). Runs may execute on `jobs` threads; the
/// record order does not depend on scheduling. The first failure stops new
/// runs from starting and is reported in `error`.
SweepResult run_sweep(const ScenarioConfig& base, const SweepAxes& axes, const SweepOptions& opt);

inline constexpr const char* kSummaryHeader =
    "scheme,db_ms,delta,users,seed,rep,nrt_throughput_bps,rt_discard_ratio,rt_underruns,"
    "rt_packets_played,nrt_admission_drops,rt_admission_drops";
inline constexpr const char* kPlayoutHeader =
    "scheme,db_ms,users,rep,playout_time_s,inter_packet_delay_s";
inline constexpr const char* kSummaryStatsHeader =
    "scheme,db_ms,delta,users,reps,nrt_throughput_bps_mean,nrt_throughput_bps_std,"
    "rt_discard_ratio_mean,rt_discard_ratio_std,rt_underruns_mean,rt_underruns_std,"
    "nrt_admission_drops_mean,rt_admission_drops_mean";

std::string summary_row(const RunRecord& r);
void write_summary_csv(std::ostream& os, const std::vector<RunRecord>& records);
void write_playout_csv(std::ostream& os, const std::vector<RunRecord>& records);
void write_summary_stats_csv(std::ostream& os, const std::vector<RunRecord>& records);

/// Writes summary.csv, summary_stats.csv, effective_config.txt and, if
/// enabled, playout_delays.csv into `dir` (created if missing). Throws
/// std::runtime_error if a file cannot be written.
void write_outputs(const std::string& dir, const ScenarioConfig& base,
                   const std::vector<RunRecord>& records);

}  // namespace hsdpa
