#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hsdpa/scenario/config.hpp"
#include "hsdpa/scenario/sweep.hpp"

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int parse_int_item(const std::string& axis, const std::string& item) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument(item);
    return v;
  } catch (const std::exception&) {
    throw hsdpa::ConfigError("bad value '" + item + "' in --sweep " + axis);
  }
}

void add_axis(hsdpa::SweepAxes& axes, const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) throw hsdpa::ConfigError("--sweep expects axis=v1,v2,... got '" + spec + "'");
  const std::string axis = spec.substr(0, eq);
  const auto values = split(spec.substr(eq + 1), ',');
  if (values.empty()) throw hsdpa::ConfigError("--sweep " + axis + " has no values");
  if (axis == "users") {
    for (const auto& v : values) axes.users.push_back(parse_int_item(axis, v));
  } else if (axis == "scheme") {
    for (const auto& v : values) axes.schemes.push_back(hsdpa::parse_scheme(v));
  } else if (axis == "db_ms") {
    for (const auto& v : values) axes.db_ms.push_back(parse_int_item(axis, v));
  } else {
    throw hsdpa::ConfigError("unknown sweep axis '" + axis + "' (expected users, scheme or db_ms)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-cell HSDPA MAC-hs buffer management simulator"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run one scenario or a sweep and write CSV results");
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  std::vector<std::string> sweeps;
  int reps = 0;
  long long seed = -1;
  int jobs = 1;
  bool full_grid = false;
  bool quiet = false;
  run->add_option("--config", config_path, "Flat key = value configuration file");
  run->add_option("--set", overrides, "Override a configuration key (key=value)");
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--sweep", sweeps, "Sweep axis: users=..., scheme=..., db_ms=...");
  run->add_option("--reps", reps, "Replications per cell (default: config reps)")
      ->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "Master seed (default: config seed)")->check(CLI::NonNegativeNumber);
  run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  run->add_flag("--full-grid", full_grid, "Sweep the reference grid (5 loads x 6 scheme settings)");
  run->add_flag("-q,--quiet", quiet, "No per-run progress on stderr");

  auto* keys = app.add_subcommand("keys", "Print every configuration key with its default");

  CLI11_PARSE(app, argc, argv);

  if (keys->parsed()) {
    std::cout << hsdpa::effective_config_text(hsdpa::ScenarioConfig{});
    return 0;
  }

  try {
    if (seed >= 0) overrides.push_back("seed=" + std::to_string(seed));
    if (reps > 0) overrides.push_back("reps=" + std::to_string(reps));
    const hsdpa::ScenarioConfig cfg = hsdpa::load_config(config_path, overrides);

    hsdpa::SweepAxes axes = full_grid ? hsdpa::SweepAxes::reference_grid() : hsdpa::SweepAxes{};
    for (const auto& s : sweeps) add_axis(axes, s);

    const auto cells = hsdpa::expand_cells(cfg, axes);
    const std::size_t total = cells.size() * static_cast<std::size_t>(cfg.reps);
    std::size_t done = 0;
    hsdpa::SweepOptions opt;
    opt.reps = cfg.reps;
    opt.jobs = jobs;
    if (!quiet) {
      opt.on_complete = [&](const hsdpa::RunRecord& r) {
        ++done;
        std::fprintf(stderr, "[%zu/%zu] %s db_ms=%d users=%d rep=%d  thr=%.0f bps  discard=%.4f  (%.2fs)\n",
                     done, total, std::string(hsdpa::to_string(r.cell.scheme)).c_str(), r.cell.db_ms,
                     r.cell.users, r.rep, r.metrics.nrt_throughput_bps, r.metrics.rt_discard_ratio,
                     r.wall_seconds);
      };
    }
    const auto result = hsdpa::run_sweep(cfg, axes, opt);
    hsdpa::write_outputs(out_dir, cfg, result.records);
    if (!result.error.empty()) {
      std::cerr << "error: " << result.error << "\n(" << result.records.size() << " of " << total
                << " runs written)\n";
      return 1;
    }
    return 0;
  } catch (const hsdpa::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
