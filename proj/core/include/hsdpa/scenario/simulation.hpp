#pragma once

#include <cstdint>
#include <memory>

#include "hsdpa/scenario/config.hpp"
#include "hsdpa/traffic/metrics.hpp"

namespace hsdpa {

/// One single-cell HSDPA run.
///
/// UE 0 is the test user carrying the RT stream and the TCP download; every
/// other UE is a static, saturated NRT user. The object owns all of its state
/// and may be handed to another thread before run() is called.
class Simulation {
 public:
  Simulation(const ScenarioConfig& cfg, std::uint64_t seed);
  ~Simulation();
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;
  Simulation(Simulation&&) noexcept;
  Simulation& operator=(Simulation&&) noexcept;

  /// Runs the whole session and returns the finalized metrics. Call once.
  SimMetrics run();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

SimMetrics run_simulation(const ScenarioConfig& cfg, std::uint64_t seed);

}  // namespace hsdpa
