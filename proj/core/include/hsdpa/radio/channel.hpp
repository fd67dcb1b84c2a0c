#pragma once

#include <deque>

#include "hsdpa/radio/amc.hpp"
#include "hsdpa/radio/radio_config.hpp"
#include "hsdpa/sim/rng.hpp"
#include "hsdpa/sim/time.hpp"

namespace hsdpa {

/// 148 + 40 log10(R) by default. Throws std::invalid_argument for R <= 0.
double path_loss_db(const RadioConfig& cfg, double distance_km);

/// Received HS-DSCH power over thermal noise, single cell, no interference.
double compute_sinr_db(const RadioConfig& cfg, double distance_km, double shadowing_db);

/// Correlation between shadowing samples taken `moved_m` metres apart.
double shadowing_correlation(double moved_m, double decorrelation_m);

/// AR(1) step of a zero-mean Gaussian-in-dB process with the given sigma.
/// correlation == 1 returns prev_db without consuming a draw.
double sample_shadowing(RandomStream& rng, double prev_db, double sigma_db, double correlation);

/// Per-UE radio state advanced once per TTI.
///
/// Moving UEs use distance-based exponential decorrelation; static UEs draw
/// an independent sample every static_resample_period. The CQI seen by the
/// Node B is the one computed cqi_latency_ttis updates earlier.
class UeChannel {
 public:
  UeChannel(const RadioConfig& cfg, RandomStream& shadowing_rng, double distance_km,
            double speed_kmh);

  void advance(Time now);

  double distance_km() const { return distance_km_; }
  double speed_kmh() const { return speed_kmh_; }
  double shadowing_db() const { return shadowing_db_; }
  double sinr_db() const { return sinr_db_; }
  int current_cqi() const { return cqi_history_.back(); }
  int reported_cqi() const { return cqi_history_.front(); }

 private:
  const RadioConfig* cfg_;
  RandomStream* rng_;
  double initial_distance_km_;
  double distance_km_;
  double speed_kmh_;
  double shadowing_db_ = 0.0;
  double sinr_db_ = 0.0;
  Time last_update_{0};
  Time last_resample_{0};
  std::deque<int> cqi_history_;
};

}  // namespace hsdpa
