#pragma once

#include <array>

#include "hsdpa/sim/time.hpp"

namespace hsdpa {

struct RadioConfig {
  double node_b_total_power_w = 15.0;
  double hs_dsch_power_fraction = 0.5;
  double noise_power_w = 1.214e-13;
  double path_loss_intercept_db = 148.0;
  double path_loss_slope_db = 40.0;  // per decade of distance in km
  double shadowing_sigma_db = 8.0;
  double shadowing_decorrelation_m = 20.0;
  Time static_resample_period = 1000ms;
  double carrier_hz = 2.0e9;  // informational only
  double chip_rate_cps = 3.84e6;
  int spreading_factor = 16;
  int num_codes = 5;
  int cqi_latency_ttis = 3;
  Time harq_feedback_latency = 5ms;
  int num_harq_processes = 4;
  int max_harq_transmissions = 4;
  double combining_gain_db = 3.0;
  // Lower SINR edge of each AMC scheme, in Table order QPSK 1/4 .. 16QAM 3/4.
  std::array<double, 6> cqi_thresholds_db{-2.0, 1.0, 4.0, 7.0, 10.0, 13.0};
  // Overrides the BLER model when in [0, 1]; negative disables.
  double forced_decode_probability = -1.0;

  double hs_dsch_power_w() const { return node_b_total_power_w * hs_dsch_power_fraction; }

  /// Throws std::invalid_argument on inconsistent values.
  void validate() const;
};

}  // namespace hsdpa
