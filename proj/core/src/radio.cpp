#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hsdpa/radio/amc.hpp"
#include "hsdpa/radio/channel.hpp"
#include "hsdpa/radio/radio_config.hpp"

namespace hsdpa {

void RadioConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("radio: ") + what);
  };
  require(node_b_total_power_w > 0.0, "node_b_total_power must be > 0");
  require(hs_dsch_power_fraction > 0.0 && hs_dsch_power_fraction <= 1.0,
          "hs_dsch_power_fraction must be in (0, 1]");
  require(noise_power_w > 0.0, "noise_power must be > 0");
  require(shadowing_sigma_db >= 0.0, "shadowing_sigma must be >= 0");
  require(shadowing_decorrelation_m > 0.0, "shadowing_decorrelation must be > 0");
  require(static_resample_period > Time{0}, "static_resample_period must be > 0");
  require(spreading_factor > 0 && num_codes > 0, "spreading factor and codes must be > 0");
  require(cqi_latency_ttis >= 0, "cqi_latency must be >= 0");
  require(harq_feedback_latency > Time{0}, "harq_feedback_latency must be > 0");
  require(num_harq_processes >= 1, "at least one HARQ process is required");
  require(max_harq_transmissions >= 1, "max_harq_transmissions must be >= 1");
  require(std::is_sorted(cqi_thresholds_db.begin(), cqi_thresholds_db.end()),
          "cqi thresholds must be non-decreasing");
  require(forced_decode_probability <= 1.0, "forced_decode_probability must be <= 1");
}

double path_loss_db(const RadioConfig& cfg, double distance_km) {
  if (!(distance_km > 0.0)) {
    throw std::invalid_argument("path_loss_db: distance must be positive");
  }
  return cfg.path_loss_intercept_db + cfg.path_loss_slope_db * std::log10(distance_km);
}

double compute_sinr_db(const RadioConfig& cfg, double distance_km, double shadowing_db) {
  const double loss_db = path_loss_db(cfg, distance_km) + shadowing_db;
  const double received_w = cfg.hs_dsch_power_w() * std::pow(10.0, -loss_db / 10.0);
  return 10.0 * std::log10(received_w / cfg.noise_power_w);
}

double shadowing_correlation(double moved_m, double decorrelation_m) {
  return std::exp(-std::abs(moved_m) / decorrelation_m);
}

double sample_shadowing(RandomStream& rng, double prev_db, double sigma_db, double correlation) {
  if (sigma_db == 0.0) return 0.0;
  if (correlation >= 1.0) return prev_db;
  const double innovation = std::sqrt(1.0 - correlation * correlation) * sigma_db * rng.normal();
  return correlation * prev_db + innovation;
}

int symbols_per_tti_per_code(const RadioConfig& cfg) {
  const double chips = cfg.chip_rate_cps * to_seconds(kTti);
  return static_cast<int>(std::lround(chips / cfg.spreading_factor));
}

int transport_block_bits(const RadioConfig& cfg, const AmcScheme& scheme) {
  const long raw = static_cast<long>(symbols_per_tti_per_code(cfg)) * scheme.bits_per_symbol *
                   scheme.rate_num * cfg.num_codes;
  return static_cast<int>(raw / scheme.rate_den);
}

int cqi_from_sinr(const RadioConfig& cfg, double sinr_db) {
  int cqi = 0;
  for (double threshold : cfg.cqi_thresholds_db) {
    if (sinr_db >= threshold) ++cqi;
  }
  return cqi;
}

std::optional<AmcDecision> select_amc(const RadioConfig& cfg, int reported_cqi) {
  if (reported_cqi < 1) return std::nullopt;
  const int cqi = std::min(reported_cqi, kMaxCqi);
  const AmcScheme& scheme = kAmcSchemes[cqi - 1];
  return AmcDecision{cqi, &scheme, transport_block_bits(cfg, scheme)};
}

double decode_success_probability(const RadioConfig& cfg, int cqi, double sinr_db, int tx_count) {
  if (cfg.forced_decode_probability >= 0.0) return cfg.forced_decode_probability;
  if (cqi < 1 || cqi > kMaxCqi) return 0.0;
  const double effective = sinr_db + cfg.combining_gain_db * (tx_count - 1);
  const double margin = effective - cfg.cqi_thresholds_db[cqi - 1];
  const double bler = std::min(1.0, 0.1 * std::pow(10.0, -margin / 10.0));
  return 1.0 - bler;
}

UeChannel::UeChannel(const RadioConfig& cfg, RandomStream& shadowing_rng, double distance_km,
                     double speed_kmh)
    : cfg_(&cfg),
      rng_(&shadowing_rng),
      initial_distance_km_(distance_km),
      distance_km_(distance_km),
      speed_kmh_(speed_kmh) {
  if (!(distance_km > 0.0)) throw std::invalid_argument("UeChannel: distance must be positive");
  shadowing_db_ = sample_shadowing(*rng_, 0.0, cfg.shadowing_sigma_db, 0.0);
  sinr_db_ = compute_sinr_db(cfg, distance_km_, shadowing_db_);
  cqi_history_.assign(static_cast<std::size_t>(cfg.cqi_latency_ttis) + 1,
                      cqi_from_sinr(cfg, sinr_db_));
}

void UeChannel::advance(Time now) {
  const Time elapsed = now - last_update_;
  last_update_ = now;
  if (speed_kmh_ > 0.0) {
    const double speed_mps = speed_kmh_ / 3.6;
    distance_km_ = initial_distance_km_ + speed_mps * to_seconds(now) / 1000.0;
    const double moved_m = speed_mps * to_seconds(elapsed);
    shadowing_db_ = sample_shadowing(*rng_, shadowing_db_, cfg_->shadowing_sigma_db,
                                     shadowing_correlation(moved_m, cfg_->shadowing_decorrelation_m));
  } else if (now - last_resample_ >= cfg_->static_resample_period) {
    last_resample_ = now;
    shadowing_db_ = sample_shadowing(*rng_, shadowing_db_, cfg_->shadowing_sigma_db, 0.0);
  }
  sinr_db_ = compute_sinr_db(*cfg_, distance_km_, shadowing_db_);
  cqi_history_.push_back(cqi_from_sinr(*cfg_, sinr_db_));
  while (cqi_history_.size() > static_cast<std::size_t>(cfg_->cqi_latency_ttis) + 1) {
    cqi_history_.pop_front();
  }
}

}  // namespace hsdpa
