#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "hsdpa/radio/radio_config.hpp"

namespace hsdpa {

struct AmcScheme {
  std::string_view name;
  int bits_per_symbol;
  int rate_num;
  int rate_den;
};

// Index k-1 is selected by CQI k.
inline constexpr std::array<AmcScheme, 6> kAmcSchemes{{
    {"QPSK 1/4", 2, 1, 4},
    {"QPSK 1/2", 2, 1, 2},
    {"QPSK 3/4", 2, 3, 4},
    {"16QAM 1/4", 4, 1, 4},
    {"16QAM 1/2", 4, 1, 2},
    {"16QAM 3/4", 4, 3, 4},
}};

inline constexpr int kMaxCqi = static_cast<int>(kAmcSchemes.size());

struct AmcDecision {
  int cqi = 0;
  const AmcScheme* scheme = nullptr;
  int tbs_bits = 0;
};

/// Chips per TTI divided by the spreading factor (480 for SF16).
int symbols_per_tti_per_code(const RadioConfig& cfg);

int transport_block_bits(const RadioConfig& cfg, const AmcScheme& scheme);

/// Monotone step function: number of thresholds at or below sinr_db.
int cqi_from_sinr(const RadioConfig& cfg, double sinr_db);

/// std::nullopt for CQI 0 (nothing decodable, no transmission this TTI).
std::optional<AmcDecision> select_amc(const RadioConfig& cfg, int reported_cqi);

/// First-transmission success is 0.9 at the scheme's threshold and the
/// block error rate falls one decade per 10 dB above it. Each retransmission
/// adds the configured combining gain.
double decode_success_probability(const RadioConfig& cfg, int cqi, double sinr_db, int tx_count);

}  // namespace hsdpa
