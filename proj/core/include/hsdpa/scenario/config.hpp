#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hsdpa/flow/flow_control.hpp"
#include "hsdpa/mac/tsp_buffer.hpp"
#include "hsdpa/radio/radio_config.hpp"
#include "hsdpa/rlc/rlc.hpp"
#include "hsdpa/sim/time.hpp"
#include "hsdpa/traffic/tcp.hpp"

namespace hsdpa {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DelayConfig {
  Time cn = 70ms;            // external + core network, each direction
  Time iub = 20ms;           // RNC to Node B
  Time uplink_extra = 10ms;  // radio and Iub return for TCP ACKs
};

struct PlacementConfig {
  double test_ue_distance_km = 0.2;
  double test_ue_speed_kmh = 3.0;
  double cell_inner_km = 0.1;
  double cell_outer_km = 1.0;
};

struct TrafficConfig {
  double rt_rate_bps = 64000.0;
  int rt_packet_bits = 320;
};

/// TTIs on which the NRT rate estimate is updated.
enum class RateUpdate : std::uint8_t {
  nrt_backlogged,  // granted TTIs while the UE's MAC-hs NRT queue is non-empty
  granted,         // every TTI granted to the UE
};

/// Interval the per-update NRT amount is divided by to form a rate sample.
enum class RateNormalization : std::uint8_t {
  tti,      // the TTI length
  elapsed,  // time since the previous update
};

struct OutputConfig {
  bool playout_delays = true;
};

/// Everything one simulation run needs. Defaults reproduce the reference
/// study configuration.
struct ScenarioConfig {
  int users = 1;
  Scheme scheme = Scheme::dtsp;
  int db_ms = 80;
  Time session = 120s;
  std::uint64_t seed = 1;
  int reps = 5;

  BufferConfig buffer;
  Time max_delay_budget = 160ms;
  Time discard_timeout = 160ms;
  HolBudget hol_budget = HolBudget::db_max;
  int mac_header_bits = 21;

  FlowControlParams fc;
  RateUpdate rate_update = RateUpdate::nrt_backlogged;
  RateNormalization rate_normalization = RateNormalization::tti;
  bool fc_space_guard = true;
  FlowQosProfile qos;
  RadioConfig radio;
  PlacementConfig placement;
  RlcConfig rlc;
  TcpConfig tcp;
  DelayConfig delay;
  Time reorder_timeout = 100ms;
  Time initial_buffering = 160ms;
  TrafficConfig traffic;
  OutputConfig output;

  /// delta derived from db_ms and the RT inter-arrival time.
  int delta() const;
  PriorityConfig priority() const;

  /// Throws ConfigError on any out-of-range value or threshold ordering
  /// violation.
  void validate() const;
};

Scheme parse_scheme(std::string_view text);

/// Applies `key = value` lines (several `key=value` pairs may share a line;
/// `#` starts a comment). Does not validate cross-field constraints.
void apply_config_text(ScenarioConfig& cfg, std::string_view text, std::string_view origin = "config");

/// Applies a single override such as "buffer.N=192".
void apply_override(ScenarioConfig& cfg, std::string_view assignment);

void set_config_value(ScenarioConfig& cfg, std::string_view key, std::string_view value);
std::string get_config_value(const ScenarioConfig& cfg, std::string_view key);

/// All recognised keys in echo order.
std::vector<std::string> config_keys();

/// One `key = value` line per key, in config_keys() order.
std::string effective_config_text(const ScenarioConfig& cfg);

/// FNV-1a of the effective configuration text.
std::uint64_t config_hash(const ScenarioConfig& cfg);

/// Reads a file, applies it over the defaults, then the overrides, then
/// validates.
ScenarioConfig load_config(const std::string& path, const std::vector<std::string>& overrides);

/// Shortest round-trip decimal form.
std::string format_number(double v);

}  // namespace hsdpa
