#include "hsdpa/scenario/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "hsdpa/sim/rng.hpp"

namespace hsdpa {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view what) {
  throw ConfigError("invalid value '" + std::string(value) + "' for " + std::string(key) + ": " +
                    std::string(what));
}

double parse_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || p != end || !std::isfinite(out)) bad_value(key, v, "expected a number");
  return out;
}

std::int64_t parse_int(std::string_view key, std::string_view v) {
  std::int64_t out = 0;
  const auto* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || p != end) bad_value(key, v, "expected an integer");
  return out;
}

std::uint64_t parse_u64(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  const auto* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || p != end) bad_value(key, v, "expected a non-negative integer");
  return out;
}

int parse_i32(std::string_view key, std::string_view v) {
  const auto x = parse_int(key, v);
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    bad_value(key, v, "out of range");
  }
  return static_cast<int>(x);
}

bool parse_bool(std::string_view key, std::string_view v) {
  const auto s = lower(v);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  bad_value(key, v, "expected true or false");
}

Time parse_ms(std::string_view key, std::string_view v) {
  return Time{std::llround(parse_double(key, v) * 1000.0)};
}

std::string format_ms(Time t) { return format_number(static_cast<double>(t.count()) / 1000.0); }

struct KeySpec {
  std::string name;
  std::function<std::string(const ScenarioConfig&)> get;
  std::function<void(ScenarioConfig&, std::string_view, std::string_view)> set;
};

template <typename Member>
KeySpec int_key(std::string name, Member member) {
  return {std::move(name), [member](const ScenarioConfig& c) { return std::to_string(member(c)); },
          [member](ScenarioConfig& c, std::string_view k, std::string_view v) {
            member(c) = parse_i32(k, v);
          }};
}

template <typename Member>
KeySpec double_key(std::string name, Member member) {
  return {std::move(name), [member](const ScenarioConfig& c) { return format_number(member(c)); },
          [member](ScenarioConfig& c, std::string_view k, std::string_view v) {
            member(c) = parse_double(k, v);
          }};
}

template <typename Member>
KeySpec ms_key(std::string name, Member member) {
  return {std::move(name), [member](const ScenarioConfig& c) { return format_ms(member(c)); },
          [member](ScenarioConfig& c, std::string_view k, std::string_view v) {
            member(c) = parse_ms(k, v);
          }};
}

template <typename Member>
KeySpec bool_key(std::string name, Member member) {
  return {std::move(name),
          [member](const ScenarioConfig& c) { return std::string(member(c) ? "true" : "false"); },
          [member](ScenarioConfig& c, std::string_view k, std::string_view v) {
            member(c) = parse_bool(k, v);
          }};
}

#define HSDPA_FIELD(expr) [](auto& c) -> auto& { return c.expr; }

const std::vector<KeySpec>& registry() {
  static const std::vector<KeySpec> keys = [] {
    std::vector<KeySpec> k;
    k.push_back(int_key("users", HSDPA_FIELD(users)));
    k.push_back({"scheme", [](const ScenarioConfig& c) { return std::string(to_string(c.scheme)); },
                 [](ScenarioConfig& c, std::string_view, std::string_view v) {
                   c.scheme = parse_scheme(v);
                 }});
    k.push_back(int_key("db_ms", HSDPA_FIELD(db_ms)));
    k.push_back({"session_s",
                 [](const ScenarioConfig& c) { return format_number(to_seconds(c.session)); },
                 [](ScenarioConfig& c, std::string_view key, std::string_view v) {
                   c.session = Time{std::llround(parse_double(key, v) * 1e6)};
                 }});
    k.push_back({"seed", [](const ScenarioConfig& c) { return std::to_string(c.seed); },
                 [](ScenarioConfig& c, std::string_view key, std::string_view v) {
                   c.seed = parse_u64(key, v);
                 }});
    k.push_back(int_key("reps", HSDPA_FIELD(reps)));

    k.push_back(int_key("buffer.N", HSDPA_FIELD(buffer.total_capacity)));
    k.push_back(int_key("buffer.R", HSDPA_FIELD(buffer.rt_threshold)));
    k.push_back(int_key("buffer.L", HSDPA_FIELD(buffer.fc_low_threshold)));
    k.push_back(int_key("buffer.H", HSDPA_FIELD(buffer.fc_high_threshold)));
    k.push_back(ms_key("buffer.db_max_ms", HSDPA_FIELD(max_delay_budget)));
    k.push_back(ms_key("buffer.dt_ms", HSDPA_FIELD(discard_timeout)));
    k.push_back({"buffer.hol_budget",
                 [](const ScenarioConfig& c) {
                   return std::string(c.hol_budget == HolBudget::db_max ? "db_max" : "db");
                 },
                 [](ScenarioConfig& c, std::string_view key, std::string_view v) {
                   const auto s = lower(v);
                   if (s == "db_max") {
                     c.hol_budget = HolBudget::db_max;
                   } else if (s == "db") {
                     c.hol_budget = HolBudget::db;
                   } else {
                     bad_value(key, v, "expected db_max or db");
                   }
                 }});
    k.push_back(int_key("mac.header_bits", HSDPA_FIELD(mac_header_bits)));

    k.push_back(double_key("fc.w", HSDPA_FIELD(fc.occupancy_weight)));
    k.push_back(double_key("fc.alpha", HSDPA_FIELD(fc.rate_weight)));
    k.push_back(double_key("fc.k", HSDPA_FIELD(fc.overflow_gain)));
    k.push_back(ms_key("fc.frame_ms", HSDPA_FIELD(fc.frame_period)));
    k.push_back({"fc.rate_update",
                 [](const ScenarioConfig& c) {
                   return std::string(c.rate_update == RateUpdate::granted ? "granted"
                                                                           : "nrt_backlogged");
                 },
                 [](ScenarioConfig& c, std::string_view key, std::string_view v) {
                   const auto s = lower(v);
                   if (s == "granted") {
                     c.rate_update = RateUpdate::granted;
                   } else if (s == "nrt_backlogged") {
                     c.rate_update = RateUpdate::nrt_backlogged;
                   } else {
                     bad_value(key, v, "expected nrt_backlogged or granted");
                   }
                 }});
    k.push_back({"fc.rate_normalization",
                 [](const ScenarioConfig& c) {
                   return std::string(c.rate_normalization == RateNormalization::tti ? "tti"
                                                                                    : "elapsed");
                 },
                 [](ScenarioConfig& c, std::string_view key, std::string_view v) {
                   const auto s = lower(v);
                   if (s == "tti") {
                     c.rate_normalization = RateNormalization::tti;
                   } else if (s == "elapsed") {
                     c.rate_normalization = RateNormalization::elapsed;
                   } else {
                     bad_value(key, v, "expected tti or elapsed");
                   }
                 }});
    k.push_back(bool_key("fc.space_guard", HSDPA_FIELD(fc_space_guard)));
    k.push_back(double_key("fc.lambda_rt_bps", HSDPA_FIELD(qos.lambda_rt_bps)));
    k.push_back(double_key("fc.nrt_max_bps", HSDPA_FIELD(qos.nrt_max_bitrate_bps)));

    k.push_back(double_key("radio.node_b_power_w", HSDPA_FIELD(radio.node_b_total_power_w)));
    k.push_back(double_key("radio.hs_dsch_fraction", HSDPA_FIELD(radio.hs_dsch_power_fraction)));
    k.push_back(double_key("radio.noise_w", HSDPA_FIELD(radio.noise_power_w)));
    k.push_back(double_key("radio.pl_intercept_db", HSDPA_FIELD(radio.path_loss_intercept_db)));
    k.push_back(double_key("radio.pl_slope_db", HSDPA_FIELD(radio.path_loss_slope_db)));
    k.push_back(double_key("radio.shadowing_sigma_db", HSDPA_FIELD(radio.shadowing_sigma_db)));
    k.push_back(double_key("radio.shadowing_decorr_m", HSDPA_FIELD(radio.shadowing_decorrelation_m)));
    k.push_back(ms_key("radio.static_resample_ms", HSDPA_FIELD(radio.static_resample_period)));
    k.push_back(double_key("radio.carrier_hz", HSDPA_FIELD(radio.carrier_hz)));
    k.push_back(double_key("radio.chip_rate_cps", HSDPA_FIELD(radio.chip_rate_cps)));
    k.push_back(int_key("radio.sf", HSDPA_FIELD(radio.spreading_factor)));
    k.push_back(int_key("radio.codes", HSDPA_FIELD(radio.num_codes)));
    k.push_back(int_key("radio.cqi_latency_ttis", HSDPA_FIELD(radio.cqi_latency_ttis)));
    k.push_back(ms_key("radio.harq_feedback_ms", HSDPA_FIELD(radio.harq_feedback_latency)));
    k.push_back(int_key("radio.harq_processes", HSDPA_FIELD(radio.num_harq_processes)));
    k.push_back(int_key("radio.max_harq_tx", HSDPA_FIELD(radio.max_harq_transmissions)));
    k.push_back(double_key("radio.combining_gain_db", HSDPA_FIELD(radio.combining_gain_db)));
    k.push_back({"radio.cqi_thresholds_db",
                 [](const ScenarioConfig& c) {
                   std::string s;
                   for (double t : c.radio.cqi_thresholds_db) {
                     if (!s.empty()) s += ',';
                     s += format_number(t);
                   }
                   return s;
                 },
                 [](ScenarioConfig& c, std::string_view key, std::string_view v) {
                   std::array<double, 6> out{};
                   std::size_t n = 0;
                   std::size_t pos = 0;
                   while (pos <= v.size()) {
                     auto comma = v.find(',', pos);
                     if (comma == std::string_view::npos) comma = v.size();
                     if (n == out.size()) bad_value(key, v, "expected 6 thresholds");
                     out[n++] = parse_double(key, trim(v.substr(pos, comma - pos)));
                     pos = comma + 1;
                   }
                   if (n != out.size()) bad_value(key, v, "expected 6 thresholds");
                   c.radio.cqi_thresholds_db = out;
                 }});
    k.push_back(double_key("radio.forced_decode_p", HSDPA_FIELD(radio.forced_decode_probability)));
    k.push_back(double_key("radio.test_ue_distance_km", HSDPA_FIELD(placement.test_ue_distance_km)));
    k.push_back(double_key("radio.test_ue_speed_kmh", HSDPA_FIELD(placement.test_ue_speed_kmh)));
    k.push_back(double_key("radio.cell_inner_km", HSDPA_FIELD(placement.cell_inner_km)));
    k.push_back(double_key("radio.cell_outer_km", HSDPA_FIELD(placement.cell_outer_km)));

    k.push_back(int_key("rlc.tx_window", HSDPA_FIELD(rlc.tx_window)));
    k.push_back(int_key("rlc.rx_window", HSDPA_FIELD(rlc.rx_window)));
    k.push_back(int_key("rlc.max_dat", HSDPA_FIELD(rlc.max_dat)));
    k.push_back(ms_key("rlc.retx_delay_ms", HSDPA_FIELD(rlc.retransmission_delay)));
    k.push_back(ms_key("rlc.status_delay_ms", HSDPA_FIELD(rlc.status_delay)));

    k.push_back(int_key("tcp.mss_bytes", HSDPA_FIELD(tcp.mss_bytes)));
    k.push_back(int_key("tcp.rwnd_bytes", HSDPA_FIELD(tcp.rwnd_bytes)));
    k.push_back(int_key("tcp.initial_cwnd", HSDPA_FIELD(tcp.initial_cwnd_segments)));
    k.push_back(int_key("tcp.dupack_threshold", HSDPA_FIELD(tcp.dupack_threshold)));
    k.push_back(ms_key("tcp.initial_rto_ms", HSDPA_FIELD(tcp.initial_rto)));
    k.push_back(ms_key("tcp.min_rto_ms", HSDPA_FIELD(tcp.min_rto)));
    k.push_back(ms_key("tcp.max_rto_ms", HSDPA_FIELD(tcp.max_rto)));
    k.push_back(ms_key("tcp.granularity_ms", HSDPA_FIELD(tcp.clock_granularity)));

    k.push_back(ms_key("delay.cn_ms", HSDPA_FIELD(delay.cn)));
    k.push_back(ms_key("delay.iub_ms", HSDPA_FIELD(delay.iub)));
    k.push_back(ms_key("delay.uplink_extra_ms", HSDPA_FIELD(delay.uplink_extra)));
    k.push_back(ms_key("ue.reorder_timer_ms", HSDPA_FIELD(reorder_timeout)));
    k.push_back(ms_key("playout.initial_buffering_ms", HSDPA_FIELD(initial_buffering)));
    k.push_back(double_key("traffic.rt_rate_bps", HSDPA_FIELD(traffic.rt_rate_bps)));
    k.push_back(int_key("traffic.rt_packet_bits", HSDPA_FIELD(traffic.rt_packet_bits)));
    k.push_back(bool_key("output.playout_delays", HSDPA_FIELD(output.playout_delays)));
    return k;
  }();
  return keys;
}

#undef HSDPA_FIELD

const KeySpec& find_key(std::string_view key) {
  for (const auto& k : registry()) {
    if (k.name == key) return k;
  }
  throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, p);
}

Scheme parse_scheme(std::string_view text) {
  const auto s = lower(trim(text));
  if (s == "cbs") return Scheme::cbs;
  if (s == "stsp" || s == "s-tsp") return Scheme::stsp;
  if (s == "dtsp" || s == "d-tsp") return Scheme::dtsp;
  throw ConfigError("unknown scheme '" + std::string(text) + "' (expected cbs, stsp or dtsp)");
}

int ScenarioConfig::delta() const {
  return switching_threshold(from_ms(db_ms), qos.lambda_rt_bps, qos.pdu_size_bits);
}

PriorityConfig ScenarioConfig::priority() const {
  PriorityConfig p;
  p.delay_budget = from_ms(db_ms);
  p.max_delay_budget = max_delay_budget;
  p.discard_timeout = discard_timeout;
  p.delta = delta();
  p.hol_budget = hol_budget;
  return p;
}

void ScenarioConfig::validate() const {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  auto wrap = [](const auto& fn) {
    try {
      fn();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  };
  require(users >= 1, "users must be >= 1");
  require(db_ms >= 0, "db_ms must be >= 0");
  require(session > Time{0}, "session_s must be > 0");
  require(reps >= 1, "reps must be >= 1");
  wrap([&] { buffer.validate(); });
  require(max_delay_budget > Time{0}, "buffer.db_max_ms must be > 0");
  require(discard_timeout > Time{0}, "buffer.dt_ms must be > 0");
  require(mac_header_bits >= 0, "mac.header_bits must be >= 0");
  require(fc.occupancy_weight >= 0.0 && fc.occupancy_weight < 1.0, "fc.w must be in [0, 1)");
  require(fc.rate_weight >= 0.0 && fc.rate_weight < 1.0, "fc.alpha must be in [0, 1)");
  require(fc.overflow_gain >= 0.0 && fc.overflow_gain <= 1.0, "fc.k must be in [0, 1]");
  require(fc.frame_period > Time{0} && fc.frame_period.count() % kTti.count() == 0,
          "fc.frame_ms must be a positive multiple of the TTI");
  wrap([&] { qos.validate(); });
  wrap([&] { radio.validate(); });
  require(placement.test_ue_distance_km > 0.0, "radio.test_ue_distance_km must be > 0");
  require(placement.test_ue_speed_kmh >= 0.0, "radio.test_ue_speed_kmh must be >= 0");
  require(placement.cell_inner_km > 0.0 && placement.cell_inner_km <= placement.cell_outer_km,
          "cell radii must satisfy 0 < inner <= outer");
  wrap([&] { rlc.validate(); });
  require(rlc.pdu_size_bits == kMacdPduBits, "RLC PDU size is fixed at 320 bits");
  wrap([&] { tcp.validate(); });
  require(delay.cn >= Time{0} && delay.iub >= Time{0} && delay.uplink_extra >= Time{0},
          "delays must be >= 0");
  require(reorder_timeout > Time{0}, "ue.reorder_timer_ms must be > 0");
  require(initial_buffering >= Time{0}, "playout.initial_buffering_ms must be >= 0");
  require(traffic.rt_rate_bps > 0.0, "traffic.rt_rate_bps must be > 0");
  require(traffic.rt_packet_bits > 0, "traffic.rt_packet_bits must be > 0");
}

void set_config_value(ScenarioConfig& cfg, std::string_view key, std::string_view value) {
  find_key(key).set(cfg, key, trim(value));
}

std::string get_config_value(const ScenarioConfig& cfg, std::string_view key) {
  return find_key(key).get(cfg);
}

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const auto& k : registry()) out.push_back(k.name);
  return out;
}

void apply_override(ScenarioConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("expected key=value, got '" + std::string(assignment) + "'");
  }
  const auto key = trim(assignment.substr(0, eq));
  const auto value = trim(assignment.substr(eq + 1));
  if (key.empty() || value.empty()) {
    throw ConfigError("expected key=value, got '" + std::string(assignment) + "'");
  }
  set_config_value(cfg, key, value);
}

void apply_config_text(ScenarioConfig& cfg, std::string_view text, std::string_view origin) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    // Collapse blanks around '=' so "a = 1" and "a=1 b=2" both tokenize.
    std::string compact;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (c == ' ' || c == '\t') {
        const auto next = line.find_first_not_of(" \t", i);
        const bool around_eq = (next != std::string_view::npos && line[next] == '=') ||
                               (!compact.empty() && compact.back() == '=');
        if (around_eq) continue;
        if (!compact.empty() && compact.back() != ' ') compact += ' ';
        continue;
      }
      compact += c;
    }
    std::istringstream tokens(compact);
    std::string tok;
    while (tokens >> tok) {
      try {
        apply_override(cfg, tok);
      } catch (const ConfigError& e) {
        throw ConfigError(std::string(origin) + ":" + std::to_string(line_no) + ": " + e.what());
      }
    }
  }
}

std::string effective_config_text(const ScenarioConfig& cfg) {
  std::string out;
  for (const auto& k : registry()) {
    out += k.name;
    out += " = ";
    out += k.get(cfg);
    out += '\n';
  }
  return out;
}

std::uint64_t config_hash(const ScenarioConfig& cfg) { return fnv1a64(effective_config_text(cfg)); }

ScenarioConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  ScenarioConfig cfg;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    apply_config_text(cfg, ss.str(), path);
  }
  for (const auto& o : overrides) apply_override(cfg, o);
  cfg.validate();
  return cfg;
}

}  // namespace hsdpa
