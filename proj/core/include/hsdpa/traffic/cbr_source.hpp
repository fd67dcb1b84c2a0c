#pragma once

#include <cstdint>

#include "hsdpa/sim/time.hpp"

namespace hsdpa {

struct CbrConfig {
  double rate_bps = 64000.0;
  int packet_bits = 320;
  Time duration = 120s;

  void validate() const;
};

/// Constant-bit-rate packet source starting at t = 0.
class CbrSource {
 public:
  explicit CbrSource(CbrConfig cfg);

  Time interval() const { return interval_; }
  std::uint64_t total_packets() const;

  /// Emission time of packet `n`.
  Time emission_time(std::uint64_t n) const { return interval_ * static_cast<std::int64_t>(n); }

  bool exhausted() const { return emitted_ >= total_packets(); }

  /// Returns the number of the emitted packet.
  std::uint64_t emit() { return emitted_++; }
  std::uint64_t emitted() const { return emitted_; }
  const CbrConfig& config() const { return cfg_; }

 private:
  CbrConfig cfg_;
  Time interval_;
  std::uint64_t emitted_ = 0;
};

}  // namespace hsdpa
