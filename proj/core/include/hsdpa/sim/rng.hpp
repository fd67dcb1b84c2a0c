#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <utility>

namespace hsdpa {

/// One independent pseudo-random stream.
///
/// Uniform and Gaussian variates are derived from the raw mt19937_64 output
/// here rather than through <random> distributions, whose algorithms are
/// implementation-defined; this keeps draw sequences identical across
/// standard libraries.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via the Box-Muller transform (the spare variate is kept).
  double normal();

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Named streams, each seeded from (master_seed, name, index). Draws on one
/// stream never affect another, so swapping a stochastic component leaves
/// the rest of a run untouched.
class RngStreams {
 public:
  explicit RngStreams(std::uint64_t master_seed) : master_seed_(master_seed) {}

  /// References stay valid for the lifetime of this object.
  RandomStream& stream(std::string_view name, std::uint32_t index = 0);

  std::uint64_t master_seed() const { return master_seed_; }

  static std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view name,
                                   std::uint32_t index);

 private:
  std::uint64_t master_seed_;
  std::map<std::pair<std::string, std::uint32_t>, RandomStream, std::less<>> streams_;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view text, std::uint64_t basis = 0xcbf29ce484222325ULL);

}  // namespace hsdpa
