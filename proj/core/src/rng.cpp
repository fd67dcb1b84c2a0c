#include "hsdpa/sim/rng.hpp"

#include <cmath>
#include <numbers>

namespace hsdpa {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view text, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double RandomStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::uint64_t RngStreams::derive_seed(std::uint64_t master_seed, std::string_view name,
                                      std::uint32_t index) {
  std::uint64_t h = splitmix64(master_seed);
  h = splitmix64(h ^ fnv1a64(name));
  return splitmix64(h ^ index);
}

RandomStream& RngStreams::stream(std::string_view name, std::uint32_t index) {
  auto key = std::make_pair(std::string(name), index);
  auto it = streams_.find(key);
  if (it == streams_.end()) {
    it = streams_.emplace(std::move(key), RandomStream(derive_seed(master_seed_, name, index)))
             .first;
  }
  return it->second;
}

}  // namespace hsdpa
