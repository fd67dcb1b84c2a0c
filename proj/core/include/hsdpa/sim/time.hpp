#pragma once

#include <chrono>
#include <cstdint>

namespace hsdpa {

// Simulation time is an integer count of microseconds since the start of the
// run. Durations and instants share the same representation.
using Time = std::chrono::duration<std::int64_t, std::micro>;

using namespace std::chrono_literals;

inline constexpr Time kTti = 2ms;
inline constexpr Time kFramePeriod = 10ms;

constexpr double to_seconds(Time t) { return static_cast<double>(t.count()) * 1e-6; }

constexpr Time from_ms(std::int64_t ms) { return Time{ms * 1000}; }

}  // namespace hsdpa
