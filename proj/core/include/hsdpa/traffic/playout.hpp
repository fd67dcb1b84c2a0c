#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hsdpa/sim/time.hpp"

namespace hsdpa {

struct PlayoutSample {
  Time play_time{0};
  Time inter_packet_delay{0};
};

/// UE de-jitter buffer for the RT stream.
///
/// The first packet plays initial_buffering after it arrives. Each later
/// packet plays one nominal spacing after its predecessor, or on arrival if
/// it is late, in which case an underrun is counted. Lost packets have no
/// slot. Packets whose play instant falls at or after the session end are
/// left unplayed.
class PlayoutBuffer {
 public:
  PlayoutBuffer(Time initial_buffering, Time spacing, Time session_end);

  /// Feed packets in delivery order.
  void on_arrival(Time arrival);

  std::uint64_t played() const { return played_; }
  std::uint64_t underruns() const { return underruns_; }
  std::uint64_t unplayed() const { return unplayed_; }
  const std::vector<PlayoutSample>& samples() const { return samples_; }
  void set_record_samples(bool on) { record_ = on; }

 private:
  Time initial_buffering_;
  Time spacing_;
  Time session_end_;
  std::optional<Time> last_play_;
  std::uint64_t played_ = 0;
  std::uint64_t underruns_ = 0;
  std::uint64_t unplayed_ = 0;
  bool record_ = true;
  std::vector<PlayoutSample> samples_;
};

}  // namespace hsdpa
