#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "hsdpa/sim/time.hpp"

namespace hsdpa {

using UeId = std::uint32_t;

enum class FlowClass : std::uint8_t { rt, nrt };

constexpr std::string_view to_string(FlowClass f) { return f == FlowClass::rt ? "RT" : "NRT"; }

inline constexpr int kMacdPduBits = 320;

/// MAC-d PDU: the fixed-size unit that RLC produces and MAC-hs queues.
///
/// The RLC fields (sequence number and SDU framing) travel with the PDU so
/// the UE-side entities can reassemble without a separate header model.
struct MacdPdu {
  FlowClass flow = FlowClass::nrt;
  std::uint32_t rlc_seq = 0;
  std::uint32_t sdu_id = 0;
  std::uint16_t segment_index = 0;
  std::uint16_t segment_count = 1;
  std::uint64_t app_tag = 0;  // TCP sequence number or RT packet number
  Time created_at{0};         // emission at the traffic source
  Time machs_arrival{0};      // stamped on MAC-hs admission

  static constexpr int size_bits() { return kMacdPduBits; }
  bool last_in_sdu() const { return segment_index + 1 == segment_count; }
};

/// MAC-hs PDU: one header plus MAC-d PDUs of a single flow class, sent on
/// one HARQ process in one TTI.
struct MacHsPdu {
  UeId ue = 0;
  FlowClass flow = FlowClass::nrt;
  std::vector<MacdPdu> sdus;
  int sdu_count = 0;  // equals sdus.size() except for saturated background UEs
  int header_bits = 0;
  int harq_process = -1;
  std::uint32_t tsn = 0;  // per (UE, reordering queue) transmission sequence number
  int cqi = 0;
  int tbs_bits = 0;
  Time transmitted_at{0};

  int payload_bits() const { return sdu_count * kMacdPduBits; }
};

}  // namespace hsdpa
