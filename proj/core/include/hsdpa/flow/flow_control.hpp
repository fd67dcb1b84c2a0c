#pragma once

#include <deque>
#include <limits>
#include <vector>

#include "hsdpa/mac/pdu.hpp"
#include "hsdpa/mac/tsp_buffer.hpp"
#include "hsdpa/sim/time.hpp"

namespace hsdpa {

struct FlowQosProfile {
  double lambda_rt_bps = 64000.0;  // guaranteed bit rate of the RT flow
  int pdu_size_bits = kMacdPduBits;
  double nrt_max_bitrate_bps = 256000.0;  // dimensioning only; seeds the rate estimate

  void validate() const;
};

struct FlowControlParams {
  double occupancy_weight = 0.7;  // w
  double rate_weight = 0.7;       // alpha
  double overflow_gain = 0.5;     // k
  Time frame_period = kFramePeriod;
  Time tti = kTti;
};

struct FlowControlState {
  double q_filtered = 0.0;
  double nrt_rate_est_bps = 0.0;
  double rt_credit_carry = 0.0;
  double nrt_credit_carry = 0.0;
};

struct CreditGrant {
  int c_rt = 0;
  int c_nrt = 0;
};

enum class NrtCreditBranch : std::uint8_t { full, reduced, blocked };

/// Branch of the piecewise NRT credit rule for a filtered occupancy.
NrtCreditBranch nrt_credit_branch(double q_filtered, const BufferConfig& buffer);

/// Per-frame RT credit (real-valued): (lambda_rt / PDU size) * T.
double rt_credits_per_frame(const FlowQosProfile& profile, Time frame_period);

/// Per-frame NRT credit ceiling (real-valued) before the RNC backlog cap.
double max_nrt_credits(double q_filtered, double nrt_rate_bps, const FlowQosProfile& profile,
                       const BufferConfig& buffer, double overflow_gain, Time frame_period);

/// Credit-based RNC -> Node B flow control for one UE.
///
/// The occupancy filter is sampled once per frame; the NRT rate estimate is
/// updated on every TTI granted to the UE. Fractional credits carry over to
/// the next frame.
class FlowController {
 public:
  FlowController(FlowQosProfile profile, FlowControlParams params, BufferConfig buffer);

  double update_occupancy_filter(int q_now);

  /// bits_sent is the NRT payload sent in the granted TTI (0 if none). It is
  /// turned into a rate over `interval` before filtering.
  double update_nrt_rate(int bits_sent, Time interval);
  double update_nrt_rate(int bits_sent) { return update_nrt_rate(bits_sent, params_.tti); }

  /// Uses the current filtered occupancy and rate estimate. `space_limit`
  /// additionally caps c_nrt (free MAC-hs room not yet promised to frames in
  /// flight); credit lost to either cap is not carried.
  CreditGrant compute_credits(int ubs_nrt, int space_limit = std::numeric_limits<int>::max());

  /// c_rt the next compute_credits() call will grant.
  int peek_rt_credits() const;

  const FlowControlState& state() const { return state_; }
  FlowControlState& mutable_state() { return state_; }
  const FlowQosProfile& profile() const { return profile_; }
  const FlowControlParams& params() const { return params_; }

 private:
  FlowQosProfile profile_;
  FlowControlParams params_;
  BufferConfig buffer_;
  FlowControlState state_;
};

/// Source of NRT PDUs waiting at the RNC (the RLC AM transmitter).
class NrtPduSource {
 public:
  virtual ~NrtPduSource() = default;
  /// UBS_NRT: PDUs ready to ship now.
  virtual int ready_pdus() const = 0;
  virtual std::vector<MacdPdu> take(int count, Time now) = 0;
};

/// RNC-side per-UE queues feeding the Iub.
struct RncQueueState {
  std::deque<MacdPdu> rt_backlog;
  std::uint64_t rt_shipped = 0;
  std::uint64_t nrt_shipped = 0;
  std::uint64_t frames_released = 0;

  int rt_backlog_size() const { return static_cast<int>(rt_backlog.size()); }
};

/// HS-DSCH data frames released in one flow-control period; each vector is
/// one class-homogeneous frame (possibly empty).
struct IubFrames {
  std::vector<MacdPdu> rt;
  std::vector<MacdPdu> nrt;
};

/// Ships min(c_rt, RT backlog) RT PDUs and c_nrt NRT PDUs toward the Node B.
IubFrames release_frame(RncQueueState& rnc, NrtPduSource& nrt, const CreditGrant& grant, Time now);

}  // namespace hsdpa
