#include "hsdpa/flow/flow_control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hsdpa {

void FlowQosProfile::validate() const {
  if (!(lambda_rt_bps > 0.0)) throw std::invalid_argument("lambda_rt must be > 0");
  if (pdu_size_bits <= 0) throw std::invalid_argument("pdu_size must be > 0");
  if (nrt_max_bitrate_bps < 0.0) throw std::invalid_argument("nrt_max_bitrate must be >= 0");
}

NrtCreditBranch nrt_credit_branch(double q_filtered, const BufferConfig& buffer) {
  if (q_filtered < buffer.fc_low_threshold) return NrtCreditBranch::full;
  if (q_filtered <= buffer.fc_high_threshold) return NrtCreditBranch::reduced;
  return NrtCreditBranch::blocked;
}

double rt_credits_per_frame(const FlowQosProfile& profile, Time frame_period) {
  return profile.lambda_rt_bps / profile.pdu_size_bits * to_seconds(frame_period);
}

double max_nrt_credits(double q_filtered, double nrt_rate_bps, const FlowQosProfile& profile,
                       const BufferConfig& buffer, double overflow_gain, Time frame_period) {
  const double full = nrt_rate_bps / profile.pdu_size_bits * to_seconds(frame_period);
  switch (nrt_credit_branch(q_filtered, buffer)) {
    case NrtCreditBranch::full: return full;
    case NrtCreditBranch::reduced: return overflow_gain * full;
    case NrtCreditBranch::blocked: return 0.0;
  }
  return 0.0;
}

FlowController::FlowController(FlowQosProfile profile, FlowControlParams params,
                               BufferConfig buffer)
    : profile_(profile), params_(params), buffer_(buffer) {
  profile_.validate();
  buffer_.validate();
  state_.nrt_rate_est_bps = profile_.nrt_max_bitrate_bps;
}

double FlowController::update_occupancy_filter(int q_now) {
  const double w = params_.occupancy_weight;
  state_.q_filtered = w * state_.q_filtered + (1.0 - w) * q_now;
  return state_.q_filtered;
}

double FlowController::update_nrt_rate(int bits_sent, Time interval) {
  if (interval <= Time{0}) throw std::invalid_argument("update_nrt_rate: interval must be > 0");
  const double sample_bps = bits_sent / to_seconds(interval);
  const double a = params_.rate_weight;
  state_.nrt_rate_est_bps = a * state_.nrt_rate_est_bps + (1.0 - a) * sample_bps;
  return state_.nrt_rate_est_bps;
}

int FlowController::peek_rt_credits() const {
  return static_cast<int>(
      std::floor(rt_credits_per_frame(profile_, params_.frame_period) + state_.rt_credit_carry + 1e-9));
}

CreditGrant FlowController::compute_credits(int ubs_nrt, int space_limit) {
  CreditGrant grant;

  const double rt_total = rt_credits_per_frame(profile_, params_.frame_period) + state_.rt_credit_carry;
  grant.c_rt = static_cast<int>(std::floor(rt_total + 1e-9));
  state_.rt_credit_carry = std::max(0.0, rt_total - grant.c_rt);

  const double nrt_max =
      max_nrt_credits(state_.q_filtered, state_.nrt_rate_est_bps, profile_, buffer_,
                      params_.overflow_gain, params_.frame_period);
  if (nrt_max <= 0.0) {
    // Blocked frames do not bank credit.
    state_.nrt_credit_carry = 0.0;
    return grant;
  }
  const double nrt_total = nrt_max + state_.nrt_credit_carry;
  const int whole = static_cast<int>(std::floor(nrt_total + 1e-9));
  grant.c_nrt = std::min({whole, std::max(0, ubs_nrt), std::max(0, space_limit)});
  state_.nrt_credit_carry = std::clamp(nrt_total - whole, 0.0, 0.999999);
  return grant;
}

IubFrames release_frame(RncQueueState& rnc, NrtPduSource& nrt, const CreditGrant& grant,
                        Time now) {
  IubFrames frames;
  const int rt_n = std::min(grant.c_rt, rnc.rt_backlog_size());
  frames.rt.reserve(static_cast<std::size_t>(std::max(rt_n, 0)));
  for (int i = 0; i < rt_n; ++i) {
    frames.rt.push_back(rnc.rt_backlog.front());
    rnc.rt_backlog.pop_front();
  }
  if (grant.c_nrt > 0) frames.nrt = nrt.take(grant.c_nrt, now);
  rnc.rt_shipped += frames.rt.size();
  rnc.nrt_shipped += frames.nrt.size();
  ++rnc.frames_released;
  return frames;
}

}  // namespace hsdpa
