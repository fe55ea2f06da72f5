#include "warmbox/transmission.hpp"

#include <algorithm>
#include <cmath>

namespace warmbox {

namespace {

void require_bend(double bend_rad) {
  require_finite(bend_rad, "bend_rad");
  if (!(std::abs(bend_rad) < pi / 2.0))
    throw ValidationError("bend_rad must satisfy |bend| < pi/2");
}

// Joint transfer with the ripple pattern anchored at `anchor`.
double anchored_output_angle(double theta, double bend, double anchor) {
  return anchor + cardan_output_angle(theta - anchor, bend);
}

double anchored_speed_ratio(double theta, double bend, double anchor) {
  return cardan_speed_ratio(theta - anchor, bend);
}

}  // namespace

double cardan_output_angle(double input_angle_rad, double bend_rad) {
  require_finite(input_angle_rad, "input_angle_rad");
  require_bend(bend_rad);
  const double c = std::cos(bend_rad);
  // Revolution bookkeeping keeps the output continuous across tan branch cuts
  // and in the same revolution as the input.
  const double rev = std::floor((input_angle_rad + pi) / two_pi);
  const double base = input_angle_rad - two_pi * rev;  // [-pi, pi)
  return std::atan2(std::sin(base) * c, std::cos(base)) + two_pi * rev;
}

double cardan_speed_ratio(double input_angle_rad, double bend_rad) {
  require_finite(input_angle_rad, "input_angle_rad");
  require_bend(bend_rad);
  const double s = std::sin(bend_rad);
  const double st = std::sin(input_angle_rad);
  return std::cos(bend_rad) / (1.0 - s * s * st * st);
}

void CardanJoint::validate() const {
  require_bend(bend_rad);
  require_finite(input_phase_rad, "input_phase_rad");
  if (!(input_phase_rad >= 0.0 && input_phase_rad < two_pi))
    throw ValidationError("input_phase_rad must be in [0, 2*pi)");
}

double CardanJoint::ripple_anchor_rad() const {
  return input_phase_rad + (bend_rad < 0.0 ? pi / 2.0 : 0.0);
}

double CardanJoint::output_angle(double input_angle_rad) const {
  return anchored_output_angle(input_angle_rad, bend_rad, ripple_anchor_rad());
}

double CardanJoint::speed_ratio(double input_angle_rad) const {
  return anchored_speed_ratio(input_angle_rad, bend_rad, ripple_anchor_rad());
}

void DualCardanChain::validate() const {
  joint_a.validate();
  joint_b.validate();
  require_finite(custom_phase_rad, "custom_phase_rad");
}

double DualCardanChain::phase_offset_rad() const {
  return phasing == CardanPhasing::cv_aligned ? 0.0 : custom_phase_rad;
}

double DualCardanChain::output_angle(double input_angle_rad, double bend_a_rad,
                                     double bend_b_rad) const {
  require_bend(bend_a_rad);
  require_bend(bend_b_rad);
  const double anchor_a = joint_a.input_phase_rad + (bend_a_rad < 0.0 ? pi / 2.0 : 0.0);
  const double anchor_b =
      joint_b.input_phase_rad + phase_offset_rad() + (bend_b_rad < 0.0 ? pi / 2.0 : 0.0);
  const double mid = anchored_output_angle(input_angle_rad, bend_a_rad, anchor_a);
  return anchored_output_angle(mid, bend_b_rad, anchor_b);
}

double DualCardanChain::speed_ratio(double input_angle_rad, double bend_a_rad,
                                    double bend_b_rad) const {
  require_bend(bend_a_rad);
  require_bend(bend_b_rad);
  const double anchor_a = joint_a.input_phase_rad + (bend_a_rad < 0.0 ? pi / 2.0 : 0.0);
  const double anchor_b =
      joint_b.input_phase_rad + phase_offset_rad() + (bend_b_rad < 0.0 ? pi / 2.0 : 0.0);
  const double mid = anchored_output_angle(input_angle_rad, bend_a_rad, anchor_a);
  return anchored_speed_ratio(input_angle_rad, bend_a_rad, anchor_a) *
         anchored_speed_ratio(mid, bend_b_rad, anchor_b);
}

double DualCardanChain::output_angle(double input_angle_rad) const {
  return output_angle(input_angle_rad, joint_a.bend_rad, joint_b.bend_rad);
}

double DualCardanChain::speed_ratio(double input_angle_rad) const {
  return speed_ratio(input_angle_rad, joint_a.bend_rad, joint_b.bend_rad);
}

double dual_cardan_ratio(const DualCardanChain& chain, double input_angle_rad) {
  return chain.speed_ratio(input_angle_rad);
}

void GearStage::validate() const {
  require_positive(ratio, "ratio");
  require_in_unit(mesh_efficiency, "mesh_efficiency");
}

void EfficiencyModel::validate() const {
  require_non_negative(quadratic_coeff, "quadratic_coeff");
  require_in_unit(bevel_efficiency, "bevel_efficiency");
}

double EfficiencyModel::joint_efficiency(double bend_rad) const {
  require_finite(bend_rad, "bend_rad");
  return 1.0 - quadratic_coeff * bend_rad * bend_rad;
}

EfficiencyModel calibrate_efficiency(double neutral_target, double worst_target,
                                     double worst_bend_rad) {
  require_in_unit(neutral_target, "neutral_target");
  require_in_unit(worst_target, "worst_target");
  require_positive(worst_bend_rad, "worst_bend_rad");
  if (!(worst_target < neutral_target))
    throw ValidationError("worst_target must be < neutral_target");
  if (!(worst_bend_rad < pi / 2.0))
    throw ValidationError("worst_bend_rad must be < pi/2");
  EfficiencyModel model;
  model.bevel_efficiency = neutral_target;
  // bevel * eta^2 = worst with eta = 1 - a * bend^2 at the worst bend.
  const double eta_worst = std::sqrt(worst_target / neutral_target);
  model.quadratic_coeff = (1.0 - eta_worst) / (worst_bend_rad * worst_bend_rad);
  model.validate();
  return model;
}

void DriveChain::validate() const {
  efficiency.validate();
  for (const auto& stage : stages) {
    std::visit([](const auto& s) { s.validate(); }, stage);
  }
}

std::size_t DriveChain::cardan_joint_count() const {
  std::size_t n = 0;
  for (const auto& stage : stages)
    if (std::holds_alternative<DualCardanChain>(stage)) n += 2;
  return n;
}

double DriveChain::total_gear_ratio() const {
  double r = 1.0;
  for (const auto& stage : stages)
    if (const auto* g = std::get_if<GearStage>(&stage)) r *= g->ratio;
  return r;
}

DriveChain make_calibrated_chain(const EfficiencyModel& model, double gear_ratio,
                                 double cardan_phase_rad) {
  model.validate();
  require_positive(gear_ratio, "gear_ratio");
  DriveChain chain;
  chain.efficiency = model;
  chain.stages.push_back(GearStage{gear_ratio, model.bevel_efficiency});
  DualCardanChain dual;
  dual.joint_a.input_phase_rad = wrap_two_pi(cardan_phase_rad);
  dual.joint_b.input_phase_rad = dual.joint_a.input_phase_rad;
  dual.phasing = CardanPhasing::cv_aligned;
  chain.stages.push_back(dual);
  chain.validate();
  return chain;
}

double chain_efficiency(const DriveChain& chain, std::span<const double> articulation_rad) {
  if (articulation_rad.size() != chain.cardan_joint_count())
    throw ValidationError("articulation_rad must supply one bend per cardan joint");
  double eff = 1.0;
  std::size_t next_bend = 0;
  for (const auto& stage : chain.stages) {
    if (const auto* g = std::get_if<GearStage>(&stage)) {
      eff *= g->mesh_efficiency;
    } else {
      for (int j = 0; j < 2; ++j) {
        const double eta = chain.efficiency.joint_efficiency(articulation_rad[next_bend++]);
        if (!(eta > 0.0))
          throw ValidationError("joint efficiency <= 0 at the requested articulation");
        eff *= eta;
      }
    }
  }
  return eff;
}

ChainTransfer chain_transfer(const DriveChain& chain, double input_speed_rad_s,
                             double input_torque_nm, std::span<const double> articulation_rad) {
  require_finite(input_speed_rad_s, "input_speed_rad_s");
  require_finite(input_torque_nm, "input_torque_nm");
  chain.validate();
  ChainTransfer out;
  out.efficiency = chain_efficiency(chain, articulation_rad);
  const double ratio = chain.total_gear_ratio();
  out.output_speed_rad_s = input_speed_rad_s / ratio;
  out.output_torque_nm = input_torque_nm * ratio * out.efficiency;
  return out;
}

double chain_speed_ripple(const DriveChain& chain, std::span<const double> articulation_rad) {
  if (articulation_rad.size() != chain.cardan_joint_count())
    throw ValidationError("articulation_rad must supply one bend per cardan joint");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  constexpr int samples = 720;
  for (int i = 0; i < samples; ++i) {
    const double theta = two_pi * static_cast<double>(i) / samples;
    double ratio = 1.0;
    std::size_t next_bend = 0;
    double angle = theta;
    for (const auto& stage : chain.stages) {
      if (const auto* dual = std::get_if<DualCardanChain>(&stage)) {
        const double ba = articulation_rad[next_bend];
        const double bb = articulation_rad[next_bend + 1];
        next_bend += 2;
        ratio *= dual->speed_ratio(angle, ba, bb);
        angle = dual->output_angle(angle, ba, bb);
      }
      // Gear stages rescale speed uniformly; they do not contribute ripple.
    }
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  return hi - lo;
}

}  // namespace warmbox
