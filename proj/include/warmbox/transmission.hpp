#pragma once

// Drive transmission: universal (cardan) joints, dual-cardan constant-velocity
// chains, gear stages, and the articulation-dependent efficiency model.
//
// Conventions:
//   - Shaft angles are unwrapped (continuous, multi-revolution); the joint
//     transfer keeps the output in the same revolution as the input.
//   - A joint's bend is the shaft-to-shaft angle, |bend| < pi/2. The sign
//     selects the ripple anchoring: a negative bend mounts the yoke a quarter
//     turn off, which turns the speed ripple into its functional inverse.
//     Two equal-magnitude, opposite-sign bends in cv_aligned phasing therefore
//     cancel exactly.
//   - Speed ratios are output/input angular speed.

#include <span>
#include <variant>
#include <vector>

#include "warmbox/errors.hpp"
#include "warmbox/numeric.hpp"

namespace warmbox {

// Output shaft angle for input angle theta through one joint:
// tan(out) = tan(theta) * cos(bend), unwrapped to theta's revolution.
double cardan_output_angle(double input_angle_rad, double bend_rad);

// Instantaneous speed ratio d(out)/d(theta) = cos(bend) / (1 - sin^2(bend) * sin^2(theta)).
// Range [cos(bend), 1/cos(bend)]; equals 1 identically at zero bend.
double cardan_speed_ratio(double input_angle_rad, double bend_rad);

struct CardanJoint {
  double bend_rad = 0.0;         // signed, |bend| < pi/2
  double input_phase_rad = 0.0;  // ripple anchor within the revolution, [0, 2*pi)

  void validate() const;
  // Anchor including the quarter-turn shift a negative bend introduces.
  double ripple_anchor_rad() const;
  double output_angle(double input_angle_rad) const;
  double speed_ratio(double input_angle_rad) const;
};

enum class CardanPhasing { cv_aligned, custom };

// Two cardan joints in series on a shared intermediate shaft. cv_aligned adds
// no extra offset between the ripple anchors; custom offsets joint_b by
// custom_phase_rad. With cv_aligned, equal input phases, and opposite equal
// bends, the end-to-end ratio is exactly 1 at every input angle.
struct DualCardanChain {
  CardanJoint joint_a;
  CardanJoint joint_b;
  CardanPhasing phasing = CardanPhasing::cv_aligned;
  double custom_phase_rad = 0.0;  // used only when phasing == custom

  void validate() const;
  double phase_offset_rad() const;
  // Transfer with explicit runtime bends (stored phases, overridden bends).
  double output_angle(double input_angle_rad, double bend_a_rad, double bend_b_rad) const;
  double speed_ratio(double input_angle_rad, double bend_a_rad, double bend_b_rad) const;
  // Transfer at the stored bends.
  double output_angle(double input_angle_rad) const;
  double speed_ratio(double input_angle_rad) const;
};

// Product of the two stage ratios at the stored bends.
double dual_cardan_ratio(const DualCardanChain& chain, double input_angle_rad);

struct GearStage {
  double ratio = 1.0;            // input revolutions per output revolution, > 0
  double mesh_efficiency = 1.0;  // (0, 1]

  void validate() const;
};

// Per-joint efficiency eta(bend) = 1 - quadratic_coeff * bend^2.
// bevel_efficiency is the gear-mesh efficiency of the calibrated chain's
// bevel stage, i.e. the whole-chain efficiency at zero articulation.
struct EfficiencyModel {
  double quadratic_coeff = 0.0;   // >= 0
  double bevel_efficiency = 1.0;  // (0, 1]

  void validate() const;
  double joint_efficiency(double bend_rad) const;
};

// Solves bevel * eta(worst_bend)^2 = worst_target with bevel = neutral_target,
// for a chain with one bevel stage and one dual-cardan pair.
EfficiencyModel calibrate_efficiency(double neutral_target, double worst_target,
                                     double worst_bend_rad);

using ChainStage = std::variant<GearStage, DualCardanChain>;

struct DriveChain {
  std::vector<ChainStage> stages;
  EfficiencyModel efficiency;

  void validate() const;
  std::size_t cardan_joint_count() const;
  double total_gear_ratio() const;
};

// One bevel stage (ratio, mesh = model.bevel_efficiency) followed by one
// cv_aligned dual-cardan pair anchored at cardan_phase_rad.
DriveChain make_calibrated_chain(const EfficiencyModel& model, double gear_ratio,
                                 double cardan_phase_rad = 0.0);

struct ChainTransfer {
  double output_speed_rad_s = 0.0;
  double output_torque_nm = 0.0;
  double efficiency = 1.0;  // (0, 1]
};

// Quasi-static transfer through the chain. Speed uses the revolution-mean
// cardan ratio (exactly 1), so output_speed = input_speed / total gear ratio.
// Torque multiplies by the gear ratio and the composed efficiency
// (gear mesh terms times per-joint eta at the given bends).
// articulation_rad supplies one bend per cardan joint, chain order.
ChainTransfer chain_transfer(const DriveChain& chain, double input_speed_rad_s,
                             double input_torque_nm, std::span<const double> articulation_rad);

// Composed chain efficiency at the given articulation, without speed/torque.
double chain_efficiency(const DriveChain& chain, std::span<const double> articulation_rad);

// Peak-to-peak instantaneous end-to-end speed ratio over one input revolution.
// Diagnostic only; the quasi-static transfer above uses the mean ratio.
double chain_speed_ripple(const DriveChain& chain, std::span<const double> articulation_rad);

}  // namespace warmbox
