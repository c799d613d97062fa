#include "drivesim/foc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "drivesim/errors.hpp"

namespace drivesim {

namespace {

void require(bool ok, const char* field, const char* why) {
  if (!ok) throw ConfigError(std::string("foc.") + field + ": " + why);
}

}  // namespace

void FocConfig::validate(double rated_torque) const {
  require(std::isfinite(rotor_flux_ref) && rotor_flux_ref > 0.0,
          "rotor_flux_ref", "must be finite and > 0");
  require(std::isfinite(kp) && kp >= 0.0, "kp", "must be finite and >= 0");
  require(std::isfinite(ki) && ki >= 0.0, "ki", "must be finite and >= 0");
  require(std::isfinite(torque_limit) && torque_limit > 0.0, "torque_limit",
          "must be finite and > 0");
  require(torque_limit <= 2.0 * rated_torque, "torque_limit",
          "must not exceed twice rated torque");
  require(std::isfinite(current_band) && current_band > 0.0, "current_band",
          "must be finite and > 0");
  require(std::isfinite(ctrl_period) && ctrl_period > 0.0, "ctrl_period",
          "must be finite and > 0");
}

SpeedPi::SpeedPi(double kp, double ki, double limit)
    : kp_(kp), ki_(ki), limit_(limit) {}

double SpeedPi::update(double speed_ref, double speed_meas, double dt) {
  const double error = speed_ref - speed_meas;
  const double unsat = kp_ * error + integral_;
  // Conditional integration: hold the integrator while saturated in the
  // direction the error keeps pushing.
  const bool pushing_past_limit = (unsat > limit_ && error > 0.0) ||
                                  (unsat < -limit_ && error < 0.0);
  if (!pushing_past_limit) {
    integral_ = std::clamp(integral_ + ki_ * error * dt, -limit_, limit_);
  }
  return std::clamp(kp_ * error + integral_, -limit_, limit_);
}

CurrentRefs current_refs(double torque_ref, double rotor_flux_ref,
                         const MotorParams& params, PoleInterpretation interp) {
  const double p = static_cast<double>(params.pole_pairs);
  // Exact inverse of T = (3/2) * p * (L_m/L_r) * lambda_r * i_q. The `count`
  // variant doubles the gain, matching derivations that fold a pole-count
  // factor of 2 into the same symbol.
  const double pole_factor =
      (interp == PoleInterpretation::pairs) ? (1.0 / p) : (2.0 / p);
  CurrentRefs refs;
  refs.q = (2.0 / 3.0) * pole_factor * (params.L_r / params.L_m) *
           (torque_ref / rotor_flux_ref);
  refs.d = rotor_flux_ref / params.L_m;
  return refs;
}

double slip_speed(double i_q_ref, double rotor_flux_ref,
                  const MotorParams& params) {
  return (params.L_m * params.R_r) / (params.L_r * rotor_flux_ref) * i_q_ref;
}

double advance_angle(double theta, double omega_m, double omega_slip,
                     int pole_pairs, double dt) {
  const double omega_e = static_cast<double>(pole_pairs) * omega_m + omega_slip;
  return wrap_angle(theta + omega_e * dt);
}

PhaseTriple inverse_park_abc(double i_q, double i_d, double i_0, double theta) {
  const double shift = kTwoPi / 3.0;
  PhaseTriple out;
  out.a = std::cos(theta) * i_q + std::sin(theta) * i_d + i_0;
  out.b = std::cos(theta - shift) * i_q + std::sin(theta - shift) * i_d + i_0;
  out.c = std::cos(theta + shift) * i_q + std::sin(theta + shift) * i_d + i_0;
  return out;
}

namespace {

bool leg_demand(double error, bool previous, double band) {
  if (error > band) return true;
  if (error < -band) return false;
  return previous;
}

}  // namespace

SwitchState hysteresis_current_regulator(const PhaseTriple& ref,
                                         const PhaseTriple& meas, double band,
                                         const SwitchState& previous) {
  return {leg_demand(ref.a - meas.a, previous.a, band),
          leg_demand(ref.b - meas.b, previous.b, band),
          leg_demand(ref.c - meas.c, previous.c, band)};
}

FocController::FocController(const FocConfig& cfg, const MotorParams& params)
    : cfg_(cfg),
      params_(params),
      pi_(cfg.kp, cfg.ki, cfg.torque_limit) {
  params_.validate();
  cfg_.validate(params_.rated_torque);
}

SwitchState FocController::step(double speed_ref, double omega_m,
                                const PhaseTriple& currents) {
  torque_ref_ = pi_.update(speed_ref, omega_m, cfg_.ctrl_period);
  const CurrentRefs refs = current_refs(torque_ref_, cfg_.rotor_flux_ref,
                                        params_, cfg_.pole_interpretation);
  const double slip = slip_speed(refs.q, cfg_.rotor_flux_ref, params_);
  theta_ = advance_angle(theta_, omega_m, slip, params_.pole_pairs,
                         cfg_.ctrl_period);
  phase_refs_ = inverse_park_abc(refs.q, refs.d, 0.0, theta_);
  applied_ =
      hysteresis_current_regulator(phase_refs_, currents, cfg_.current_band, applied_);
  return applied_;
}

}  // namespace drivesim
