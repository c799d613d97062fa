#pragma once

#include "drivesim/frames.hpp"
#include "drivesim/inverter.hpp"
#include "drivesim/motor_params.hpp"

// Indirect rotor-field-oriented control: an outer speed PI produces a torque
// command, feedforward relations turn it into d/q current references, the
// rotor flux angle is advanced from measured speed plus commanded slip, and
// per-phase hysteresis regulators chase the resulting phase current
// references. The machine is never asked for its rotor flux; orientation is
// open-loop through the slip relation, which is what "indirect" means here.

namespace drivesim {

// How the torque-to-q-current gain treats the machine's pole figure.
// `pairs` is the algebraically exact inverse of the oriented torque relation
// and the default; `count` keeps a doubled legacy form found in older
// derivations, exposed only for side-by-side comparison.
enum class PoleInterpretation { pairs, count };

struct FocConfig {
  double rotor_flux_ref = 0.72;  // Wb
  double kp = 0.5;               // speed PI proportional gain, N*m*s/rad
  double ki = 5.0;               // speed PI integral gain, N*m/rad
  double torque_limit = 40.0;    // PI output clamp, N*m
  double current_band = 0.26;    // phase hysteresis half-band, A
  double ctrl_period = 50e-6;    // s
  PoleInterpretation pole_interpretation = PoleInterpretation::pairs;

  // torque_limit above 2x rated torque is refused: the current references it
  // implies are outside any sane thermal envelope for the machine.
  void validate(double rated_torque) const;
};

// Clamped PI with conditional integration: the integrator freezes whenever
// the output is saturated and the error would push it further into the limit.
// The integral term itself is also clamped to the output range so recovery
// from deep saturation starts immediately.
class SpeedPi {
 public:
  SpeedPi(double kp, double ki, double limit);

  double update(double speed_ref, double speed_meas, double dt);
  double integral() const { return integral_; }
  void reset() { integral_ = 0.0; }

 private:
  double kp_, ki_, limit_;
  double integral_ = 0.0;
};

struct CurrentRefs {
  double q = 0.0;  // torque-producing component, A
  double d = 0.0;  // flux-producing component, A
};

CurrentRefs current_refs(double torque_ref, double rotor_flux_ref,
                         const MotorParams& params, PoleInterpretation interp);

// Commanded slip: omega_slip = (L_m * R_r) / (L_r * lambda_r_ref) * i_q_ref,
// electrical rad/s.
double slip_speed(double i_q_ref, double rotor_flux_ref,
                  const MotorParams& params);

// theta <- wrap(theta + (p * omega_m + omega_slip) * dt), electrical rad.
double advance_angle(double theta, double omega_m, double omega_slip,
                     int pole_pairs, double dt);

// Rotating d/q references to instantaneous phase values:
//   i_a = cos(theta) * i_q + sin(theta) * i_d + i_0
// with the b and c rows at theta -/+ 2*pi/3.
PhaseTriple inverse_park_abc(double i_q, double i_d, double i_0, double theta);

// Independent two-level hysteresis per phase: switch the leg high when the
// current error exceeds +band, low when it falls below -band, hold otherwise.
SwitchState hysteresis_current_regulator(const PhaseTriple& ref,
                                         const PhaseTriple& meas, double band,
                                         const SwitchState& previous);

class FocController {
 public:
  FocController(const FocConfig& cfg, const MotorParams& params);

  // One control period: speed PI -> current references -> slip and angle
  // advance -> phase references -> hysteresis regulators.
  SwitchState step(double speed_ref, double omega_m, const PhaseTriple& currents);

  double torque_ref() const { return torque_ref_; }
  double theta() const { return theta_; }
  const PhaseTriple& phase_refs() const { return phase_refs_; }
  SpeedPi& speed_pi() { return pi_; }

 private:
  FocConfig cfg_;
  MotorParams params_;
  SpeedPi pi_;
  double theta_ = 0.0;
  double torque_ref_ = 0.0;
  PhaseTriple phase_refs_;
  SwitchState applied_;
};

}  // namespace drivesim
