#pragma once

#include "drivesim/frames.hpp"
#include "drivesim/motor_params.hpp"

// Continuous-time induction machine plant in the stationary frame, with
// stator and rotor flux linkages as electrical states:
//
//   d(lambda_s)/dt = v_s - R_s * i_s
//   d(lambda_r)/dt = -R_r * i_r + j * p * omega_m * lambda_r
//   J * d(omega_m)/dt = T_e - T_load - B * omega_m
//   d(theta_m)/dt = omega_m
//
// Currents follow algebraically from the fluxes through the inductance
// matrix. Flux states keep the integration well conditioned when the stator
// voltage is a switched waveform.

namespace drivesim {

struct MotorState {
  AlphaBeta stator_flux;  // Wb
  AlphaBeta rotor_flux;   // Wb
  double omega_m = 0.0;   // mechanical speed, rad/s
  double theta_m = 0.0;   // mechanical angle, rad, kept in [0, 2*pi)

  bool finite() const;
};

struct MachineCurrents {
  AlphaBeta stator;  // A
  AlphaBeta rotor;   // A
};

// Inverts the inductance matrix per axis. Throws ConfigError if the params
// violate the leakage invariant L_s*L_r - L_m^2 > 0.
MachineCurrents derive_currents(const MotorState& state, const MotorParams& params);

// T_e = (3/2) * p * (lambda_s x i_s). Needs amplitude-invariant scaling.
double plant_torque(const MotorState& state, const AlphaBeta& stator_current,
                    int pole_pairs);

// One classical RK4 step with the stator voltage and load torque held
// constant across the step (the inverter output is piecewise constant, so
// zero-order hold is exact in the intended use).
//
// Requires 0 < dt <= 100 us; larger steps are refused rather than allowed to
// degrade accuracy silently. Throws NumericError if the state stops being
// finite instead of propagating NaNs.
MotorState step(const MotorState& state, const AlphaBeta& stator_voltage,
                double load_torque, double dt, const MotorParams& params);

}  // namespace drivesim
