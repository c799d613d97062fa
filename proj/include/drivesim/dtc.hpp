#pragma once

#include "drivesim/frames.hpp"
#include "drivesim/inverter.hpp"
#include "drivesim/motor_params.hpp"

// Direct torque control: hysteresis regulation of stator flux magnitude and
// torque, acting straight on the inverter switch state through the classic
// six-sector lookup table. No modulator, no inner current loops; the
// switching frequency is whatever the hysteresis bands produce.

namespace drivesim {

struct DtcConfig {
  double flux_ref = 0.88;      // stator flux magnitude setpoint, Wb
  double torque_band = 3.8;    // torque hysteresis half-band, N*m
  double flux_band = 0.014;    // flux hysteresis half-band, Wb
  double ctrl_period = 50e-6;  // s

  void validate() const;  // throws ConfigError naming the field
};

struct FluxTorqueEstimate {
  AlphaBeta flux;          // integrated stator flux, Wb
  double magnitude = 0.0;  // Wb
  double angle = 0.0;      // rad, atan2 in (-pi, pi]
  int sector = 1;          // 1..6
  double torque = 0.0;     // N*m
};

// Voltage-model flux estimator, explicit Euler accumulation:
// lambda <- lambda + (v - R_s * i) * dt.
AlphaBeta estimate_flux(const AlphaBeta& prev_flux, const AlphaBeta& v,
                        const AlphaBeta& i, double R_s, double dt);

double estimate_torque(const AlphaBeta& flux, const AlphaBeta& current,
                       int pole_pairs);

// Sector k covers [(2k-3)*30 deg, (2k-1)*30 deg), lower edge inclusive, so
// sector 1 is centered on the +alpha axis. Throws ConfigError on the zero
// vector, where the angle is undefined.
int flux_sector(const AlphaBeta& flux);

// Two-level comparator with memory. error = ref - actual. Returns 1 (raise
// flux) when error > +band, 0 when error < -band, otherwise `previous`.
int flux_comparator(double error, int previous, double band);

// Three-level comparator with a half-width inner deadband. error = ref -
// actual. Returns +1 when error > +band, -1 when error < -band, 0 once
// |error| falls below band/2, otherwise `previous`. The inner threshold makes
// the comparator hand over to a zero vector after a correction instead of
// chattering between +1 and -1.
int torque_comparator(double error, int previous, double band);

// Classic switching table. Active demands pick V(k+1)/V(k-1) (flux up) or
// V(k+2)/V(k-2) (flux down); zero torque demand picks whichever of V0/V7
// costs fewer leg transitions from `previous` (tie resolved to V0).
SwitchState select_vector(int flux_demand, int torque_demand, int sector,
                          const SwitchState& previous);

class DtcController {
 public:
  DtcController(const DtcConfig& cfg, const MotorParams& params);

  // One control period: fold the measurement pair into the flux estimate,
  // then run comparators and table. `voltage` is the stator voltage applied
  // over the elapsed period, `current` the present measurement.
  //
  // Until the flux estimate reaches 10% of the reference the flux demand is
  // forced to 1 and the sector to 1, which bootstraps the integrator from a
  // dead start without an undefined flux angle.
  SwitchState step(const AlphaBeta& voltage, const AlphaBeta& current,
                   double torque_ref);

  const FluxTorqueEstimate& estimate() const { return estimate_; }
  int flux_demand() const { return flux_demand_; }
  int torque_demand() const { return torque_demand_; }

 private:
  DtcConfig cfg_;
  double R_s_;
  int pole_pairs_;
  FluxTorqueEstimate estimate_;
  int flux_demand_ = 1;
  int torque_demand_ = 0;
  SwitchState applied_;
};

}  // namespace drivesim
