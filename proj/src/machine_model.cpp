#include "drivesim/machine_model.hpp"

#include <cmath>
#include <string>

#include "drivesim/errors.hpp"

namespace drivesim {

namespace {

struct Derivative {
  AlphaBeta stator_flux;
  AlphaBeta rotor_flux;
  double omega_m;
  double theta_m;
};

Derivative rhs(const MotorState& s, const AlphaBeta& v, double t_load,
               const MotorParams& p) {
  const MachineCurrents i = derive_currents(s, p);
  const double t_e = plant_torque(s, i.stator, p.pole_pairs);
  const double omega_e = static_cast<double>(p.pole_pairs) * s.omega_m;

  Derivative d;
  d.stator_flux = v - p.R_s * i.stator;
  // -R_r*i_r + j*omega_e*lambda_r, the rotation written out per axis.
  d.rotor_flux.alpha = -p.R_r * i.rotor.alpha - omega_e * s.rotor_flux.beta;
  d.rotor_flux.beta = -p.R_r * i.rotor.beta + omega_e * s.rotor_flux.alpha;
  d.omega_m = (t_e - t_load - p.B * s.omega_m) / p.J;
  d.theta_m = s.omega_m;
  return d;
}

MotorState advance(const MotorState& s, const Derivative& d, double h) {
  MotorState out;
  out.stator_flux = s.stator_flux + h * d.stator_flux;
  out.rotor_flux = s.rotor_flux + h * d.rotor_flux;
  out.omega_m = s.omega_m + h * d.omega_m;
  out.theta_m = s.theta_m + h * d.theta_m;
  return out;
}

}  // namespace

bool MotorState::finite() const {
  return std::isfinite(stator_flux.alpha) && std::isfinite(stator_flux.beta) &&
         std::isfinite(rotor_flux.alpha) && std::isfinite(rotor_flux.beta) &&
         std::isfinite(omega_m) && std::isfinite(theta_m);
}

MachineCurrents derive_currents(const MotorState& state,
                                const MotorParams& params) {
  const double det = params.leakage_det();
  if (!(det > 0.0)) {
    throw ConfigError(
        "derive_currents: leakage invariant violated, L_s*L_r - L_m^2 = " +
        std::to_string(det));
  }
  const double inv = 1.0 / det;
  MachineCurrents out;
  out.stator = inv * (params.L_r * state.stator_flux - params.L_m * state.rotor_flux);
  out.rotor = inv * (params.L_s * state.rotor_flux - params.L_m * state.stator_flux);
  return out;
}

double plant_torque(const MotorState& state, const AlphaBeta& stator_current,
                    int pole_pairs) {
  return 1.5 * static_cast<double>(pole_pairs) *
         cross(state.stator_flux, stator_current);
}

MotorState step(const MotorState& state, const AlphaBeta& stator_voltage,
                double load_torque, double dt, const MotorParams& params) {
  if (!(dt > 0.0) || dt > 100e-6) {
    throw ConfigError("machine step: dt must be in (0, 100us], got " +
                      std::to_string(dt));
  }
  if (!state.finite() || !std::isfinite(stator_voltage.alpha) ||
      !std::isfinite(stator_voltage.beta) || !std::isfinite(load_torque)) {
    throw NumericError("machine step: non-finite state or input");
  }

  const Derivative k1 = rhs(state, stator_voltage, load_torque, params);
  const Derivative k2 =
      rhs(advance(state, k1, 0.5 * dt), stator_voltage, load_torque, params);
  const Derivative k3 =
      rhs(advance(state, k2, 0.5 * dt), stator_voltage, load_torque, params);
  const Derivative k4 =
      rhs(advance(state, k3, dt), stator_voltage, load_torque, params);

  const double w = dt / 6.0;
  MotorState out;
  out.stator_flux =
      state.stator_flux +
      w * (k1.stator_flux + 2.0 * k2.stator_flux + 2.0 * k3.stator_flux +
           k4.stator_flux);
  out.rotor_flux =
      state.rotor_flux +
      w * (k1.rotor_flux + 2.0 * k2.rotor_flux + 2.0 * k3.rotor_flux +
           k4.rotor_flux);
  out.omega_m = state.omega_m +
                w * (k1.omega_m + 2.0 * k2.omega_m + 2.0 * k3.omega_m + k4.omega_m);
  out.theta_m = wrap_angle(
      state.theta_m +
      w * (k1.theta_m + 2.0 * k2.theta_m + 2.0 * k3.theta_m + k4.theta_m));

  if (!out.finite()) {
    throw NumericError("machine step: state became non-finite");
  }
  return out;
}

}  // namespace drivesim
