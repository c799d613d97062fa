#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "drivesim/dtc.hpp"
#include "drivesim/frames.hpp"
#include "drivesim/machine_model.hpp"
#include "drivesim/motor_params.hpp"

// Independent reference computations for the test suites. Everything here
// deliberately avoids the production code paths it is used to check: the
// plant reference integrates forward-Euler on its own state layout with its
// own linear solver, and the steady-state references come from phasor
// algebra, not time stepping.

namespace oracle {

// --- fine-step plant reference -------------------------------------------

struct State6 {
  double lsa = 0, lsb = 0, lra = 0, lrb = 0, w = 0, th = 0;
};

// 2x2 solve via Gaussian elimination with partial pivoting (production code
// inverts the matrix analytically; different route on purpose).
inline void solve_inductance(double l11, double l12, double l22, double b1,
                             double b2, double& x1, double& x2) {
  double a11 = l11, a12 = l12, a21 = l12, a22 = l22;
  if (std::fabs(a21) > std::fabs(a11)) {
    std::swap(a11, a21);
    std::swap(a12, a22);
    std::swap(b1, b2);
  }
  const double m = a21 / a11;
  const double u22 = a22 - m * a12;
  const double y2 = b2 - m * b1;
  x2 = y2 / u22;
  x1 = (b1 - a12 * x2) / a11;
}

inline void reference_currents(const drivesim::MotorParams& p, const State6& s,
                               double& isa, double& isb, double& ira,
                               double& irb) {
  solve_inductance(p.L_s, p.L_m, p.L_r, s.lsa, s.lra, isa, ira);
  solve_inductance(p.L_s, p.L_m, p.L_r, s.lsb, s.lrb, isb, irb);
}

inline State6 reference_derivative(const drivesim::MotorParams& p,
                                   const State6& s, double va, double vb,
                                   double t_load) {
  double isa, isb, ira, irb;
  reference_currents(p, s, isa, isb, ira, irb);
  const double te =
      1.5 * static_cast<double>(p.pole_pairs) * (s.lsa * isb - s.lsb * isa);
  const double we = static_cast<double>(p.pole_pairs) * s.w;
  State6 d;
  d.lsa = va - p.R_s * isa;
  d.lsb = vb - p.R_s * isb;
  d.lra = -p.R_r * ira - we * s.lrb;
  d.lrb = -p.R_r * irb + we * s.lra;
  d.w = (te - t_load - p.B * s.w) / p.J;
  d.th = s.w;
  return d;
}

// Forward-Euler at a caller-chosen fine step; constant voltage and load.
inline State6 euler_reference(const drivesim::MotorParams& p, State6 s,
                              double va, double vb, double t_load, double dt,
                              long long steps) {
  for (long long i = 0; i < steps; ++i) {
    const State6 d = reference_derivative(p, s, va, vb, t_load);
    s.lsa += dt * d.lsa;
    s.lsb += dt * d.lsb;
    s.lra += dt * d.lra;
    s.lrb += dt * d.lrb;
    s.w += dt * d.w;
    s.th += dt * d.th;
  }
  return s;
}

// --- locked-rotor phasor reference ---------------------------------------

// Input impedance of the machine with the shaft held still, seen from the
// stator at electrical frequency omega: the rotor branch reflects back as
// omega^2*L_m^2 / (R_r + j*omega*L_r).
inline std::complex<double> locked_rotor_impedance(const drivesim::MotorParams& p,
                                                   double omega) {
  const std::complex<double> jw(0.0, omega);
  return std::complex<double>(p.R_s, 0.0) + jw * p.L_s +
         (omega * omega * p.L_m * p.L_m) / (std::complex<double>(p.R_r, 0.0) + jw * p.L_r);
}

// Fundamental phasor of uniformly sampled x(t) over exactly one period:
// returns X with x(t) = Re(X * exp(j*omega*t)). Trapezoid quadrature; the
// sample range must cover [t0, t0 + T] inclusive of both endpoints.
inline std::complex<double> fundamental_phasor(const std::vector<double>& t,
                                               const std::vector<double>& x,
                                               double omega) {
  double a = 0.0, b = 0.0;  // x = a*cos + b*sin
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    const double h = t[i + 1] - t[i];
    const double f0c = x[i] * std::cos(omega * t[i]);
    const double f1c = x[i + 1] * std::cos(omega * t[i + 1]);
    const double f0s = x[i] * std::sin(omega * t[i]);
    const double f1s = x[i + 1] * std::sin(omega * t[i + 1]);
    a += 0.5 * h * (f0c + f1c);
    b += 0.5 * h * (f0s + f1s);
  }
  const double period = t.back() - t.front();
  a *= 2.0 / period;
  b *= 2.0 / period;
  // a*cos + b*sin = Re((a - j*b) e^{jwt})
  return {a, -b};
}

// --- switching-table directional brute force ------------------------------

// One row of the exhaustive table check. For active torque demands the claim
// is sign(d|lambda_s|/dt) matches the flux demand and sign(dT_e/dt) matches
// the torque demand, probed at the sector-center flux angle with a
// small-step finite difference through the plant. Zero torque demand must
// yield a zero vector, decaying torque (the rotor advances past a frozen
// stator flux) and only resistive flux drift.
struct DirectionalCase {
  int sector = 1;
  int flux_demand = 0;
  int torque_demand = 0;
  bool pass = false;
  std::string detail;
};

inline std::vector<DirectionalCase> directional_table_check(
    const drivesim::MotorParams& params, double flux_ref) {
  using drivesim::AlphaBeta;
  using drivesim::MotorState;
  namespace ds = drivesim;

  std::vector<DirectionalCase> cases;
  const double h = 1e-6;          // finite-difference step, s
  const double load_angle = 12.0 * ds::kTwoPi / 360.0;
  const double omega_m = 120.0;   // rad/s mech; rotor must be turning for the
                                  // zero-vector torque-decay claim
  const double rotor_mag = 0.9 * (params.L_m / params.L_s) * flux_ref;

  for (int sector = 1; sector <= 6; ++sector) {
    const double theta = (sector - 1) * ds::kTwoPi / 6.0;
    MotorState state;
    state.stator_flux = {flux_ref * std::cos(theta), flux_ref * std::sin(theta)};
    state.rotor_flux = {rotor_mag * std::cos(theta - load_angle),
                        rotor_mag * std::sin(theta - load_angle)};
    state.omega_m = omega_m;

    // Derivatives under every vector once, for the zero-row drift bound.
    double min_active_radial = 1e300;
    for (int id = 1; id <= 6; ++id) {
      const AlphaBeta v =
          ds::output_voltage(ds::switch_state_of(id), params.V_dc);
      const MotorState next = ds::step(state, v, 0.0, h, params);
      const double radial =
          std::fabs(next.stator_flux.norm() - state.stator_flux.norm()) / h;
      min_active_radial = std::min(min_active_radial, radial);
    }

    for (int flux_demand : {0, 1}) {
      for (int torque_demand : {-1, 0, 1}) {
        DirectionalCase c;
        c.sector = sector;
        c.flux_demand = flux_demand;
        c.torque_demand = torque_demand;

        const ds::SwitchState prev = ds::switch_state_of(1);
        const ds::SwitchState sel =
            ds::select_vector(flux_demand, torque_demand, sector, prev);
        const AlphaBeta v = ds::output_voltage(sel, params.V_dc);

        const double t0 = ds::plant_torque(
            state, ds::derive_currents(state, params).stator, params.pole_pairs);
        const MotorState next = ds::step(state, v, 0.0, h, params);
        const double t1 = ds::plant_torque(
            next, ds::derive_currents(next, params).stator, params.pole_pairs);
        const double dmag_dt =
            (next.stator_flux.norm() - state.stator_flux.norm()) / h;
        const double dtorque_dt = (t1 - t0) / h;

        if (torque_demand == 0) {
          // Resistive decay only; must stay well below the slowest rate any
          // active vector imposes on the flux magnitude at this state.
          const bool zero_vector = (v.alpha == 0.0 && v.beta == 0.0);
          const bool drift_small = std::fabs(dmag_dt) < 0.3 * min_active_radial;
          const bool torque_decays = dtorque_dt < 0.0;
          c.pass = zero_vector && drift_small && torque_decays;
          if (!c.pass) {
            c.detail = "zero row: |v|=" + std::to_string(v.norm()) +
                       " dmag/dt=" + std::to_string(dmag_dt) +
                       " dT/dt=" + std::to_string(dtorque_dt);
          }
        } else {
          const bool flux_ok =
              (flux_demand == 1) ? (dmag_dt > 0.0) : (dmag_dt < 0.0);
          const bool torque_ok = (torque_demand > 0) ? (dtorque_dt > 0.0)
                                                     : (dtorque_dt < 0.0);
          c.pass = flux_ok && torque_ok;
          if (!c.pass) {
            c.detail = "dmag/dt=" + std::to_string(dmag_dt) +
                       " dT/dt=" + std::to_string(dtorque_dt);
          }
        }
        cases.push_back(c);
      }
    }
  }
  return cases;
}

// --- misc -----------------------------------------------------------------

inline std::mt19937 seeded_rng(std::uint32_t seed) { return std::mt19937(seed); }

}  // namespace oracle
