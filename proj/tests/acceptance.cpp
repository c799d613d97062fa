// Acceptance gate: every release criterion checked in one run, one verdict
// line each, nonzero exit if anything fails. The heavy section reproduces the
// four-run benchmark (both controllers, unloaded and 10 N*m step, 3 s at
// 1500 rpm) and checks the comparative figures; the rest are physics and
// identity probes with independently derived expectations.

#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "drivesim/csv.hpp"
#include "drivesim/dtc.hpp"
#include "drivesim/foc.hpp"
#include "drivesim/frames.hpp"
#include "drivesim/machine_model.hpp"
#include "drivesim/scenario.hpp"
#include "support.hpp"

using namespace drivesim;

namespace {

int g_failures = 0;

void verdict(bool ok, const std::string& name, const std::string& detail) {
  std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(),
              detail.c_str());
  if (!ok) ++g_failures;
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

// --- comparative criteria over the benchmark matrix ------------------------

void check_benchmark(const BenchmarkResult& bench) {
  const double ex_u = bench.unloaded.frequency_excess_pct;
  const double ex_l = bench.loaded.frequency_excess_pct;

  verdict(ex_u >= 40.0 && ex_u <= 100.0 && ex_l >= 40.0 && ex_l <= 100.0,
          "switching-frequency ordering",
          fmt("foc over dtc by %.1f%% unloaded, %.1f%% loaded (need 40..100%%)",
              ex_u, ex_l));

  verdict(std::fabs(ex_u - ex_l) <= 15.0, "load-independence of the excess",
          fmt("|%.1f - %.1f| = %.1f pp (need <= 15)", ex_u, ex_l,
              std::fabs(ex_u - ex_l)));

  const double f_dtc_u = bench.unloaded.dtc.metrics.median_switching_frequency;
  const double f_dtc_l = bench.loaded.dtc.metrics.median_switching_frequency;
  const double f_foc_u = bench.unloaded.foc.metrics.median_switching_frequency;
  const double f_foc_l = bench.loaded.foc.metrics.median_switching_frequency;
  verdict(f_dtc_u >= 500.0 && f_dtc_u <= 1500.0 && f_dtc_l >= 500.0 &&
              f_dtc_l <= 1500.0 && f_foc_u >= 900.0 && f_foc_u <= 2200.0 &&
              f_foc_l >= 900.0 && f_foc_l <= 2200.0,
          "absolute switching-frequency bands",
          fmt("dtc %.0f/%.0f Hz (need 500..1500), foc %.0f/%.0f Hz "
              "(need 900..2200)",
              f_dtc_u, f_dtc_l, f_foc_u, f_foc_l));

  const double rip_u = bench.unloaded.ripple_ratio;
  const double rip_l = bench.loaded.ripple_ratio;
  verdict(rip_u >= 1.5 && rip_l >= 1.5, "torque-ripple separation",
          fmt("dtc/foc peak-to-peak ratio %.2f unloaded, %.2f loaded "
              "(need >= 1.5)",
              rip_u, rip_l));

  const RunMetrics& du = bench.dtc_unloaded.metrics;
  const RunMetrics& fu = bench.foc_unloaded.metrics;
  const RunMetrics& dl = bench.dtc_loaded.metrics;
  const RunMetrics& fl = bench.foc_loaded.metrics;
  const bool settled = du.settle_time <= 1.0 && fu.settle_time <= 1.0 &&
                       dl.settle_time <= 1.0 && fl.settle_time <= 1.0;
  const bool recovered = dl.recovery_time <= 0.5 && fl.recovery_time <= 0.5;
  const bool held = du.speed_error_pct <= 1.0 && fu.speed_error_pct <= 1.0 &&
                    dl.speed_error_pct <= 1.0 && fl.speed_error_pct <= 1.0;
  verdict(settled && recovered && held, "speed regulation",
          fmt("settle %.2f/%.2f/%.2f/%.2f s (need <= 1.0), recovery "
              "%.3f/%.3f s after the 10 N*m step (need <= 0.5), steady error "
              "%.2f/%.2f/%.2f/%.2f%% (need <= 1)",
              du.settle_time, fu.settle_time, dl.settle_time, fl.settle_time,
              dl.recovery_time, fl.recovery_time, du.speed_error_pct,
              fu.speed_error_pct, dl.speed_error_pct, fl.speed_error_pct));
}

// --- switching table ---------------------------------------------------------

void check_table() {
  const MotorParams params;
  const auto cases = oracle::directional_table_check(params, 0.88);
  int failed = 0;
  std::string first;
  for (const auto& c : cases) {
    if (!c.pass && failed++ == 0) {
      first = fmt(" first: sector %d flux %d torque %d (%s)", c.sector,
                  c.flux_demand, c.torque_demand, c.detail.c_str());
    }
  }
  verdict(failed == 0 && cases.size() == 36, "switching-table directions",
          fmt("%d of 36 rows move flux and torque as commanded%s",
              36 - failed, first.c_str()));
}

// --- transform identities ---------------------------------------------------

void check_transforms() {
  auto rng = oracle::seeded_rng(424242);
  std::uniform_real_distribution<double> dist(-100.0, 100.0);
  double worst_clarke = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double a = dist(rng), b = dist(rng);
    const double c = -(a + b);
    const PhaseTriple back = inverse_clarke(clarke(a, b, c));
    const double scale = std::fabs(a) + std::fabs(b) + std::fabs(c) + 1.0;
    worst_clarke = std::max({worst_clarke, std::fabs(back.a - a) / scale,
                             std::fabs(back.b - b) / scale,
                             std::fabs(back.c - c) / scale});
  }
  verdict(worst_clarke <= 1e-12, "clarke round-trip",
          fmt("worst relative error %.2e over 1000 zero-sum triples "
              "(need <= 1e-12)",
              worst_clarke));

  std::uniform_real_distribution<double> amp(-20.0, 20.0);
  std::uniform_real_distribution<double> ang(0.0, kTwoPi);
  double worst_park = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double q = amp(rng), d = amp(rng);
    const double mag = clarke(inverse_park_abc(q, d, 0.0, ang(rng))).norm();
    worst_park = std::max(
        worst_park, std::fabs(mag - std::hypot(q, d)) / (1.0 + std::hypot(q, d)));
  }
  verdict(worst_park <= 1e-12, "inverse-park magnitude",
          fmt("worst relative error %.2e over 1000 dq pairs (need <= 1e-12)",
              worst_park));

  // flux estimator against the closed-form integral over one 50 Hz period
  const double V = 300.0, I = 5.0, phi = -0.5, R_s = 7.2;
  const double omega = kTwoPi * 50.0;
  const double dt = 25e-6;
  AlphaBeta est{0.0, 0.0};
  for (int k = 0; k < 800; ++k) {
    const double t = k * dt;
    est = estimate_flux(
        est, {V * std::cos(omega * t), V * std::sin(omega * t)},
        {I * std::cos(omega * t + phi), I * std::sin(omega * t + phi)}, R_s, dt);
  }
  const double T = 800 * dt;
  const AlphaBeta exact{
      (V / omega) * std::sin(omega * T) -
          (R_s * I / omega) * (std::sin(omega * T + phi) - std::sin(phi)),
      (V / omega) * (1.0 - std::cos(omega * T)) -
          (R_s * I / omega) * (std::cos(phi) - std::cos(omega * T + phi))};
  const double est_err = (est - exact).norm() / (V / omega);
  verdict(est_err <= 0.001, "flux-estimator accuracy",
          fmt("period-end error %.4f%% of V/omega at 25 us sampling "
              "(need <= 0.1%%)",
              100.0 * est_err));

  const MotorParams p;
  MotorState unit;
  unit.stator_flux = {1.0, 0.0};
  const bool spots =
      plant_torque(unit, {0.0, 1.0}, 2) == 3.0 &&
      std::fabs(slip_speed(2.0, 0.88, p) - 100.0 / 11.0) <= 1e-13 &&
      std::fabs(current_refs(0.0, 0.88, p, PoleInterpretation::pairs).d - 2.0) <=
          1e-14 &&
      inverse_park_abc(1.0, 0.0, 0.0, 0.0).a == 1.0 &&
      std::fabs(inverse_park_abc(1.0, 0.0, 0.0, 0.0).b + 0.5) <= 1e-15 &&
      std::fabs(output_voltage(switch_state_of(2), 540.0).alpha - 180.0) <=
          1e-12 &&
      std::fabs(output_voltage(switch_state_of(2), 540.0).beta -
                540.0 / kSqrt3) <= 1e-12;
  verdict(spots, "exact spot values",
          "torque 3 N*m, slip 100/11 rad/s, i_d 2 A, park row, vector (1,1,0)");
}

// --- plant physics -----------------------------------------------------------

void check_phasor() {
  MotorParams p;
  p.J = 1e9;
  const double V = 100.0;
  const double omega = kTwoPi * 50.0;
  const double dt = 1e-5;
  const long long n = 200000;

  MotorState s;
  std::vector<double> ts, ia;
  const double t_tail = 2.0 - 0.02 - 0.5 * dt;
  for (long long k = 0; k <= n; ++k) {
    const double t = k * dt;
    if (t >= t_tail) {
      ts.push_back(t);
      ia.push_back(derive_currents(s, p).stator.alpha);
    }
    if (k == n) break;
    const double tm = t + 0.5 * dt;
    s = step(s, {V * std::cos(omega * tm), V * std::sin(omega * tm)}, 0.0, dt, p);
  }

  const std::complex<double> meas = oracle::fundamental_phasor(ts, ia, omega);
  const std::complex<double> ref = V / oracle::locked_rotor_impedance(p, omega);
  const double amp_err = std::fabs(std::abs(meas) - std::abs(ref)) / std::abs(ref);
  double dphi = std::arg(meas) - std::arg(ref);
  while (dphi > kTwoPi / 2) dphi -= kTwoPi;
  while (dphi < -kTwoPi / 2) dphi += kTwoPi;
  verdict(amp_err <= 0.005 && std::fabs(dphi) <= 0.005,
          "locked-rotor phasor response",
          fmt("amplitude error %.4f%%, phase error %.5f rad (need <= 0.5%%, "
              "<= 0.005 rad)",
              100.0 * amp_err, std::fabs(dphi)));
}

void check_energy_balance() {
  const MotorParams p;
  const double V = 150.0;
  const double omega = kTwoPi * 50.0;
  const double t_load = 1.0;
  const double dt = 1e-5;
  const long long n_total = 120000;
  const long long n_begin = 20000;

  auto magnetic_energy = [&](const MotorState& st) {
    const MachineCurrents c = derive_currents(st, p);
    return 0.75 * (dot(st.stator_flux, c.stator) + dot(st.rotor_flux, c.rotor));
  };

  MotorState s;
  for (long long k = 0; k < n_begin; ++k) {
    const double tm = k * dt + 0.5 * dt;
    s = step(s, {V * std::cos(omega * tm), V * std::sin(omega * tm)}, t_load, dt, p);
  }
  const double w0 = magnetic_energy(s);
  const double ke0 = 0.5 * p.J * s.omega_m * s.omega_m;
  double e_in = 0, e_cu = 0, e_mech = 0;
  for (long long k = n_begin; k < n_total; ++k) {
    const double tm = k * dt + 0.5 * dt;
    const AlphaBeta v{V * std::cos(omega * tm), V * std::sin(omega * tm)};
    const MachineCurrents c0 = derive_currents(s, p);
    const double wm0 = s.omega_m;
    const MotorState next = step(s, v, t_load, dt, p);
    const MachineCurrents c1 = derive_currents(next, p);
    e_in += 0.5 * dt * 1.5 * (dot(v, c0.stator) + dot(v, c1.stator));
    e_cu += 0.5 * dt * 1.5 *
            (p.R_s * (dot(c0.stator, c0.stator) + dot(c1.stator, c1.stator)) +
             p.R_r * (dot(c0.rotor, c0.rotor) + dot(c1.rotor, c1.rotor)));
    e_mech += 0.5 * dt * (t_load * (wm0 + next.omega_m) +
                          p.B * (wm0 * wm0 + next.omega_m * next.omega_m));
    s = next;
  }
  const double rhs = (magnetic_energy(s) - w0) + e_cu +
                     (0.5 * p.J * s.omega_m * s.omega_m - ke0) + e_mech;
  const double rel = std::fabs(e_in - rhs) / std::fabs(e_in);
  verdict(rel <= 0.001, "energy balance",
          fmt("input vs stored+dissipated mismatch %.5f%% over 1 s at 10 us "
              "steps (need <= 0.1%%)",
              100.0 * rel));
}

void check_convergence_order() {
  const MotorParams p;
  const AlphaBeta v{85.0, 40.0};
  auto endpoint = [&](double dt) {
    MotorState s;
    s.stator_flux = {0.5, 0.1};
    s.rotor_flux = {0.35, -0.2};
    s.omega_m = 30.0;
    s.theta_m = 1.0;
    const long long steps = std::llround(0.05 / dt);
    for (long long i = 0; i < steps; ++i) s = step(s, v, 0.5, dt, p);
    return s;
  };
  auto dist = [](const MotorState& x, const MotorState& y) {
    const double d[6] = {x.stator_flux.alpha - y.stator_flux.alpha,
                         x.stator_flux.beta - y.stator_flux.beta,
                         x.rotor_flux.alpha - y.rotor_flux.alpha,
                         x.rotor_flux.beta - y.rotor_flux.beta,
                         (x.omega_m - y.omega_m) / 100.0,
                         x.theta_m - y.theta_m};
    double n = 0;
    for (double e : d) n += e * e;
    return std::sqrt(n);
  };
  const double e_coarse = dist(endpoint(80e-6), endpoint(40e-6));
  const double e_fine = dist(endpoint(40e-6), endpoint(20e-6));
  const double order = std::log2(e_coarse / e_fine);
  verdict(order >= 3.5, "integrator convergence order",
          fmt("observed order %.2f from 80/40/20 us Richardson ratio "
              "(need >= 3.5)",
              order));
}

void check_determinism(const BenchmarkResult& bench) {
  const RunResult again = run_scenario(bench.dtc_loaded.config);
  const bool same =
      trace_to_csv(again.trace) == trace_to_csv(bench.dtc_loaded.trace);
  verdict(same, "determinism",
          same ? "re-running the loaded dtc scenario reproduced the trace "
                 "byte for byte"
               : "re-run produced a different trace");
}

}  // namespace

int main() {
  std::printf("acceptance: benchmark matrix (4 runs, 3 s each) ...\n");
  ScenarioConfig base;
  const BenchmarkResult bench = run_benchmark_matrix(base);

  check_benchmark(bench);
  check_table();
  check_transforms();
  check_phasor();
  check_energy_balance();
  check_convergence_order();
  check_determinism(bench);

  if (g_failures == 0) {
    std::printf("acceptance: all criteria met\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  return 1;
}
