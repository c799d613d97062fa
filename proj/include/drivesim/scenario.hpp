#pragma once

#include <string>
#include <vector>

#include "drivesim/dtc.hpp"
#include "drivesim/foc.hpp"
#include "drivesim/metrics.hpp"
#include "drivesim/motor_params.hpp"

// Closed-loop scenario runner. Fixed-step plant integration at plant_dt with
// the controller sampled every ctrl_dt (an exact integer multiple); the
// switch state chosen at a control instant is held until the next one. The
// whole loop is deterministic: same config, same trace, byte for byte.

namespace drivesim {

enum class ControllerKind { foc, dtc };

struct LoadStep {
  double time = 0.0;    // s
  double torque = 0.0;  // N*m, applied from `time` onward
};

struct ScenarioConfig {
  ControllerKind controller = ControllerKind::dtc;
  double speed_ref_rpm = 1500.0;
  std::vector<LoadStep> load_profile = {{0.0, 0.0}};
  double duration = 3.0;    // s
  double plant_dt = 5e-6;   // s
  double ctrl_dt = 50e-6;   // s, integer multiple of plant_dt
  MotorParams motor;
  FocConfig foc;
  DtcConfig dtc;
  int trace_decimation = 20;     // log every Nth plant step
  double metrics_window = 0.1;   // s

  void validate() const;  // throws ConfigError naming the field

  // Plant steps in the run and controller invocations, derived consistently
  // from the float durations.
  long long plant_steps() const;
  long long controller_invocations() const;
};

struct TraceRow {
  double t = 0.0;           // s
  double omega_m = 0.0;     // rpm
  double T_e = 0.0;         // plant torque, N*m
  double T_load = 0.0;      // N*m
  double lambda = 0.0;      // Wb: controller estimate (dtc) / plant |lambda_s| (foc)
  double i_a = 0.0, i_b = 0.0, i_c = 0.0;  // A
  int s_a = 0, s_b = 0, s_c = 0;
  double f_sw = 0.0;        // Hz, last completed window; NaN before the first
};

struct RunMetrics {
  double steady_start = 0.0, steady_end = 0.0;
  std::vector<double> steady_window_frequencies;  // completed windows inside steady span
  double median_switching_frequency = 0.0;        // Hz, median of the above
  RippleStats torque_ripple;                      // over the steady span
  double median_loss_proxy = 0.0;                 // J per window, relative figure
  double speed_mean_rpm = 0.0;                    // over the steady span
  double speed_error_pct = 0.0;                   // |mean - ref| / ref * 100
  double settle_time = 0.0;      // s, last time outside +/-1% before first load change
  double recovery_time = 0.0;    // s after last load change outside +/-1%; NaN if no change
  long long controller_invocations = 0;
};

struct RunResult {
  ScenarioConfig config;
  std::vector<TraceRow> trace;
  RunMetrics metrics;
};

RunResult run_scenario(const ScenarioConfig& config);

// Everything compare() needs, persistable as a flat key-value file so runs
// can be compared across processes.
struct RunSummary {
  ControllerKind controller = ControllerKind::dtc;
  double speed_ref_rpm = 0.0;
  std::vector<LoadStep> load_profile;
  double duration = 0.0;
  RunMetrics metrics;

  std::string to_key_values() const;
  static RunSummary from_key_values(const std::string& text);
};

RunSummary summarize(const RunResult& result);

// Pairwise comparison of one FOC run and one DTC run of the same scenario
// shape. Order of arguments does not matter; mismatched speed reference or
// load profile, or two runs of the same kind, throw ConfigError.
struct ComparisonReport {
  RunSummary foc;
  RunSummary dtc;
  double frequency_ratio = 0.0;        // f_foc / f_dtc
  double frequency_excess_pct = 0.0;   // 100 * (f_foc - f_dtc) / f_dtc
  double ripple_ratio = 0.0;           // dtc peak-to-peak / foc peak-to-peak

  std::string to_text() const;
  std::string to_key_values() const;
};

ComparisonReport compare(const RunSummary& a, const RunSummary& b);

// The built-in four-run benchmark: both controllers, unloaded and with a
// 10 N*m step at t = 1.5 s, 3 s at 1500 rpm. Controller and load settings in
// `base` are overridden; motor and controller tuning are taken from it.
struct BenchmarkResult {
  RunResult dtc_unloaded, foc_unloaded, dtc_loaded, foc_loaded;
  ComparisonReport unloaded, loaded;
};

BenchmarkResult run_benchmark_matrix(const ScenarioConfig& base);

}  // namespace drivesim
