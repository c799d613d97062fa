#include "drivesim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "drivesim/errors.hpp"
#include "drivesim/machine_model.hpp"
#include "text_format.hpp"

namespace drivesim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kRpmPerRadPerSec = 60.0 / kTwoPi;

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

// duration / dt as an exact step count; accepts float representations that
// are within a part in 1e6 of an integer, truncates otherwise.
long long steps_in(double duration, double dt) {
  const double ratio = duration / dt;
  const double rounded = std::round(ratio);
  if (std::fabs(ratio - rounded) <= 1e-6 * std::max(1.0, std::fabs(ratio))) {
    return static_cast<long long>(rounded);
  }
  return static_cast<long long>(std::floor(ratio));
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n == 0) return kNaN;
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

// Load torque applied at time t: the latest profile entry not after t.
double load_at(const std::vector<LoadStep>& profile, double t) {
  double torque = 0.0;
  for (const LoadStep& s : profile) {
    if (s.time <= t) torque = s.torque;
  }
  return torque;
}

}  // namespace

void ScenarioConfig::validate() const {
  require(std::isfinite(speed_ref_rpm), "speed_ref_rpm: must be finite");
  require(std::isfinite(duration) && duration > 0.0,
          "duration: must be finite and > 0");
  require(std::isfinite(plant_dt) && plant_dt > 0.0 && plant_dt <= 100e-6,
          "plant_dt: must be in (0, 100us]");
  require(std::isfinite(ctrl_dt) && ctrl_dt > 0.0, "ctrl_dt: must be > 0");
  const double ratio = ctrl_dt / plant_dt;
  require(std::fabs(ratio - std::round(ratio)) <= 1e-9 * ratio &&
              std::round(ratio) >= 1.0,
          "ctrl_dt: must be an integer multiple of plant_dt");
  double prev_time = -1.0;
  for (const LoadStep& s : load_profile) {
    require(std::isfinite(s.time) && s.time >= 0.0 && s.time <= duration,
            "load_profile: step times must lie within [0, duration]");
    require(s.time > prev_time, "load_profile: step times must be increasing");
    require(std::isfinite(s.torque), "load_profile: torque must be finite");
    prev_time = s.time;
  }
  require(trace_decimation >= 1, "trace_decimation: must be >= 1");
  require(std::isfinite(metrics_window) && metrics_window > 0.0,
          "metrics_window: must be > 0");
  motor.validate();
  foc.validate(motor.rated_torque);
  dtc.validate();
}

long long ScenarioConfig::plant_steps() const {
  return steps_in(duration, plant_dt);
}

long long ScenarioConfig::controller_invocations() const {
  return steps_in(duration, ctrl_dt);
}

RunResult run_scenario(const ScenarioConfig& config) {
  config.validate();

  const long long n_steps = config.plant_steps();
  const long long ctrl_ratio =
      static_cast<long long>(std::round(config.ctrl_dt / config.plant_dt));
  const long long n_ctrl = config.controller_invocations();
  const double speed_ref = config.speed_ref_rpm / kRpmPerRadPerSec;

  MotorState state;
  SwitchState applied;
  AlphaBeta applied_voltage;  // inverter output held since the last control instant

  // Both controllers share the same outer speed loop; for DTC it lives here
  // in the harness and feeds the torque reference.
  std::optional<DtcController> dtc;
  std::optional<FocController> foc;
  std::optional<SpeedPi> dtc_pi;
  if (config.controller == ControllerKind::dtc) {
    DtcConfig dtc_cfg = config.dtc;
    dtc_cfg.ctrl_period = config.ctrl_dt;  // the scenario clock governs
    dtc.emplace(dtc_cfg, config.motor);
    dtc_pi.emplace(config.foc.kp, config.foc.ki, config.foc.torque_limit);
  } else {
    FocConfig foc_cfg = config.foc;
    foc_cfg.ctrl_period = config.ctrl_dt;
    foc.emplace(foc_cfg, config.motor);
  }

  SwitchingCounter counter(config.metrics_window, 0.0);
  RunResult result;
  result.config = config;
  result.trace.reserve(
      static_cast<std::size_t>(n_steps / config.trace_decimation + 2));
  long long invocations = 0;

  for (long long k = 0; k <= n_steps; ++k) {
    const double t = static_cast<double>(k) * config.plant_dt;
    const double t_load = load_at(config.load_profile, t);
    const MachineCurrents currents = derive_currents(state, config.motor);
    const PhaseTriple i_abc = inverse_clarke(currents.stator);

    if (k % ctrl_ratio == 0 && k / ctrl_ratio < n_ctrl) {
      SwitchState next;
      if (dtc) {
        const double torque_ref =
            dtc_pi->update(speed_ref, state.omega_m, config.ctrl_dt);
        next = dtc->step(applied_voltage, currents.stator, torque_ref);
      } else {
        next = foc->step(speed_ref, state.omega_m, i_abc);
      }
      ++invocations;
      counter.record_transition(t, applied, next, i_abc);
      applied = next;
      applied_voltage = output_voltage(applied, config.motor.V_dc);
    }

    if (k % config.trace_decimation == 0) {
      counter.finish(t);
      TraceRow row;
      row.t = t;
      row.omega_m = state.omega_m * kRpmPerRadPerSec;
      row.T_e = plant_torque(state, currents.stator, config.motor.pole_pairs);
      row.T_load = t_load;
      row.lambda = dtc ? dtc->estimate().magnitude : state.stator_flux.norm();
      row.i_a = i_abc.a;
      row.i_b = i_abc.b;
      row.i_c = i_abc.c;
      row.s_a = applied.a ? 1 : 0;
      row.s_b = applied.b ? 1 : 0;
      row.s_c = applied.c ? 1 : 0;
      row.f_sw =
          counter.completed().empty() ? kNaN : counter.window_frequency();
      result.trace.push_back(row);
    }

    if (k < n_steps) {
      try {
        state = step(state, applied_voltage, t_load, config.plant_dt,
                     config.motor);
      } catch (const NumericError& e) {
        throw NumericError(std::string(e.what()) + " at t = " +
                           textfmt::g9(t) + " s");
      }
    }
  }

  // The accumulated step time can land one rounding above `duration`; finish
  // at whichever is later so the counter never sees time move backwards.
  counter.finish(std::max(config.duration,
                          static_cast<double>(n_steps) * config.plant_dt));

  // Steady-state span: the final second (or the whole run when shorter).
  RunMetrics& m = result.metrics;
  m.steady_start = std::max(0.0, config.duration - 1.0);
  m.steady_end = config.duration;
  m.controller_invocations = invocations;

  const double edge = 1e-9 * config.metrics_window;
  std::vector<double> losses;
  for (const auto& w : counter.completed()) {
    if (w.start >= m.steady_start - edge &&
        w.start + w.length <= m.steady_end + edge) {
      m.steady_window_frequencies.push_back(w.frequency());
      losses.push_back(switching_loss_proxy(w, config.motor.V_dc));
    }
  }
  m.median_switching_frequency = median(m.steady_window_frequencies);
  m.median_loss_proxy = median(losses);

  std::vector<std::pair<double, double>> torque_samples;
  double speed_sum = 0.0;
  long long speed_count = 0;
  for (const TraceRow& row : result.trace) {
    if (row.t < m.steady_start || row.t > m.steady_end) continue;
    torque_samples.emplace_back(row.t, row.T_e);
    speed_sum += row.omega_m;
    ++speed_count;
  }
  if (torque_samples.size() >= 2) {
    m.torque_ripple =
        torque_ripple(torque_samples, m.steady_start, m.steady_end);
  }
  if (speed_count > 0 && config.speed_ref_rpm != 0.0) {
    m.speed_mean_rpm = speed_sum / static_cast<double>(speed_count);
    m.speed_error_pct = 100.0 *
                        std::fabs(m.speed_mean_rpm - config.speed_ref_rpm) /
                        std::fabs(config.speed_ref_rpm);
  }

  // Settling and recovery against a +/-1% speed band. "Settle" looks at the
  // stretch before the first load change, "recovery" after the last one.
  const double band = 0.01 * std::fabs(config.speed_ref_rpm);
  double first_change = config.duration;
  double last_change = -1.0;
  for (const LoadStep& s : config.load_profile) {
    if (s.time > 0.0) {
      first_change = std::min(first_change, s.time);
      last_change = std::max(last_change, s.time);
    }
  }
  m.settle_time = 0.0;
  for (const TraceRow& row : result.trace) {
    if (row.t >= first_change) break;
    if (std::fabs(row.omega_m - config.speed_ref_rpm) > band) {
      m.settle_time = row.t;
    }
  }
  if (last_change >= 0.0) {
    m.recovery_time = 0.0;
    for (const TraceRow& row : result.trace) {
      if (row.t < last_change) continue;
      if (std::fabs(row.omega_m - config.speed_ref_rpm) > band) {
        m.recovery_time = row.t - last_change;
      }
    }
  } else {
    m.recovery_time = kNaN;
  }

  return result;
}

namespace {

std::string controller_name(ControllerKind kind) {
  return kind == ControllerKind::foc ? "foc" : "dtc";
}

ControllerKind controller_from(const std::string& name) {
  if (name == "foc") return ControllerKind::foc;
  if (name == "dtc") return ControllerKind::dtc;
  throw ConfigError("controller: expected foc or dtc, got '" + name + "'");
}

std::string profile_to_text(const std::vector<LoadStep>& profile) {
  std::string out;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (i) out += ", ";
    out += textfmt::g17(profile[i].time) + ":" + textfmt::g17(profile[i].torque);
  }
  return out;
}

std::vector<LoadStep> profile_from_text(const std::string& text) {
  std::vector<LoadStep> out;
  const std::string trimmed = textfmt::trim(text);
  if (trimmed.empty()) return out;
  for (const std::string& item : textfmt::split(trimmed, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("load_profile: expected time:torque, got '" + item + "'");
    }
    LoadStep s;
    s.time = textfmt::parse_double(item.substr(0, colon), "load_profile time");
    s.torque = textfmt::parse_double(item.substr(colon + 1), "load_profile torque");
    out.push_back(s);
  }
  return out;
}

void append_kv(std::string& out, const std::string& key, const std::string& value) {
  out += key;
  out += " = ";
  out += value;
  out += "\n";
}

}  // namespace

RunSummary summarize(const RunResult& result) {
  RunSummary s;
  s.controller = result.config.controller;
  s.speed_ref_rpm = result.config.speed_ref_rpm;
  s.load_profile = result.config.load_profile;
  s.duration = result.config.duration;
  s.metrics = result.metrics;
  return s;
}

std::string RunSummary::to_key_values() const {
  std::string out;
  append_kv(out, "run.controller", controller_name(controller));
  append_kv(out, "run.speed_ref_rpm", textfmt::g17(speed_ref_rpm));
  append_kv(out, "run.load_profile", profile_to_text(load_profile));
  append_kv(out, "run.duration", textfmt::g17(duration));
  append_kv(out, "metrics.steady_start", textfmt::g17(metrics.steady_start));
  append_kv(out, "metrics.steady_end", textfmt::g17(metrics.steady_end));
  append_kv(out, "metrics.median_switching_frequency",
            textfmt::g17(metrics.median_switching_frequency));
  std::string windows;
  for (std::size_t i = 0; i < metrics.steady_window_frequencies.size(); ++i) {
    if (i) windows += ", ";
    windows += textfmt::g17(metrics.steady_window_frequencies[i]);
  }
  append_kv(out, "metrics.steady_window_frequencies", windows);
  append_kv(out, "metrics.ripple_mean", textfmt::g17(metrics.torque_ripple.mean));
  append_kv(out, "metrics.ripple_peak_to_peak",
            textfmt::g17(metrics.torque_ripple.peak_to_peak));
  append_kv(out, "metrics.ripple_std_dev",
            textfmt::g17(metrics.torque_ripple.std_dev));
  append_kv(out, "metrics.ripple_samples",
            std::to_string(metrics.torque_ripple.samples));
  append_kv(out, "metrics.median_loss_proxy",
            textfmt::g17(metrics.median_loss_proxy));
  append_kv(out, "metrics.speed_mean_rpm", textfmt::g17(metrics.speed_mean_rpm));
  append_kv(out, "metrics.speed_error_pct",
            textfmt::g17(metrics.speed_error_pct));
  append_kv(out, "metrics.settle_time", textfmt::g17(metrics.settle_time));
  append_kv(out, "metrics.recovery_time", textfmt::g17(metrics.recovery_time));
  append_kv(out, "metrics.controller_invocations",
            std::to_string(metrics.controller_invocations));
  return out;
}

RunSummary RunSummary::from_key_values(const std::string& text) {
  RunSummary s;
  bool saw_controller = false;
  for (const std::string& raw : textfmt::split(text, '\n')) {
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = textfmt::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("summary: expected 'key = value', got '" + line + "'");
    }
    const std::string key = textfmt::trim(line.substr(0, eq));
    const std::string value = textfmt::trim(line.substr(eq + 1));
    if (key == "run.controller") {
      s.controller = controller_from(value);
      saw_controller = true;
    } else if (key == "run.speed_ref_rpm") {
      s.speed_ref_rpm = textfmt::parse_double(value, key);
    } else if (key == "run.load_profile") {
      s.load_profile = profile_from_text(value);
    } else if (key == "run.duration") {
      s.duration = textfmt::parse_double(value, key);
    } else if (key == "metrics.steady_start") {
      s.metrics.steady_start = textfmt::parse_double(value, key);
    } else if (key == "metrics.steady_end") {
      s.metrics.steady_end = textfmt::parse_double(value, key);
    } else if (key == "metrics.median_switching_frequency") {
      s.metrics.median_switching_frequency = textfmt::parse_double(value, key);
    } else if (key == "metrics.steady_window_frequencies") {
      if (!value.empty()) {
        for (const std::string& item : textfmt::split(value, ',')) {
          s.metrics.steady_window_frequencies.push_back(
              textfmt::parse_double(item, key));
        }
      }
    } else if (key == "metrics.ripple_mean") {
      s.metrics.torque_ripple.mean = textfmt::parse_double(value, key);
    } else if (key == "metrics.ripple_peak_to_peak") {
      s.metrics.torque_ripple.peak_to_peak = textfmt::parse_double(value, key);
    } else if (key == "metrics.ripple_std_dev") {
      s.metrics.torque_ripple.std_dev = textfmt::parse_double(value, key);
    } else if (key == "metrics.ripple_samples") {
      s.metrics.torque_ripple.samples = textfmt::parse_int(value, key);
    } else if (key == "metrics.median_loss_proxy") {
      s.metrics.median_loss_proxy = textfmt::parse_double(value, key);
    } else if (key == "metrics.speed_mean_rpm") {
      s.metrics.speed_mean_rpm = textfmt::parse_double(value, key);
    } else if (key == "metrics.speed_error_pct") {
      s.metrics.speed_error_pct = textfmt::parse_double(value, key);
    } else if (key == "metrics.settle_time") {
      s.metrics.settle_time = textfmt::parse_double(value, key);
    } else if (key == "metrics.recovery_time") {
      s.metrics.recovery_time = textfmt::parse_double(value, key);
    } else if (key == "metrics.controller_invocations") {
      s.metrics.controller_invocations = textfmt::parse_int(value, key);
    } else {
      throw ConfigError("summary: unknown key '" + key + "'");
    }
  }
  if (!saw_controller) throw ConfigError("summary: missing run.controller");
  return s;
}

ComparisonReport compare(const RunSummary& a, const RunSummary& b) {
  if (a.controller == b.controller) {
    throw ConfigError("compare: need one foc run and one dtc run, got two " +
                      controller_name(a.controller) + " runs");
  }
  const RunSummary& foc = a.controller == ControllerKind::foc ? a : b;
  const RunSummary& dtc = a.controller == ControllerKind::dtc ? a : b;

  if (foc.speed_ref_rpm != dtc.speed_ref_rpm) {
    throw ConfigError("compare: speed references differ (" +
                      textfmt::g17(foc.speed_ref_rpm) + " vs " +
                      textfmt::g17(dtc.speed_ref_rpm) + " rpm)");
  }
  bool same_profile = foc.load_profile.size() == dtc.load_profile.size();
  for (std::size_t i = 0; same_profile && i < foc.load_profile.size(); ++i) {
    same_profile = foc.load_profile[i].time == dtc.load_profile[i].time &&
                   foc.load_profile[i].torque == dtc.load_profile[i].torque;
  }
  if (!same_profile) {
    throw ConfigError("compare: load profiles differ");
  }
  const double f_foc = foc.metrics.median_switching_frequency;
  const double f_dtc = dtc.metrics.median_switching_frequency;
  if (!std::isfinite(f_foc) || !std::isfinite(f_dtc) || f_dtc <= 0.0) {
    throw ConfigError(
        "compare: runs lack steady-state switching windows (too short?)");
  }

  ComparisonReport report;
  report.foc = foc;
  report.dtc = dtc;
  report.frequency_ratio = f_foc / f_dtc;
  report.frequency_excess_pct = 100.0 * (f_foc - f_dtc) / f_dtc;
  const double foc_p2p = foc.metrics.torque_ripple.peak_to_peak;
  report.ripple_ratio =
      foc_p2p > 0.0 ? dtc.metrics.torque_ripple.peak_to_peak / foc_p2p : kNaN;
  return report;
}

std::string ComparisonReport::to_text() const {
  std::ostringstream out;
  out << "scenario: " << textfmt::g9(foc.speed_ref_rpm) << " rpm, load ["
      << profile_to_text(foc.load_profile) << "], "
      << textfmt::g9(foc.duration) << " s\n";
  out << "steady-state window: [" << textfmt::g9(foc.metrics.steady_start)
      << ", " << textfmt::g9(foc.metrics.steady_end) << "] s\n\n";
  auto line = [&out](const char* label, double foc_v, double dtc_v,
                     const char* unit) {
    out << "  " << label << ": foc " << textfmt::g9(foc_v) << " " << unit
        << ", dtc " << textfmt::g9(dtc_v) << " " << unit << "\n";
  };
  line("median switching frequency",
       foc.metrics.median_switching_frequency,
       dtc.metrics.median_switching_frequency, "Hz");
  line("torque ripple peak-to-peak", foc.metrics.torque_ripple.peak_to_peak,
       dtc.metrics.torque_ripple.peak_to_peak, "N*m");
  line("torque ripple std dev", foc.metrics.torque_ripple.std_dev,
       dtc.metrics.torque_ripple.std_dev, "N*m");
  line("torque mean", foc.metrics.torque_ripple.mean,
       dtc.metrics.torque_ripple.mean, "N*m");
  line("speed error", foc.metrics.speed_error_pct,
       dtc.metrics.speed_error_pct, "%");
  line("switching loss proxy", foc.metrics.median_loss_proxy,
       dtc.metrics.median_loss_proxy, "J/window");
  out << "\n  foc/dtc frequency ratio: " << textfmt::g9(frequency_ratio)
      << " (foc exceeds dtc by " << textfmt::g9(frequency_excess_pct)
      << " %)\n";
  out << "  dtc/foc torque ripple ratio (peak-to-peak): "
      << textfmt::g9(ripple_ratio) << "\n";
  return out.str();
}

std::string ComparisonReport::to_key_values() const {
  std::string out;
  append_kv(out, "comparison.speed_ref_rpm", textfmt::g17(foc.speed_ref_rpm));
  append_kv(out, "comparison.load_profile", profile_to_text(foc.load_profile));
  append_kv(out, "comparison.foc_median_switching_frequency",
            textfmt::g17(foc.metrics.median_switching_frequency));
  append_kv(out, "comparison.dtc_median_switching_frequency",
            textfmt::g17(dtc.metrics.median_switching_frequency));
  append_kv(out, "comparison.frequency_ratio", textfmt::g17(frequency_ratio));
  append_kv(out, "comparison.frequency_excess_pct",
            textfmt::g17(frequency_excess_pct));
  append_kv(out, "comparison.foc_ripple_peak_to_peak",
            textfmt::g17(foc.metrics.torque_ripple.peak_to_peak));
  append_kv(out, "comparison.dtc_ripple_peak_to_peak",
            textfmt::g17(dtc.metrics.torque_ripple.peak_to_peak));
  append_kv(out, "comparison.ripple_ratio", textfmt::g17(ripple_ratio));
  append_kv(out, "comparison.foc_speed_error_pct",
            textfmt::g17(foc.metrics.speed_error_pct));
  append_kv(out, "comparison.dtc_speed_error_pct",
            textfmt::g17(dtc.metrics.speed_error_pct));
  return out;
}

BenchmarkResult run_benchmark_matrix(const ScenarioConfig& base) {
  ScenarioConfig shaped = base;
  shaped.speed_ref_rpm = 1500.0;
  shaped.duration = 3.0;

  auto scenario = [&shaped](ControllerKind kind, bool loaded) {
    ScenarioConfig c = shaped;
    c.controller = kind;
    c.load_profile = loaded
                         ? std::vector<LoadStep>{{0.0, 0.0}, {1.5, 10.0}}
                         : std::vector<LoadStep>{{0.0, 0.0}};
    return c;
  };

  // Four independent deterministic runs; safe to execute concurrently.
  auto fut_du = std::async(std::launch::async, run_scenario,
                           scenario(ControllerKind::dtc, false));
  auto fut_fu = std::async(std::launch::async, run_scenario,
                           scenario(ControllerKind::foc, false));
  auto fut_dl = std::async(std::launch::async, run_scenario,
                           scenario(ControllerKind::dtc, true));
  auto fut_fl = std::async(std::launch::async, run_scenario,
                           scenario(ControllerKind::foc, true));

  BenchmarkResult out;
  out.dtc_unloaded = fut_du.get();
  out.foc_unloaded = fut_fu.get();
  out.dtc_loaded = fut_dl.get();
  out.foc_loaded = fut_fl.get();
  out.unloaded = compare(summarize(out.foc_unloaded), summarize(out.dtc_unloaded));
  out.loaded = compare(summarize(out.foc_loaded), summarize(out.dtc_loaded));
  return out;
}

}  // namespace drivesim
