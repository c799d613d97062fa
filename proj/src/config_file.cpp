#include "drivesim/config_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "drivesim/errors.hpp"
#include "text_format.hpp"

namespace drivesim {

namespace {

using textfmt::g17;
using textfmt::parse_double;
using textfmt::parse_int;
using textfmt::split;
using textfmt::trim;

std::vector<LoadStep> parse_load_profile(const std::string& text) {
  std::vector<LoadStep> out;
  for (const std::string& item : split(text, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("load_profile: expected time:torque entries, got '" +
                        trim(item) + "'");
    }
    out.push_back({parse_double(item.substr(0, colon), "load_profile time"),
                   parse_double(item.substr(colon + 1), "load_profile torque")});
  }
  return out;
}

}  // namespace

KeyValueList parse_key_values(const std::string& text) {
  KeyValueList out;
  int line_no = 0;
  for (const std::string& raw : split(text, '\n')) {
    ++line_no;
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": empty key");
    }
    out.emplace_back(key, value);
  }
  return out;
}

ScenarioConfig scenario_from_key_values(const KeyValueList& kv,
                                        std::vector<std::string>* defaulted) {
  ScenarioConfig cfg;
  std::set<std::string> seen;

  for (const auto& [key, value] : kv) {
    if (!seen.insert(key).second) {
      throw ConfigError("config: duplicate key '" + key + "'");
    }
    if (key == "controller") {
      if (value == "foc") {
        cfg.controller = ControllerKind::foc;
      } else if (value == "dtc") {
        cfg.controller = ControllerKind::dtc;
      } else {
        throw ConfigError("controller: expected foc or dtc, got '" + value + "'");
      }
    } else if (key == "speed_ref_rpm") {
      cfg.speed_ref_rpm = parse_double(value, key);
    } else if (key == "load_profile") {
      cfg.load_profile = parse_load_profile(value);
    } else if (key == "duration_s") {
      cfg.duration = parse_double(value, key);
    } else if (key == "plant_dt_s") {
      cfg.plant_dt = parse_double(value, key);
    } else if (key == "ctrl_dt_s") {
      cfg.ctrl_dt = parse_double(value, key);
    } else if (key == "trace_decimation") {
      cfg.trace_decimation = static_cast<int>(parse_int(value, key));
    } else if (key == "metrics.window_s") {
      cfg.metrics_window = parse_double(value, key);
    } else if (key == "motor.R_s") {
      cfg.motor.R_s = parse_double(value, key);
    } else if (key == "motor.R_r") {
      cfg.motor.R_r = parse_double(value, key);
    } else if (key == "motor.L_s") {
      cfg.motor.L_s = parse_double(value, key);
    } else if (key == "motor.L_r") {
      cfg.motor.L_r = parse_double(value, key);
    } else if (key == "motor.L_m") {
      cfg.motor.L_m = parse_double(value, key);
    } else if (key == "motor.pole_pairs") {
      cfg.motor.pole_pairs = static_cast<int>(parse_int(value, key));
    } else if (key == "motor.J") {
      cfg.motor.J = parse_double(value, key);
    } else if (key == "motor.B") {
      cfg.motor.B = parse_double(value, key);
    } else if (key == "motor.V_dc") {
      cfg.motor.V_dc = parse_double(value, key);
    } else if (key == "motor.rated_speed_rpm") {
      cfg.motor.rated_speed_rpm = parse_double(value, key);
    } else if (key == "motor.rated_torque") {
      cfg.motor.rated_torque = parse_double(value, key);
    } else if (key == "dtc.flux_ref") {
      cfg.dtc.flux_ref = parse_double(value, key);
    } else if (key == "dtc.torque_band") {
      cfg.dtc.torque_band = parse_double(value, key);
    } else if (key == "dtc.flux_band") {
      cfg.dtc.flux_band = parse_double(value, key);
    } else if (key == "foc.rotor_flux_ref") {
      cfg.foc.rotor_flux_ref = parse_double(value, key);
    } else if (key == "foc.kp") {
      cfg.foc.kp = parse_double(value, key);
    } else if (key == "foc.ki") {
      cfg.foc.ki = parse_double(value, key);
    } else if (key == "foc.torque_limit") {
      cfg.foc.torque_limit = parse_double(value, key);
    } else if (key == "foc.current_band") {
      cfg.foc.current_band = parse_double(value, key);
    } else if (key == "foc.eq1_pole_interpretation") {
      if (value == "pairs") {
        cfg.foc.pole_interpretation = PoleInterpretation::pairs;
      } else if (value == "count") {
        cfg.foc.pole_interpretation = PoleInterpretation::count;
      } else {
        throw ConfigError(
            "foc.eq1_pole_interpretation: expected pairs or count, got '" +
            value + "'");
      }
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }

  // Controller periods always follow the loop clock.
  cfg.foc.ctrl_period = cfg.ctrl_dt;
  cfg.dtc.ctrl_period = cfg.ctrl_dt;

  if (defaulted) {
    static const char* const kAllKeys[] = {
        "controller", "speed_ref_rpm", "load_profile", "duration_s",
        "plant_dt_s", "ctrl_dt_s", "trace_decimation", "metrics.window_s",
        "motor.R_s", "motor.R_r", "motor.L_s", "motor.L_r", "motor.L_m",
        "motor.pole_pairs", "motor.J", "motor.B", "motor.V_dc",
        "motor.rated_speed_rpm", "motor.rated_torque", "dtc.flux_ref",
        "dtc.torque_band", "dtc.flux_band", "foc.rotor_flux_ref", "foc.kp",
        "foc.ki", "foc.torque_limit", "foc.current_band",
        "foc.eq1_pole_interpretation"};
    defaulted->clear();
    for (const char* key : kAllKeys) {
      if (!seen.contains(key)) defaulted->push_back(key);
    }
  }

  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario_config(const std::string& path,
                                    std::vector<std::string>* defaulted) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return scenario_from_key_values(parse_key_values(buffer.str()), defaulted);
}

std::string scenario_to_config_text(const ScenarioConfig& cfg) {
  std::ostringstream out;
  out << "# effective scenario configuration; re-runnable as-is\n";
  out << "controller = "
      << (cfg.controller == ControllerKind::foc ? "foc" : "dtc") << "\n";
  out << "speed_ref_rpm = " << g17(cfg.speed_ref_rpm) << "\n";
  out << "load_profile = ";
  for (std::size_t i = 0; i < cfg.load_profile.size(); ++i) {
    if (i) out << ", ";
    out << g17(cfg.load_profile[i].time) << ":"
        << g17(cfg.load_profile[i].torque);
  }
  out << "\n";
  out << "duration_s = " << g17(cfg.duration) << "\n";
  out << "plant_dt_s = " << g17(cfg.plant_dt) << "\n";
  out << "ctrl_dt_s = " << g17(cfg.ctrl_dt) << "\n";
  out << "trace_decimation = " << cfg.trace_decimation << "\n";
  out << "metrics.window_s = " << g17(cfg.metrics_window) << "\n";
  out << "motor.R_s = " << g17(cfg.motor.R_s) << "\n";
  out << "motor.R_r = " << g17(cfg.motor.R_r) << "\n";
  out << "motor.L_s = " << g17(cfg.motor.L_s) << "\n";
  out << "motor.L_r = " << g17(cfg.motor.L_r) << "\n";
  out << "motor.L_m = " << g17(cfg.motor.L_m) << "\n";
  out << "motor.pole_pairs = " << cfg.motor.pole_pairs << "\n";
  out << "motor.J = " << g17(cfg.motor.J) << "\n";
  out << "motor.B = " << g17(cfg.motor.B) << "\n";
  out << "motor.V_dc = " << g17(cfg.motor.V_dc) << "\n";
  out << "motor.rated_speed_rpm = " << g17(cfg.motor.rated_speed_rpm) << "\n";
  out << "motor.rated_torque = " << g17(cfg.motor.rated_torque) << "\n";
  out << "dtc.flux_ref = " << g17(cfg.dtc.flux_ref) << "\n";
  out << "dtc.torque_band = " << g17(cfg.dtc.torque_band) << "\n";
  out << "dtc.flux_band = " << g17(cfg.dtc.flux_band) << "\n";
  out << "foc.rotor_flux_ref = " << g17(cfg.foc.rotor_flux_ref) << "\n";
  out << "foc.kp = " << g17(cfg.foc.kp) << "\n";
  out << "foc.ki = " << g17(cfg.foc.ki) << "\n";
  out << "foc.torque_limit = " << g17(cfg.foc.torque_limit) << "\n";
  out << "foc.current_band = " << g17(cfg.foc.current_band) << "\n";
  out << "foc.eq1_pole_interpretation = "
      << (cfg.foc.pole_interpretation == PoleInterpretation::pairs ? "pairs"
                                                                   : "count")
      << "\n";
  return out.str();
}

}  // namespace drivesim
