// drivesim command-line front end.
//
//   drivesim simulate --config scenario.conf [--controller foc|dtc]
//            [--speed RPM] [--load-torque NM] [--out trace.csv]
//   drivesim compare --a run_a.summary --b run_b.summary [--out prefix]
//   drivesim replicate-paper --out-dir DIR [--config base.conf]
//
// Exit codes: 0 success, 1 validation error, 2 numerical failure, 3 I/O
// failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "drivesim/config_file.hpp"
#include "drivesim/csv.hpp"
#include "drivesim/errors.hpp"
#include "drivesim/scenario.hpp"

namespace {

using namespace drivesim;

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("short write to '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

std::string strip_suffix(const std::string& path, const std::string& suffix) {
  if (path.size() > suffix.size() &&
      path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return path.substr(0, path.size() - suffix.size());
  }
  return path;
}

// Writes trace, run summary and a re-runnable effective config next to each
// other, deriving sibling names from the CSV path.
void write_run_outputs(const RunResult& result, const std::string& csv_path,
                       const std::vector<std::string>& defaulted) {
  export_csv(result.trace, csv_path);
  const std::string base = strip_suffix(csv_path, ".csv");
  write_text_file(base + ".summary", summarize(result).to_key_values());
  std::string effective = scenario_to_config_text(result.config);
  if (!defaulted.empty()) {
    effective += "# keys left at defaults:";
    for (const std::string& key : defaulted) effective += " " + key;
    effective += "\n";
  }
  write_text_file(base + ".effective.conf", effective);
}

RunSummary load_summary_arg(const std::string& path) {
  std::string summary_path = path;
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) {
    // A raw trace has no scenario identity; use the sibling summary the
    // simulate subcommand wrote next to it.
    summary_path = strip_suffix(path, ".csv") + ".summary";
    if (!std::filesystem::exists(summary_path)) {
      throw ConfigError("compare: no summary next to '" + path +
                        "'; expected '" + summary_path + "'");
    }
  }
  return RunSummary::from_key_values(read_text_file(summary_path));
}

int run_simulate(const std::string& config_path,
                 const std::optional<std::string>& controller,
                 const std::optional<double>& speed,
                 const std::optional<double>& load_torque,
                 const std::string& out_path) {
  std::vector<std::string> defaulted;
  ScenarioConfig cfg = load_scenario_config(config_path, &defaulted);
  if (controller) {
    cfg.controller =
        *controller == "foc" ? ControllerKind::foc : ControllerKind::dtc;
  }
  if (speed) cfg.speed_ref_rpm = *speed;
  if (load_torque) cfg.load_profile = {{0.0, *load_torque}};
  cfg.validate();

  const RunResult result = run_scenario(cfg);
  write_run_outputs(result, out_path, defaulted);

  const RunMetrics& m = result.metrics;
  std::cout << "wrote " << out_path << " (" << result.trace.size()
            << " rows)\n";
  std::cout << "steady [" << m.steady_start << ", " << m.steady_end
            << "] s: median f_sw = " << m.median_switching_frequency
            << " Hz, torque p2p = " << m.torque_ripple.peak_to_peak
            << " N*m, speed err = " << m.speed_error_pct << " %\n";
  return 0;
}

int run_compare(const std::string& a_path, const std::string& b_path,
                const std::optional<std::string>& out_prefix) {
  const ComparisonReport report =
      compare(load_summary_arg(a_path), load_summary_arg(b_path));
  std::cout << report.to_text();
  if (out_prefix) {
    write_text_file(*out_prefix + ".txt", report.to_text());
    write_text_file(*out_prefix + ".kv", report.to_key_values());
  }
  return 0;
}

int run_benchmark(const std::string& out_dir,
                  const std::optional<std::string>& config_path) {
  ScenarioConfig base;
  std::vector<std::string> defaulted;
  if (config_path) {
    base = load_scenario_config(*config_path, &defaulted);
  } else {
    base.validate();
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create directory '" + out_dir + "'");

  const BenchmarkResult bench = run_benchmark_matrix(base);
  const auto path = [&out_dir](const char* name) {
    return (std::filesystem::path(out_dir) / name).string();
  };
  write_run_outputs(bench.dtc_unloaded, path("dtc_unloaded.csv"), defaulted);
  write_run_outputs(bench.foc_unloaded, path("foc_unloaded.csv"), defaulted);
  write_run_outputs(bench.dtc_loaded, path("dtc_loaded.csv"), defaulted);
  write_run_outputs(bench.foc_loaded, path("foc_loaded.csv"), defaulted);
  write_text_file(path("comparison_unloaded.txt"), bench.unloaded.to_text());
  write_text_file(path("comparison_unloaded.kv"),
                  bench.unloaded.to_key_values());
  write_text_file(path("comparison_loaded.txt"), bench.loaded.to_text());
  write_text_file(path("comparison_loaded.kv"), bench.loaded.to_key_values());

  std::cout << "== unloaded ==\n" << bench.unloaded.to_text() << "\n";
  std::cout << "== loaded (10 N*m step at 1.5 s) ==\n"
            << bench.loaded.to_text();
  std::cout << "\noutputs in " << out_dir << "/\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic induction-motor drive simulator: "
               "hysteresis-based FOC and DTC on a two-level inverter"};
  app.require_subcommand(1);

  // simulate
  std::string sim_config;
  std::optional<std::string> sim_controller;
  std::optional<double> sim_speed, sim_load;
  std::string sim_out = "trace.csv";
  CLI::App* simulate =
      app.add_subcommand("simulate", "Run one scenario from a config file");
  simulate->add_option("--config", sim_config, "Scenario config file")
      ->required();
  simulate->add_option("--controller", sim_controller, "Override: foc or dtc")
      ->check(CLI::IsMember({"foc", "dtc"}));
  simulate->add_option("--speed", sim_speed, "Override speed reference, rpm");
  simulate->add_option("--load-torque", sim_load,
                       "Override: constant load torque, N*m");
  simulate->add_option("--out", sim_out,
                       "Trace CSV path (summary and effective config are "
                       "written next to it)");

  // compare
  std::string cmp_a, cmp_b;
  std::optional<std::string> cmp_out;
  CLI::App* cmp = app.add_subcommand(
      "compare", "Compare a foc run against a dtc run of the same scenario");
  cmp->add_option("--a", cmp_a, "First run (.summary, or .csv with sibling summary)")
      ->required();
  cmp->add_option("--b", cmp_b, "Second run")->required();
  cmp->add_option("--out", cmp_out, "Write report to <prefix>.txt and <prefix>.kv");

  // replicate-paper
  std::string bench_dir;
  std::optional<std::string> bench_config;
  CLI::App* bench = app.add_subcommand(
      "replicate-paper",
      "Run the built-in four-scenario benchmark (foc/dtc, unloaded and with "
      "a 10 N*m step) and write comparison reports");
  bench->add_option("--out-dir", bench_dir, "Output directory")->required();
  bench->add_option("--config", bench_config,
                    "Base config for motor and controller tuning");

  try {
    app.parse(argc, argv);
    if (simulate->parsed()) {
      return run_simulate(sim_config, sim_controller, sim_speed, sim_load,
                          sim_out);
    }
    if (cmp->parsed()) return run_compare(cmp_a, cmp_b, cmp_out);
    if (bench->parsed()) return run_benchmark(bench_dir, bench_config);
    return 1;
  } catch (const CLI::ParseError& e) {
    return app.exit(e);  // 0 for --help, non-zero for bad arguments
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
