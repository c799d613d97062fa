#include "drivesim/csv.hpp"

#include <cmath>
#include <fstream>

#include "drivesim/errors.hpp"
#include "text_format.hpp"

namespace drivesim {

const char* const kTraceCsvHeader =
    "t,omega_m,T_e,T_load,lambda,i_a,i_b,i_c,s_a,s_b,s_c,f_sw";

std::string trace_to_csv(const std::vector<TraceRow>& trace) {
  std::string out;
  out.reserve(trace.size() * 96 + 64);
  out += kTraceCsvHeader;
  out += '\n';
  for (const TraceRow& r : trace) {
    out += textfmt::g9(r.t);
    out += ',';
    out += textfmt::g9(r.omega_m);
    out += ',';
    out += textfmt::g9(r.T_e);
    out += ',';
    out += textfmt::g9(r.T_load);
    out += ',';
    out += textfmt::g9(r.lambda);
    out += ',';
    out += textfmt::g9(r.i_a);
    out += ',';
    out += textfmt::g9(r.i_b);
    out += ',';
    out += textfmt::g9(r.i_c);
    out += ',';
    out += r.s_a ? '1' : '0';
    out += ',';
    out += r.s_b ? '1' : '0';
    out += ',';
    out += r.s_c ? '1' : '0';
    out += ',';
    // No completed window yet: the field stays empty rather than faking 0 Hz.
    if (!std::isnan(r.f_sw)) out += textfmt::g9(r.f_sw);
    out += '\n';
  }
  return out;
}

void export_csv(const std::vector<TraceRow>& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  const std::string text = trace_to_csv(trace);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("short write to '" + path + "'");
}

std::vector<TraceRow> parse_trace_csv(const std::string& text) {
  const std::vector<std::string> lines = textfmt::split(text, '\n');
  if (lines.empty() || textfmt::trim(lines[0]) != kTraceCsvHeader) {
    throw ConfigError("csv: missing or wrong header row");
  }
  std::vector<TraceRow> out;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    const std::string line = textfmt::trim(lines[n]);
    if (line.empty()) continue;
    const std::vector<std::string> f = textfmt::split(line, ',');
    if (f.size() != 12) {
      throw ConfigError("csv row " + std::to_string(n) + ": expected 12 columns, got " +
                        std::to_string(f.size()));
    }
    TraceRow r;
    r.t = textfmt::parse_double(f[0], "csv t");
    r.omega_m = textfmt::parse_double(f[1], "csv omega_m");
    r.T_e = textfmt::parse_double(f[2], "csv T_e");
    r.T_load = textfmt::parse_double(f[3], "csv T_load");
    r.lambda = textfmt::parse_double(f[4], "csv lambda");
    r.i_a = textfmt::parse_double(f[5], "csv i_a");
    r.i_b = textfmt::parse_double(f[6], "csv i_b");
    r.i_c = textfmt::parse_double(f[7], "csv i_c");
    r.s_a = static_cast<int>(textfmt::parse_int(f[8], "csv s_a"));
    r.s_b = static_cast<int>(textfmt::parse_int(f[9], "csv s_b"));
    r.s_c = static_cast<int>(textfmt::parse_int(f[10], "csv s_c"));
    const std::string fsw = textfmt::trim(f[11]);
    r.f_sw = fsw.empty() ? std::nan("") : textfmt::parse_double(fsw, "csv f_sw");
    out.push_back(r);
  }
  return out;
}

std::vector<TraceRow> import_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_trace_csv(text);
}

}  // namespace drivesim
