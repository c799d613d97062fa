#pragma once

#include <string>
#include <vector>

#include "drivesim/scenario.hpp"

namespace drivesim {

// Trace CSV schema, one column per TraceRow field in declaration order:
//   t,omega_m,T_e,T_load,lambda,i_a,i_b,i_c,s_a,s_b,s_c,f_sw
// Floats carry 9 significant digits, switch states are 0/1 integers, and a
// NaN f_sw (no completed window yet) is written as an empty field. Output is
// byte-deterministic for a given trace.
extern const char* const kTraceCsvHeader;

std::string trace_to_csv(const std::vector<TraceRow>& trace);

// Throws IoError on I/O failure.
void export_csv(const std::vector<TraceRow>& trace, const std::string& path);

// Strict parse of the schema above; used by tests and `compare` on raw
// traces. Throws ConfigError on malformed input.
std::vector<TraceRow> parse_trace_csv(const std::string& text);
std::vector<TraceRow> import_csv(const std::string& path);

}  // namespace drivesim
