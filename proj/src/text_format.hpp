#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "drivesim/errors.hpp"

// Internal text helpers shared by the config, summary and CSV writers.
// Everything is plain "C" locale formatting so output is host-independent.

namespace drivesim::textfmt {

// Enough digits to reproduce the exact double on re-parse.
inline std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Trace precision: 9 significant digits.
inline std::string g9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

inline std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    if (next == std::string::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
}

inline double parse_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  if (!t.empty()) {
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() + t.size()) return v;
  }
  throw ConfigError(what + ": expected a number, got '" + text + "'");
}

inline long long parse_int(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  if (!t.empty()) {
    char* end = nullptr;
    const long long v = std::strtoll(t.c_str(), &end, 10);
    if (end == t.c_str() + t.size()) return v;
  }
  throw ConfigError(what + ": expected an integer, got '" + text + "'");
}

}  // namespace drivesim::textfmt
