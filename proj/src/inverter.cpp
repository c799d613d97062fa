#include "drivesim/inverter.hpp"

#include <string>

#include "drivesim/errors.hpp"

namespace drivesim {

namespace {

// Indexed by vector id; V1..V6 are 60 deg apart starting on +alpha.
constexpr bool kLegTable[8][3] = {
    {false, false, false},  // V0
    {true, false, false},   // V1
    {true, true, false},    // V2
    {false, true, false},   // V3
    {false, true, true},    // V4
    {false, false, true},   // V5
    {true, false, true},    // V6
    {true, true, true},     // V7
};

// Inverse of kLegTable with legs packed as a<<2 | b<<1 | c.
constexpr int kIdFromBits[8] = {0, 5, 3, 4, 1, 6, 2, 7};

}  // namespace

int vector_id(const SwitchState& s) {
  const int bits = (s.a ? 4 : 0) | (s.b ? 2 : 0) | (s.c ? 1 : 0);
  return kIdFromBits[bits];
}

SwitchState switch_state_of(int vector_id) {
  if (vector_id < 0 || vector_id > 7) {
    throw ConfigError("switch_state_of: vector id out of range: " +
                      std::to_string(vector_id));
  }
  return {kLegTable[vector_id][0], kLegTable[vector_id][1],
          kLegTable[vector_id][2]};
}

AlphaBeta output_voltage(const SwitchState& s, double v_dc) {
  const double sa = s.a ? 1.0 : 0.0;
  const double sb = s.b ? 1.0 : 0.0;
  const double sc = s.c ? 1.0 : 0.0;
  const double third = v_dc / 3.0;
  // Phase-to-neutral voltages of an isolated-neutral load; they always sum
  // to zero, so the Clarke projection loses nothing.
  const double va = third * (2.0 * sa - sb - sc);
  const double vb = third * (2.0 * sb - sc - sa);
  const double vc = third * (2.0 * sc - sa - sb);
  return clarke(va, vb, vc);
}

int leg_transitions(const SwitchState& from, const SwitchState& to) {
  return (from.a != to.a) + (from.b != to.b) + (from.c != to.c);
}

}  // namespace drivesim
