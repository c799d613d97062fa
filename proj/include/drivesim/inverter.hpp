#pragma once

#include "drivesim/frames.hpp"

namespace drivesim {

// One leg state per phase: true = upper device on, phase tied to +V_dc rail.
struct SwitchState {
  bool a = false;
  bool b = false;
  bool c = false;

  friend bool operator==(const SwitchState&, const SwitchState&) = default;
};

// Voltage vector numbering: V0 = (0,0,0), V1 = (1,0,0), V2 = (1,1,0),
// V3 = (0,1,0), V4 = (0,1,1), V5 = (0,0,1), V6 = (1,0,1), V7 = (1,1,1).
// Active vector Vk sits at angle (k-1)*60 deg with magnitude (2/3)*V_dc.
int vector_id(const SwitchState& s);
SwitchState switch_state_of(int vector_id);

// Ideal two-level inverter feeding an isolated-neutral machine:
// v_an = (V_dc/3)*(2*s_a - s_b - s_c), cyclic, then Clarke.
AlphaBeta output_voltage(const SwitchState& s, double v_dc);

// Number of legs that change between two states (0..3).
int leg_transitions(const SwitchState& from, const SwitchState& to);

}  // namespace drivesim
