#pragma once

namespace drivesim {

// Induction machine equivalent-circuit parameters, rotor quantities referred
// to the stator. L_s and L_r are total self inductances (magnetizing plus
// leakage), so the leakage term L_s*L_r - L_m^2 must stay positive.
struct MotorParams {
  double R_s = 7.2;      // stator resistance, ohm
  double R_r = 4.2;      // rotor resistance, ohm
  double L_s = 0.462;    // stator self inductance, H
  double L_r = 0.462;    // rotor self inductance, H
  double L_m = 0.44;     // magnetizing inductance, H
  int pole_pairs = 2;
  double J = 0.012;      // rotor + load inertia, kg*m^2
  double B = 0.001;      // viscous friction, N*m*s/rad
  double V_dc = 540.0;   // inverter DC link, V

  double rated_speed_rpm = 1425.0;
  double rated_torque = 26.8;  // N*m

  // L_s*L_r - L_m^2, the determinant of the flux-to-current map.
  double leakage_det() const { return L_s * L_r - L_m * L_m; }

  // Throws ConfigError naming the offending field.
  void validate() const;
};

}  // namespace drivesim
