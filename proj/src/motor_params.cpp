#include "drivesim/motor_params.hpp"

#include <cmath>
#include <string>

#include "drivesim/errors.hpp"

namespace drivesim {

namespace {

void require(bool ok, const char* field, const std::string& why) {
  if (!ok) throw ConfigError(std::string("motor.") + field + ": " + why);
}

}  // namespace

void MotorParams::validate() const {
  require(std::isfinite(R_s) && R_s > 0.0, "R_s", "must be finite and > 0");
  require(std::isfinite(R_r) && R_r > 0.0, "R_r", "must be finite and > 0");
  require(std::isfinite(L_s) && L_s > 0.0, "L_s", "must be finite and > 0");
  require(std::isfinite(L_r) && L_r > 0.0, "L_r", "must be finite and > 0");
  require(std::isfinite(L_m) && L_m > 0.0, "L_m", "must be finite and > 0");
  require(leakage_det() > 0.0, "L_m",
          "leakage invariant violated: L_s*L_r - L_m^2 must be > 0");
  require(pole_pairs >= 1, "pole_pairs", "must be >= 1");
  require(std::isfinite(J) && J > 0.0, "J", "must be finite and > 0");
  require(std::isfinite(B) && B >= 0.0, "B", "must be finite and >= 0");
  require(std::isfinite(V_dc) && V_dc > 0.0, "V_dc", "must be finite and > 0");
  require(std::isfinite(rated_speed_rpm) && rated_speed_rpm > 0.0,
          "rated_speed_rpm", "must be finite and > 0");
  require(std::isfinite(rated_torque) && rated_torque > 0.0, "rated_torque",
          "must be finite and > 0");
}

}  // namespace drivesim
