#include "drivesim/dtc.hpp"

#include <cmath>
#include <string>

#include "drivesim/errors.hpp"

namespace drivesim {

namespace {

void require(bool ok, const char* field, const char* why) {
  if (!ok) throw ConfigError(std::string("dtc.") + field + ": " + why);
}

int wrap_sector(int k) { return (k - 1 + 12) % 6 + 1; }

}  // namespace

void DtcConfig::validate() const {
  require(std::isfinite(flux_ref) && flux_ref > 0.0, "flux_ref",
          "must be finite and > 0");
  require(std::isfinite(torque_band) && torque_band > 0.0, "torque_band",
          "must be finite and > 0");
  require(std::isfinite(flux_band) && flux_band > 0.0, "flux_band",
          "must be finite and > 0");
  require(flux_band < flux_ref, "flux_band", "must be smaller than flux_ref");
  require(std::isfinite(ctrl_period) && ctrl_period > 0.0, "ctrl_period",
          "must be finite and > 0");
}

AlphaBeta estimate_flux(const AlphaBeta& prev_flux, const AlphaBeta& v,
                        const AlphaBeta& i, double R_s, double dt) {
  return prev_flux + dt * (v - R_s * i);
}

double estimate_torque(const AlphaBeta& flux, const AlphaBeta& current,
                       int pole_pairs) {
  return 1.5 * static_cast<double>(pole_pairs) * cross(flux, current);
}

int flux_sector(const AlphaBeta& flux) {
  if (flux.alpha == 0.0 && flux.beta == 0.0) {
    throw ConfigError("flux_sector: undefined for zero flux vector");
  }
  // atan2 gives (-pi, pi]; shift by 30 deg so sector boundaries land on
  // multiples of 60 deg, then floor. Sector 1 spans [-30, +30) deg.
  const double angle = std::atan2(flux.beta, flux.alpha);
  const double shifted = wrap_angle(angle + kTwoPi / 12.0);
  int k = static_cast<int>(std::floor(shifted / (kTwoPi / 6.0)));
  if (k > 5) k = 5;  // wrap_angle can return just under 2*pi
  return k + 1;
}

int flux_comparator(double error, int previous, double band) {
  if (error > band) return 1;
  if (error < -band) return 0;
  return previous;
}

int torque_comparator(double error, int previous, double band) {
  if (error > band) return 1;
  if (error < -band) return -1;
  if (std::fabs(error) < 0.5 * band) return 0;
  return previous;
}

SwitchState select_vector(int flux_demand, int torque_demand, int sector,
                          const SwitchState& previous) {
  if (sector < 1 || sector > 6) {
    throw ConfigError("select_vector: sector out of range: " +
                      std::to_string(sector));
  }
  if (flux_demand != 0 && flux_demand != 1) {
    throw ConfigError("select_vector: flux demand must be 0 or 1, got " +
                      std::to_string(flux_demand));
  }
  if (torque_demand < -1 || torque_demand > 1) {
    throw ConfigError("select_vector: torque demand must be -1, 0, or 1, got " +
                      std::to_string(torque_demand));
  }
  if (torque_demand == 0) {
    // Coast on whichever zero vector disturbs fewest legs.
    const int to_v0 = leg_transitions(previous, switch_state_of(0));
    const int to_v7 = leg_transitions(previous, switch_state_of(7));
    return switch_state_of(to_v7 < to_v0 ? 7 : 0);
  }
  // Flux up: neighbours of the sector vector. Flux down: vectors two steps
  // away, whose radial component opposes the flux.
  const int ahead = (flux_demand != 0) ? 1 : 2;
  const int offset = (torque_demand > 0) ? ahead : -ahead;
  return switch_state_of(wrap_sector(sector + offset));
}

DtcController::DtcController(const DtcConfig& cfg, const MotorParams& params)
    : cfg_(cfg), R_s_(params.R_s), pole_pairs_(params.pole_pairs) {
  cfg_.validate();
  params.validate();
}

SwitchState DtcController::step(const AlphaBeta& voltage,
                                const AlphaBeta& current, double torque_ref) {
  estimate_.flux =
      estimate_flux(estimate_.flux, voltage, current, R_s_, cfg_.ctrl_period);
  estimate_.magnitude = estimate_.flux.norm();
  estimate_.torque = estimate_torque(estimate_.flux, current, pole_pairs_);

  if (estimate_.magnitude < 0.1 * cfg_.flux_ref) {
    // Cold start: no usable flux angle yet. Drive flux up in sector 1 until
    // the estimate is worth trusting.
    flux_demand_ = 1;
    estimate_.sector = 1;
    estimate_.angle = 0.0;
  } else {
    estimate_.angle = std::atan2(estimate_.flux.beta, estimate_.flux.alpha);
    estimate_.sector = flux_sector(estimate_.flux);
    flux_demand_ = flux_comparator(cfg_.flux_ref - estimate_.magnitude,
                                   flux_demand_, cfg_.flux_band);
  }
  torque_demand_ = torque_comparator(torque_ref - estimate_.torque,
                                     torque_demand_, cfg_.torque_band);

  applied_ =
      select_vector(flux_demand_, torque_demand_, estimate_.sector, applied_);
  return applied_;
}

}  // namespace drivesim
