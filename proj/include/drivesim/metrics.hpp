#pragma once

#include <span>
#include <utility>
#include <vector>

#include "drivesim/frames.hpp"
#include "drivesim/inverter.hpp"

// Switching-frequency and torque-ripple accounting.
//
// Frequency convention, pinned project-wide: one switching cycle of a leg is
// two transitions (off-on plus on-off), so a leg with N transitions inside a
// window of length T_w switched at N / (2 * T_w) Hz. The reported device
// switching frequency is the mean of the three legs.

namespace drivesim {

class SwitchingCounter {
 public:
  explicit SwitchingCounter(double window_length = 0.1, double start_time = 0.0);

  // Attributes the transition to the window containing t, lower edge
  // inclusive. Times must be non-decreasing. Currents are the leg currents
  // at the switching instant, used only by the loss proxy.
  void record_transition(double t, const SwitchState& prev,
                         const SwitchState& next, const PhaseTriple& currents);

  // Closes every window that has fully elapsed by end_time.
  void finish(double end_time);

  struct Window {
    double start = 0.0;
    double length = 0.0;
    long long leg_counts[3] = {0, 0, 0};
    double abs_current_sum = 0.0;  // sum of |i_leg| over transitions

    // Mean of the per-leg frequencies count / (2 * length).
    double frequency() const;
  };

  const std::vector<Window>& completed() const { return completed_; }

  // Frequency of the most recently completed window. Throws ConfigError if
  // no window has completed yet.
  double window_frequency() const;

  double window_length() const { return window_length_; }

 private:
  void roll_to(double t);

  double window_length_;
  double start_time_;
  long long current_index_ = 0;
  Window current_;
  double last_time_;
  std::vector<Window> completed_;
};

// Relative switching-loss figure for a completed window: k * V_dc * sum of
// |i_leg| over that window's transitions. A trend indicator, not joules lost
// in any real device.
double switching_loss_proxy(const SwitchingCounter::Window& window, double v_dc,
                            double k = 1e-6);

struct RippleStats {
  double mean = 0.0;
  double peak_to_peak = 0.0;
  double std_dev = 0.0;  // population
  long long samples = 0;
};

// Stats over samples with t in [t_begin, t_end], inclusive on both edges.
// Throws ConfigError if fewer than two samples land in the window.
RippleStats torque_ripple(std::span<const std::pair<double, double>> samples,
                          double t_begin, double t_end);

}  // namespace drivesim
