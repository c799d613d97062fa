#include "drivesim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "drivesim/errors.hpp"

namespace drivesim {

SwitchingCounter::SwitchingCounter(double window_length, double start_time)
    : window_length_(window_length),
      start_time_(start_time),
      last_time_(start_time) {
  if (!(window_length > 0.0)) {
    throw ConfigError("SwitchingCounter: window length must be > 0");
  }
  current_.start = start_time;
  current_.length = window_length;
}

void SwitchingCounter::roll_to(double t) {
  if (t < last_time_) {
    throw ConfigError("SwitchingCounter: time went backwards");
  }
  last_time_ = t;
  // Close every window whose end lies at or before t. An event exactly on a
  // boundary belongs to the window it opens, so close while end <= t. The
  // boundary is index*length and t usually arrives as a sum of steps; the
  // tolerance absorbs the representation gap between those two paths, and at
  // 1e-9 of a window it is far below any physical event spacing.
  const double tol = 1e-9 * window_length_;
  while (start_time_ + static_cast<double>(current_index_ + 1) * window_length_ <=
         t + tol) {
    completed_.push_back(current_);
    ++current_index_;
    current_ = Window{};
    current_.start = start_time_ + static_cast<double>(current_index_) * window_length_;
    current_.length = window_length_;
  }
}

void SwitchingCounter::record_transition(double t, const SwitchState& prev,
                                         const SwitchState& next,
                                         const PhaseTriple& currents) {
  roll_to(t);
  if (prev.a != next.a) {
    ++current_.leg_counts[0];
    current_.abs_current_sum += std::fabs(currents.a);
  }
  if (prev.b != next.b) {
    ++current_.leg_counts[1];
    current_.abs_current_sum += std::fabs(currents.b);
  }
  if (prev.c != next.c) {
    ++current_.leg_counts[2];
    current_.abs_current_sum += std::fabs(currents.c);
  }
}

void SwitchingCounter::finish(double end_time) { roll_to(end_time); }

double SwitchingCounter::Window::frequency() const {
  // Per-leg frequency counts two transitions as one switching cycle.
  const double denom = 2.0 * length;
  const double fa = static_cast<double>(leg_counts[0]) / denom;
  const double fb = static_cast<double>(leg_counts[1]) / denom;
  const double fc = static_cast<double>(leg_counts[2]) / denom;
  return (fa + fb + fc) / 3.0;
}

double SwitchingCounter::window_frequency() const {
  if (completed_.empty()) {
    throw ConfigError("window_frequency: no completed window yet");
  }
  return completed_.back().frequency();
}

double switching_loss_proxy(const SwitchingCounter::Window& window, double v_dc,
                            double k) {
  return k * v_dc * window.abs_current_sum;
}

RippleStats torque_ripple(std::span<const std::pair<double, double>> samples,
                          double t_begin, double t_end) {
  double sum = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  long long n = 0;
  for (const auto& [t, value] : samples) {
    if (t < t_begin || t > t_end) continue;
    sum += value;
    lo = std::min(lo, value);
    hi = std::max(hi, value);
    ++n;
  }
  if (n < 2) {
    throw ConfigError("torque_ripple: need at least 2 samples in [" +
                      std::to_string(t_begin) + ", " + std::to_string(t_end) +
                      "], got " + std::to_string(n));
  }
  RippleStats stats;
  stats.samples = n;
  stats.mean = sum / static_cast<double>(n);
  stats.peak_to_peak = hi - lo;
  double sq = 0.0;  // second pass keeps the variance well conditioned
  for (const auto& [t, value] : samples) {
    if (t < t_begin || t > t_end) continue;
    const double d = value - stats.mean;
    sq += d * d;
  }
  stats.std_dev = std::sqrt(sq / static_cast<double>(n));
  return stats;
}

}  // namespace drivesim
