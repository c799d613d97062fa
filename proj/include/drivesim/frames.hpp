#pragma once

#include <cmath>

// Stationary-frame vector type and the Clarke transform pair.
// Amplitude-invariant scaling throughout: a balanced sinusoidal triple of
// peak X maps to an alpha/beta vector of magnitude X, and three-phase power
// is (3/2)*(v . i) in this frame.

namespace drivesim {

inline constexpr double kSqrt3 = 1.7320508075688772935;
inline constexpr double kTwoPi = 6.2831853071795864769;

struct AlphaBeta {
  double alpha = 0.0;
  double beta = 0.0;

  friend AlphaBeta operator+(const AlphaBeta& u, const AlphaBeta& v) {
    return {u.alpha + v.alpha, u.beta + v.beta};
  }
  friend AlphaBeta operator-(const AlphaBeta& u, const AlphaBeta& v) {
    return {u.alpha - v.alpha, u.beta - v.beta};
  }
  friend AlphaBeta operator*(double s, const AlphaBeta& v) {
    return {s * v.alpha, s * v.beta};
  }
  double norm() const { return std::hypot(alpha, beta); }
};

inline double dot(const AlphaBeta& u, const AlphaBeta& v) {
  return u.alpha * v.alpha + u.beta * v.beta;
}

// z-component of u x v; positive when v leads u counter-clockwise.
inline double cross(const AlphaBeta& u, const AlphaBeta& v) {
  return u.alpha * v.beta - u.beta * v.alpha;
}

struct PhaseTriple {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

// Zero-sequence content is discarded: clarke(a,b,c) only sees the balanced
// part. inverse_clarke reconstructs a zero-sum triple exactly.
inline AlphaBeta clarke(double a, double b, double c) {
  return {(2.0 / 3.0) * (a - 0.5 * b - 0.5 * c), (b - c) / kSqrt3};
}

inline AlphaBeta clarke(const PhaseTriple& p) { return clarke(p.a, p.b, p.c); }

inline PhaseTriple inverse_clarke(const AlphaBeta& v) {
  const double h = 0.5 * v.alpha;
  const double s = 0.5 * kSqrt3 * v.beta;
  return {v.alpha, -h + s, -h - s};
}

// Wraps an angle to [0, 2*pi).
inline double wrap_angle(double theta) {
  double w = std::fmod(theta, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w;
}

}  // namespace drivesim
