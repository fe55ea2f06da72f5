#pragma once

// Small numeric helpers shared across the library.
//
// Conventions:
//   - Angles in radians, lengths in metres, forces in newtons unless a
//     field suffix says otherwise.
//   - Validation helpers throw ValidationError with the offending name.

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "warmbox/errors.hpp"

namespace warmbox {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
inline double norm(Vec3 v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }

inline void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw ValidationError(std::string(name) + " must be finite");
}

inline void require_positive(double v, const char* name) {
  require_finite(v, name);
  if (!(v > 0.0)) throw ValidationError(std::string(name) + " must be > 0");
}

inline void require_non_negative(double v, const char* name) {
  require_finite(v, name);
  if (!(v >= 0.0)) throw ValidationError(std::string(name) + " must be >= 0");
}

inline void require_in_unit(double v, const char* name) {
  require_finite(v, name);
  if (!(v > 0.0 && v <= 1.0)) throw ValidationError(std::string(name) + " must be in (0, 1]");
}

// Wraps into [0, 2*pi).
inline double wrap_two_pi(double a) {
  double r = std::fmod(a, two_pi);
  if (r < 0.0) r += two_pi;
  return r;
}

// Wraps into (-pi, pi].
inline double wrap_pi(double a) {
  double r = std::remainder(a, two_pi);  // [-pi, pi], ties to even
  if (r <= -pi) r += two_pi;
  return r;
}

// Root of a continuous function on [lo, hi] given f(lo) and f(hi) of opposite
// sign. Newton steps safeguarded by bisection; falls back to the bracket
// midpoint whenever the Newton step leaves the bracket or the derivative is
// degenerate. Converges to |hi - lo| <= xtol.
double solve_bracketed(const std::function<double(double)>& f,
                       const std::function<double(double)>& df,
                       double lo, double hi, double xtol);

// Bisection-only variant for when no derivative is available.
double solve_bisect(const std::function<double(double)>& f, double lo, double hi, double xtol);

}  // namespace warmbox
