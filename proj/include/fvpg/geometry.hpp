#ifndef FVPG_GEOMETRY_HPP
#define FVPG_GEOMETRY_HPP

#include <cmath>

namespace fvpg {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
inline Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

/// sqrt(x^2 + y^2). Plain sqrt(dot) rather than hypot: IEEE sqrt commutes
/// with scaling by powers of four, so halving a vector exactly halves its
/// norm, which the refinement contract relies on. Over/underflow is not a
/// concern at mesh coordinate scales.
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

/// Rotates a by -90 degrees; det[perp(a), a] = |a|^2 > 0.
inline Vec2 perp(Vec2 a) { return {a.y, -a.x}; }

inline Vec2 midpoint(Vec2 a, Vec2 b) { return {(a.x + b.x) / 2.0, (a.y + b.y) / 2.0}; }

/// Signed area of triangle (a, b, c); positive when counter-clockwise.
inline double signed_area(Vec2 a, Vec2 b, Vec2 c) {
  return 0.5 * cross(b - a, c - a);
}

/// Interior angle at vertex w of the triangle (w, p, q), in (0, pi).
inline double angle_at(Vec2 w, Vec2 p, Vec2 q) {
  const Vec2 u = p - w;
  const Vec2 v = q - w;
  return std::atan2(std::fabs(cross(u, v)), dot(u, v));
}

/// Cotangent of the angle at w, computed from the dot/cross ratio.
/// Avoids the trig round trip; exact up to one rounding each for dot and cross.
inline double cot_at(Vec2 w, Vec2 p, Vec2 q) {
  const Vec2 u = p - w;
  const Vec2 v = q - w;
  return dot(u, v) / std::fabs(cross(u, v));
}

/// Circumcenter of triangle (a, b, c); the triangle must be non-degenerate.
inline Vec2 circumcenter(Vec2 a, Vec2 b, Vec2 c) {
  const Vec2 u = b - a;
  const Vec2 v = c - a;
  const double d = 2.0 * cross(u, v);
  const double u2 = dot(u, u);
  const double v2 = dot(v, v);
  return {a.x + (v.y * u2 - u.y * v2) / d, a.y + (u.x * v2 - v.x * u2) / d};
}

}  // namespace fvpg

#endif
