#ifndef FVPG_QUADRATURE_HPP
#define FVPG_QUADRATURE_HPP

#include <array>
#include <vector>

#include "fvpg/geometry.hpp"

namespace fvpg {

/// Quadrature rule on a triangle, stored in barycentric coordinates with
/// weights relative to the cell measure (weights sum to 1).
struct TriangleQuadrature {
  int degree = 0;  // every polynomial of total degree <= degree is integrated exactly
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }

  /// 1-point centroid rule, degree 1.
  static TriangleQuadrature centroid();
  /// 3-point edge-midpoint rule, degree 2.
  static TriangleQuadrature midpoint();
  /// 6-point symmetric rule, degree 4.
  static TriangleQuadrature degree4();
  /// Smallest shipped rule with exactness >= d.
  static TriangleQuadrature of_degree(int d);
};

/// Physical quadrature point for barycentric coordinates b on triangle (a0,a1,a2).
inline Vec2 bary_point(const std::array<double, 3>& b, Vec2 a0, Vec2 a1, Vec2 a2) {
  return {b[0] * a0.x + b[1] * a1.x + b[2] * a2.x,
          b[0] * a0.y + b[1] * a1.y + b[2] * a2.y};
}

/// Integrates f over the triangle (a0,a1,a2) with the given area.
template <class F>
double integrate_triangle(const TriangleQuadrature& q, Vec2 a0, Vec2 a1, Vec2 a2,
                          double area, F&& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    s += q.weights[i] * f(bary_point(q.points[i], a0, a1, a2));
  }
  return area * s;
}

/// Two-point Gauss rule on a segment; exact for polynomials of degree 3.
/// Parameters are the positions on [0,1] and the matching weights (sum 1).
struct SegmentGauss2 {
  static constexpr double t0 = 0.21132486540518712;  // 1/2 - 1/(2*sqrt(3))
  static constexpr double t1 = 0.78867513459481288;  // 1/2 + 1/(2*sqrt(3))
  static constexpr double w = 0.5;
};

/// Integrates f along the segment from a to b (arc-length measure).
template <class F>
double integrate_segment(Vec2 a, Vec2 b, F&& f) {
  const double len = norm(b - a);
  const Vec2 p0 = a + SegmentGauss2::t0 * (b - a);
  const Vec2 p1 = a + SegmentGauss2::t1 * (b - a);
  return len * (SegmentGauss2::w * f(p0) + SegmentGauss2::w * f(p1));
}

}  // namespace fvpg

#endif
