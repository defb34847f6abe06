#include "fvpg/quadrature.hpp"

namespace fvpg {

TriangleQuadrature TriangleQuadrature::centroid() {
  TriangleQuadrature q;
  q.degree = 1;
  q.points = {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}};
  q.weights = {1.0};
  return q;
}

TriangleQuadrature TriangleQuadrature::midpoint() {
  TriangleQuadrature q;
  q.degree = 2;
  q.points = {{0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}, {0.5, 0.0, 0.5}};
  q.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  return q;
}

TriangleQuadrature TriangleQuadrature::degree4() {
  // Dunavant's 6-point rule: two symmetric orbits (a, a, 1-2a).
  const double a1 = 0.44594849091596489;
  const double w1 = 0.22338158967801147;
  const double a2 = 0.091576213509770743;
  const double w2 = 0.10995174365532187;
  TriangleQuadrature q;
  q.degree = 4;
  q.points.reserve(6);
  q.weights.reserve(6);
  for (const auto& [a, w] : {std::pair{a1, w1}, std::pair{a2, w2}}) {
    const double c = 1.0 - 2.0 * a;
    q.points.push_back({c, a, a});
    q.points.push_back({a, c, a});
    q.points.push_back({a, a, c});
    q.weights.insert(q.weights.end(), 3, w);
  }
  return q;
}

TriangleQuadrature TriangleQuadrature::of_degree(int d) {
  if (d <= 1) return centroid();
  if (d <= 2) return midpoint();
  return degree4();
}

}  // namespace fvpg
