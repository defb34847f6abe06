#include "fvpg/spaces.hpp"

#include <array>
#include <string>

#include "fvpg/errors.hpp"
#include "fvpg/parallel.hpp"

namespace fvpg {

Vec2 eval_local_basis(const Triangulation& t, int k, int i, Vec2 x, bool strict) {
  if (strict && !t.cell_contains(k, x))
    throw PointOutsideCell(k, "point (" + std::to_string(x.x) + "," +
                                  std::to_string(x.y) + ") is outside cell " +
                                  std::to_string(k));
  const Vec2 w = t.vertex(t.cell(k)[i]);
  return (x - w) / (2.0 * t.geometry(k).area);
}

Vec2 rt_eval(const RTField& p, int k, Vec2 x, bool strict) {
  const Triangulation& t = *p.mesh;
  if (strict && !t.cell_contains(k, x))
    throw PointOutsideCell(k, "point (" + std::to_string(x.x) + "," +
                                  std::to_string(x.y) + ") is outside cell " +
                                  std::to_string(k));
  const double inv2a = 1.0 / (2.0 * t.geometry(k).area);
  Vec2 v{0.0, 0.0};
  for (int i = 0; i < 3; ++i) {
    const Vec2 w = t.vertex(t.cell(k)[i]);
    v = v + p.local_flux(k, i) * inv2a * (x - w);
  }
  return v;
}

P0Field divergence(const RTField& p) {
  const Triangulation& t = *p.mesh;
  P0Field d(t);
  parallel_for(t.cell_count(), [&](std::ptrdiff_t k) {
    d.value[k] = (p.local_flux(k, 0) + p.local_flux(k, 1) + p.local_flux(k, 2)) /
                 t.geometry(k).area;
  });
  return d;
}

namespace {

double cell_average(const Triangulation& t, int k, const ScalarFn& u,
                    const TriangleQuadrature& quad) {
  const auto& tri = t.cell(k);
  const Vec2 a0 = t.vertex(tri[0]);
  const Vec2 a1 = t.vertex(tri[1]);
  const Vec2 a2 = t.vertex(tri[2]);
  double s = 0.0;
  for (std::size_t i = 0; i < quad.size(); ++i)
    s += quad.weights[i] * u(bary_point(quad.points[i], a0, a1, a2));
  return s;  // weights are relative to the cell measure, so this is the mean
}

double edge_flux(const Triangulation& t, int a, const VectorFn& p) {
  const Edge& e = t.edge(a);
  const Vec2 s = t.vertex(e.s);
  const Vec2 n = t.vertex(e.n);
  return integrate_segment(s, n, [&](Vec2 x) { return dot(p(x), e.normal); });
}

}  // namespace

P0Field interp_p0(const Triangulation& t, const ScalarFn& u,
                  const TriangleQuadrature& quad) {
  P0Field out(t);
  parallel_for(t.cell_count(),
               [&](std::ptrdiff_t k) { out.value[k] = cell_average(t, k, u, quad); });
  return out;
}

P0Field interp_p0(const Triangulation& t, const ScalarFn& u) {
  return interp_p0(t, u, TriangleQuadrature::degree4());
}

P0Field interp_p0_serial(const Triangulation& t, const ScalarFn& u) {
  const TriangleQuadrature quad = TriangleQuadrature::degree4();
  P0Field out(t);
  for (int k = 0; k < t.cell_count(); ++k)
    out.value[k] = cell_average(t, k, u, quad);
  return out;
}

RTField interp_rt(const Triangulation& t, const VectorFn& p) {
  RTField out(t);
  parallel_for(t.edge_count(),
               [&](std::ptrdiff_t a) { out.flux[a] = edge_flux(t, static_cast<int>(a), p); });
  return out;
}

RTField interp_rt_serial(const Triangulation& t, const VectorFn& p) {
  RTField out(t);
  for (int a = 0; a < t.edge_count(); ++a) out.flux[a] = edge_flux(t, a, p);
  return out;
}

namespace {

// 3x3 cell Gram block m_ij = \int_K phi_{K,i} . phi_{K,j} dx by the midpoint
// rule, which is exact for this quadratic integrand.
std::array<double, 9> local_mass(const Triangulation& t, int k,
                                 const TriangleQuadrature& mid) {
  const auto& tri = t.cell(k);
  const Vec2 v0 = t.vertex(tri[0]);
  const Vec2 v1 = t.vertex(tri[1]);
  const Vec2 v2 = t.vertex(tri[2]);
  const double area = t.geometry(k).area;
  const double inv2a = 1.0 / (2.0 * area);

  std::array<double, 9> m{};
  for (std::size_t q = 0; q < mid.size(); ++q) {
    const Vec2 x = bary_point(mid.points[q], v0, v1, v2);
    const Vec2 phi[3] = {inv2a * (x - v0), inv2a * (x - v1), inv2a * (x - v2)};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        m[3 * i + j] += mid.weights[q] * area * dot(phi[i], phi[j]);
  }
  return m;
}

SparseMatrix merge_mass(const Triangulation& t,
                        const std::vector<std::array<double, 9>>& blocks) {
  std::vector<SparseMatrix::Triplet> trip;
  trip.reserve(9 * blocks.size());
  for (int k = 0; k < t.cell_count(); ++k) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double v = t.cell_edge_sign(k, i) * t.cell_edge_sign(k, j) *
                         blocks[k][3 * i + j];
        trip.push_back({t.cell_edge(k, i), t.cell_edge(k, j), v});
      }
    }
  }
  return SparseMatrix::from_triplets(t.edge_count(), std::move(trip));
}

}  // namespace

SparseMatrix rt_mass_matrix(const Triangulation& t) {
  const TriangleQuadrature mid = TriangleQuadrature::midpoint();
  std::vector<std::array<double, 9>> blocks(t.cell_count());
  parallel_for(t.cell_count(), [&](std::ptrdiff_t k) {
    blocks[k] = local_mass(t, static_cast<int>(k), mid);
  });
  return merge_mass(t, blocks);
}

SparseMatrix rt_mass_matrix_serial(const Triangulation& t) {
  const TriangleQuadrature mid = TriangleQuadrature::midpoint();
  std::vector<std::array<double, 9>> blocks(t.cell_count());
  for (int k = 0; k < t.cell_count(); ++k) blocks[k] = local_mass(t, k, mid);
  return merge_mass(t, blocks);
}

}  // namespace fvpg
