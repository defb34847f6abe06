#include "fvpg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <utility>

#include "fvpg/errors.hpp"

namespace fvpg {

namespace {

struct EdgeUse {
  int cell;
  int local;    // local index i of the opposite vertex, a = a_{K,i}
  bool forward; // cell traverses the edge min->max in its CCW loop
};

std::string vertex_pair(int a, int b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

}  // namespace

Triangulation Triangulation::build(std::vector<Vec2> vertices,
                                   std::vector<std::array<int, 3>> triangles) {
  if (triangles.empty()) throw NonConformingMesh("mesh has no triangles");
  const int nv = static_cast<int>(vertices.size());

  for (int v = 0; v < nv; ++v)
    if (!std::isfinite(vertices[v].x) || !std::isfinite(vertices[v].y))
      throw NonConformingMesh("vertex " + std::to_string(v) +
                              " has non-finite coordinates");

  // Scale-invariant degeneracy threshold from the bounding box diagonal.
  double xmin = std::numeric_limits<double>::max(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const Vec2& v : vertices) {
    xmin = std::min(xmin, v.x);
    xmax = std::max(xmax, v.x);
    ymin = std::min(ymin, v.y);
    ymax = std::max(ymax, v.y);
  }
  const double diag2 = (xmax - xmin) * (xmax - xmin) + (ymax - ymin) * (ymax - ymin);
  const double area_eps = 1e-14 * diag2;

  std::map<std::array<int, 3>, int> seen;
  for (std::size_t k = 0; k < triangles.size(); ++k) {
    auto& tri = triangles[k];
    for (int idx : tri) {
      if (idx < 0 || idx >= nv)
        throw NonConformingMesh("triangle " + std::to_string(k) +
                                " references vertex " + std::to_string(idx) +
                                " out of range");
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      throw DegenerateTriangle(static_cast<int>(k),
                               "triangle " + std::to_string(k) + " repeats a vertex");

    const double sa = signed_area(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]);
    if (std::fabs(sa) <= area_eps)
      throw DegenerateTriangle(static_cast<int>(k),
                               "triangle " + std::to_string(k) + " has area " +
                                   std::to_string(std::fabs(sa)) +
                                   " below the degeneracy threshold");
    if (sa < 0.0) std::swap(tri[1], tri[2]);  // re-orient CCW

    std::array<int, 3> key = tri;
    std::sort(key.begin(), key.end());
    if (const auto [it, inserted] = seen.emplace(key, static_cast<int>(k)); !inserted)
      throw DuplicateTriangle(static_cast<int>(k),
                              "triangles " + std::to_string(it->second) + " and " +
                                  std::to_string(k) + " share the same vertex set");
  }

  // Gather edge uses keyed by (min, max) endpoint pair. The key order is the
  // deterministic edge ordering.
  std::map<std::pair<int, int>, std::vector<EdgeUse>> uses;
  for (std::size_t k = 0; k < triangles.size(); ++k) {
    const auto& tri = triangles[k];
    for (int i = 0; i < 3; ++i) {
      // a_{K,i} is opposite vertex i: traversed (v_{i+1} -> v_{i+2}) in CCW order.
      const int p = tri[(i + 1) % 3];
      const int q = tri[(i + 2) % 3];
      const std::pair<int, int> key{std::min(p, q), std::max(p, q)};
      auto& u = uses[key];
      if (u.size() >= 2)
        throw NonConformingMesh("edge " + vertex_pair(key.first, key.second) +
                                " is shared by more than two triangles");
      u.push_back({static_cast<int>(k), i, p == key.first});
    }
  }

  Triangulation t;
  t.vertices_ = std::move(vertices);
  t.cells_ = std::move(triangles);
  t.cell_edges_.assign(t.cells_.size(), {-1, -1, -1});
  t.cell_edge_signs_.assign(t.cells_.size(), {0, 0, 0});
  t.edges_.reserve(uses.size());

  for (const auto& [key, u] : uses) {
    Edge e;
    e.s = key.first;
    e.n = key.second;
    const int id = static_cast<int>(t.edges_.size());

    if (u.size() == 2) {
      if (u[0].forward == u[1].forward)
        throw NonConformingMesh("edge " + vertex_pair(e.s, e.n) +
                                " is traversed twice in the same direction");
      // The cell traversing s->n in CCW order has the s->n normal outward: it is K.
      const EdgeUse& first = u[0].forward ? u[0] : u[1];
      const EdgeUse& second = u[0].forward ? u[1] : u[0];
      e.cell = {first.cell, second.cell};
      e.opposite_vertex = {t.cells_[first.cell][first.local],
                           t.cells_[second.cell][second.local]};
      t.cell_edges_[first.cell][first.local] = id;
      t.cell_edges_[second.cell][second.local] = id;
      t.cell_edge_signs_[first.cell][first.local] = +1;
      t.cell_edge_signs_[second.cell][second.local] = -1;
      ++t.interior_edges_;
    } else {
      // Boundary: orient so the normal points out of the domain, i.e. the
      // unique cell must traverse s->n. Swap endpoints otherwise.
      if (!u[0].forward) std::swap(e.s, e.n);
      e.cell = {u[0].cell, -1};
      e.opposite_vertex = {t.cells_[u[0].cell][u[0].local], -1};
      t.cell_edges_[u[0].cell][u[0].local] = id;
      t.cell_edge_signs_[u[0].cell][u[0].local] = +1;
    }

    const Vec2 tangent = t.vertices_[e.n] - t.vertices_[e.s];
    e.length = norm(tangent);
    e.normal = perp(tangent) / e.length;
    for (int side = 0; side < 2; ++side) {
      if (e.cell[side] < 0) break;
      const Vec2 w = t.vertices_[e.opposite_vertex[side]];
      const Vec2 p = t.vertices_[e.s];
      const Vec2 q = t.vertices_[e.n];
      e.opposite_angle[side] = angle_at(w, p, q);
      e.opposite_cot[side] = cot_at(w, p, q);
    }
    t.edges_.push_back(e);
  }

  // Hanging vertices / open fans, detected topologically. For every vertex:
  // an interior vertex (no incident boundary edge) must have as many incident
  // edges as incident triangles; a boundary vertex must have exactly two
  // incident boundary edges and one edge more than triangles.
  std::vector<int> v_edges(t.vertices_.size(), 0);
  std::vector<int> v_bedges(t.vertices_.size(), 0);
  std::vector<int> v_cells(t.vertices_.size(), 0);
  for (const Edge& e : t.edges_) {
    ++v_edges[e.s];
    ++v_edges[e.n];
    if (e.boundary()) {
      ++v_bedges[e.s];
      ++v_bedges[e.n];
    }
  }
  for (const auto& tri : t.cells_)
    for (int v : tri) ++v_cells[v];
  for (int v = 0; v < t.vertex_count(); ++v) {
    if (v_cells[v] == 0)
      throw NonConformingMesh("vertex " + std::to_string(v) +
                              " is not used by any triangle");
    if (v_bedges[v] == 0) {
      if (v_edges[v] != v_cells[v])
        throw NonConformingMesh("interior vertex " + std::to_string(v) +
                                " is not surrounded by a closed fan");
    } else {
      if (v_bedges[v] != 2 || v_edges[v] != v_cells[v] + 1)
        throw NonConformingMesh("boundary vertex " + std::to_string(v) +
                                " has a broken fan");
    }
  }

  // Euler relation for a simply connected domain.
  const int euler = t.vertex_count() - t.edge_count() + t.cell_count();
  if (euler != 1)
    throw NonConformingMesh("mesh is not a simply connected disk (V - E + F = " +
                            std::to_string(euler) + ", expected 1)");

  // Per-cell geometry.
  t.geometry_.resize(t.cells_.size());
  t.mesh_size_ = 0.0;
  t.total_area_ = 0.0;
  for (std::size_t k = 0; k < t.cells_.size(); ++k) {
    const auto& tri = t.cells_[k];
    const Vec2 a = t.vertices_[tri[0]];
    const Vec2 b = t.vertices_[tri[1]];
    const Vec2 c = t.vertices_[tri[2]];
    CellGeometry& g = t.geometry_[k];
    g.area = signed_area(a, b, c);
    g.circumcenter = circumcenter(a, b, c);
    g.angle = {angle_at(a, b, c), angle_at(b, c, a), angle_at(c, a, b)};
    g.diameter = std::max({norm(b - a), norm(c - b), norm(a - c)});
    t.mesh_size_ = std::max(t.mesh_size_, g.diameter);
    t.total_area_ += g.area;
  }
  return t;
}

Vec2 Triangulation::outward_normal(int k, int i) const {
  const Edge& e = edges_[cell_edges_[k][i]];
  const double s = cell_edge_signs_[k][i];
  return s * e.normal;
}

bool Triangulation::cell_contains(int k, Vec2 x, double tol) const {
  const auto& tri = cells_[k];
  const double a2 = 2.0 * geometry_[k].area;
  for (int i = 0; i < 3; ++i) {
    const Vec2 p = vertices_[tri[(i + 1) % 3]];
    const Vec2 q = vertices_[tri[(i + 2) % 3]];
    // Barycentric coordinate of x with respect to vertex i.
    const double lambda = cross(q - p, x - p) / a2;
    if (lambda < -tol) return false;
  }
  return true;
}

Triangulation refine_uniform(const Triangulation& t) {
  std::vector<Vec2> vertices = t.vertices();
  vertices.reserve(vertices.size() + t.edge_count());
  // Midpoint vertex of edge a gets id  vertex_count + a  (deterministic).
  for (int a = 0; a < t.edge_count(); ++a) {
    const Edge& e = t.edge(a);
    vertices.push_back(midpoint(t.vertex(e.s), t.vertex(e.n)));
  }

  std::vector<std::array<int, 3>> children;
  children.reserve(4 * t.cell_count());
  const int nv = t.vertex_count();
  for (int k = 0; k < t.cell_count(); ++k) {
    const auto& tri = t.cell(k);
    const int m0 = nv + t.cell_edge(k, 0);  // midpoint of the edge opposite vertex 0
    const int m1 = nv + t.cell_edge(k, 1);
    const int m2 = nv + t.cell_edge(k, 2);
    children.push_back({tri[0], m2, m1});
    children.push_back({tri[1], m0, m2});
    children.push_back({tri[2], m1, m0});
    children.push_back({m0, m1, m2});
  }
  return Triangulation::build(std::move(vertices), std::move(children));
}

Triangulation gen_equilateral(int levels) {
  Triangulation t = Triangulation::build(
      {{0.0, 0.0}, {1.0, 0.0}, {0.5, std::numbers::sqrt3 / 2.0}}, {{{0, 1, 2}}});
  for (int l = 0; l < levels; ++l) t = refine_uniform(t);
  return t;
}

AngleReport check_angles(const Triangulation& t, double theta_lo, double theta_hi) {
  AngleReport r;
  r.theta_min = std::numeric_limits<double>::max();
  r.theta_max = 0.0;
  for (int k = 0; k < t.cell_count(); ++k) {
    for (int i = 0; i < 3; ++i) {
      const double th = t.geometry(k).angle[i];
      if (th < r.theta_min) {
        r.theta_min = th;
        r.argmin_cell = k;
        r.argmin_corner = i;
      }
      if (th > r.theta_max) {
        r.theta_max = th;
        r.argmax_cell = k;
        r.argmax_corner = i;
      }
    }
  }
  r.within_bounds = theta_lo <= r.theta_min && r.theta_max <= theta_hi;
  r.strictly_acute = r.theta_max < std::numbers::pi / 2.0;
  return r;
}

}  // namespace fvpg
