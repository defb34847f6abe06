#ifndef FVPG_MESH_HPP
#define FVPG_MESH_HPP

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fvpg/geometry.hpp"

namespace fvpg {

/// Oriented mesh edge. The stored direction S -> N and the unit normal
/// satisfy det[normal, N - S] > 0. For an interior edge the normal points
/// from cell[0] to cell[1]; for a boundary edge it points out of the domain
/// and cell[1] is -1.
struct Edge {
  int s = -1;  ///< first endpoint (S_a)
  int n = -1;  ///< second endpoint (N_a)
  Vec2 normal;
  double length = 0.0;
  std::array<int, 2> cell = {-1, -1};
  std::array<int, 2> opposite_vertex = {-1, -1};  ///< vertex of cell[k] opposite this edge
  std::array<double, 2> opposite_angle = {0.0, 0.0};
  std::array<double, 2> opposite_cot = {0.0, 0.0};

  bool boundary() const { return cell[1] < 0; }
};

struct CellGeometry {
  double area = 0.0;
  double diameter = 0.0;
  Vec2 circumcenter;
  std::array<double, 3> angle = {0.0, 0.0, 0.0};  ///< interior angle at vertex i
};

struct AngleReport {
  double theta_min = 0.0;
  double theta_max = 0.0;
  int argmin_cell = -1, argmin_corner = -1;
  int argmax_cell = -1, argmax_corner = -1;
  bool within_bounds = false;  ///< theta_lo <= theta_min and theta_max <= theta_hi
  bool strictly_acute = false; ///< theta_max < pi/2
};

/// Conforming triangulation of a simply connected polygonal domain.
///
/// Construction derives the full edge topology (deterministically ordered by
/// (min, max) endpoint index), per-cell geometry, and per-cell edge incidence
/// with orientation signs. Instances are immutable afterwards and safe to
/// read from any number of threads.
class Triangulation {
 public:
  /// Builds and validates. Triangles given clockwise are re-oriented.
  /// Throws DegenerateTriangle, DuplicateTriangle, or NonConformingMesh.
  static Triangulation build(std::vector<Vec2> vertices,
                             std::vector<std::array<int, 3>> triangles);

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int cell_count() const { return static_cast<int>(cells_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int interior_edge_count() const { return interior_edges_; }
  int boundary_edge_count() const { return edge_count() - interior_edges_; }

  const Vec2& vertex(int v) const { return vertices_[v]; }
  const std::array<int, 3>& cell(int k) const { return cells_[k]; }
  const Edge& edge(int a) const { return edges_[a]; }
  const CellGeometry& geometry(int k) const { return geometry_[k]; }

  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& cells() const { return cells_; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Edge a_{K,i}: the edge of cell k opposite its i-th vertex.
  int cell_edge(int k, int i) const { return cell_edges_[k][i]; }
  /// Sign eps = n_a . n_{K,i} (+1 when the stored edge normal is outward for k).
  int cell_edge_sign(int k, int i) const { return cell_edge_signs_[k][i]; }
  /// Unit normal of edge a_{K,i} pointing out of cell k.
  Vec2 outward_normal(int k, int i) const;

  double mesh_size() const { return mesh_size_; }   ///< h_T, max cell diameter
  double total_area() const { return total_area_; } ///< sum of |K|

  /// True when x lies in cell k up to the given barycentric slack.
  bool cell_contains(int k, Vec2 x, double tol = 1e-12) const;

 private:
  Triangulation() = default;

  std::vector<Vec2> vertices_;
  std::vector<std::array<int, 3>> cells_;
  std::vector<Edge> edges_;
  std::vector<CellGeometry> geometry_;
  std::vector<std::array<int, 3>> cell_edges_;
  std::vector<std::array<signed char, 3>> cell_edge_signs_;
  int interior_edges_ = 0;
  double mesh_size_ = 0.0;
  double total_area_ = 0.0;
};

/// Red refinement: each triangle is split into 4 similar children through
/// its edge midpoints. Parent vertices keep their coordinates; all angles
/// are preserved and the mesh size halves (up to final-bit rounding).
Triangulation refine_uniform(const Triangulation& t);

/// Unit equilateral triangle (0,0), (1,0), (1/2, sqrt(3)/2), red-refined
/// `levels` times: 4^levels cells, every angle pi/3.
Triangulation gen_equilateral(int levels);

/// Min/max interior angle against [theta_lo, theta_hi] plus acuteness flag.
AngleReport check_angles(const Triangulation& t, double theta_lo, double theta_hi);

/// Plain-text mesh format:
///   fvpg-mesh 1
///   vertices N     (then N lines "x y")
///   triangles M    (then M lines "i j k", 0-based)
/// '#' starts a comment; blank lines are ignored.
Triangulation read_mesh(std::string_view text);
Triangulation read_mesh_file(const std::string& path);
std::string write_mesh(const Triangulation& t);
void write_mesh_file(const Triangulation& t, const std::string& path);

}  // namespace fvpg

#endif
