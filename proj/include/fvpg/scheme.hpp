#ifndef FVPG_SCHEME_HPP
#define FVPG_SCHEME_HPP

#include <string>
#include <vector>

#include "fvpg/cg.hpp"
#include "fvpg/fields.hpp"
#include "fvpg/spaces.hpp"

namespace fvpg {

/// Admissibility threshold for the edge coefficients.
inline constexpr double kCoefficientFloor = 1e-12;

/// The pairing scalars c_a = (phi_a, phi*_a)_0, one per edge. They depend on
/// the mesh geometry only:
///   interior edge  c_a = (cot th_{a,K} + cot th_{a,L}) / 2
///   boundary edge  c_a = cot th_{a,K} / 2
/// where th_{a,K} is the angle of K opposite edge a.
struct EdgeCoefficients {
  const Triangulation* mesh = nullptr;
  std::vector<double> c;

  double operator[](int a) const { return c[a]; }
  int size() const { return static_cast<int>(c.size()); }
};

/// Throws NonPositiveCoefficient (naming the edge and its opposite angles)
/// when some c_a <= kCoefficientFloor, e.g. both opposite angles are pi/2.
EdgeCoefficients edge_coefficients(const Triangulation& t);
EdgeCoefficients edge_coefficients_serial(const Triangulation& t);

/// Discrete gradient of a cell field: per edge,
///   interior, coboundary (K,L):  p_a = (u_L - u_K) / c_a
///   boundary, coboundary (K):    p_a = -u_K / c_a
/// The boundary formula encodes the homogeneous Dirichlet condition.
RTField discrete_gradient(const P0Field& u, const EdgeCoefficients& c);

/// Projection of the source term onto P0 (cell averages, degree-4 rule).
P0Field project_rhs(const Triangulation& t, const ScalarFn& f);

/// Cell system of the finite-volume form: A_{KK} = sum_{a in dK} 1/c_a,
/// A_{KL} = -1/c_a for neighbors, plus the |K| weights for the right side
/// b_K = |K| f_K. A is symmetric positive definite.
struct CellSystem {
  SparseMatrix matrix;
  std::vector<double> cell_measure;
};
CellSystem assemble_system(const Triangulation& t, const EdgeCoefficients& c);

struct PoissonSolution {
  P0Field u;
  RTField p;  ///< p = discrete gradient of u
  int iterations = 0;
  double residual = 0.0;             ///< CG relative residual
  double structural_residual = 0.0;  ///< ||div p + f_T||_0 / ||f_T||_0
};

/// Solves -div(grad_T u) = f_T with homogeneous Dirichlet data and recovers
/// the flux field. Requires every c_a > 0 (strictly acute meshes qualify).
PoissonSolution solve_poisson(const Triangulation& t, const ScalarFn& f,
                              double tol = 1e-10, int max_iter = 0);

/// Max relative difference over the edges between 1/c_a and the two-point
/// transmissivity |a| / (d_K + d_L) built from circumcenter distances to the
/// edge line (|a| / d_K on the boundary). Throws NonPositiveCoefficient for
/// degenerate geometry (d_K + d_L below 1e-14 of the edge length).
double vf4_transmissivity_check(const Triangulation& t);

/// Residual of the discrete adjointness identity
///   sum_K |K| u_K (div p)_K + sum_a c_a (grad_T u)_a p_a = 0,
/// normalized by the sum of the absolute terms. Vanishes identically.
double discrete_green_check(const Triangulation& t, const EdgeCoefficients& c,
                            const P0Field& u, const RTField& p);

/// Diagnostic: row sums of the RT mass matrix against c_a per edge.
struct LumpedMassRow {
  int edge;
  double c;
  double row_sum;
  double rel_diff;  ///< (row_sum - c) / c
};
std::vector<LumpedMassRow> lumped_mass_check(const Triangulation& t);
std::string lumped_mass_csv(const std::vector<LumpedMassRow>& rows);

}  // namespace fvpg

#endif
