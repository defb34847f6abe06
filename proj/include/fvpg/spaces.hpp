#ifndef FVPG_SPACES_HPP
#define FVPG_SPACES_HPP

#include <functional>

#include "fvpg/fields.hpp"
#include "fvpg/quadrature.hpp"
#include "fvpg/sparse.hpp"

namespace fvpg {

using ScalarFn = std::function<double(Vec2)>;
using VectorFn = std::function<Vec2(Vec2)>;

/// Local Raviart-Thomas basis function of cell k attached to the edge
/// opposite vertex i:  phi_{K,i}(x) = (x - W_{K,i}) / (2|K|).
/// Normalized so the flux through a_{K,j} is the Kronecker delta and
/// div phi_{K,i} = 1/|K|. With strict = true, throws PointOutsideCell
/// when x is not in cell k (barycentric slack 1e-12).
Vec2 eval_local_basis(const Triangulation& t, int k, int i, Vec2 x,
                      bool strict = false);

/// Evaluates an RT field inside cell k: sum of eps * p_a * phi_{K,i}(x).
Vec2 rt_eval(const RTField& p, int k, Vec2 x, bool strict = false);

/// (div p)_K = (1/|K|) * sum_i p_{K,i}.
P0Field divergence(const RTField& p);

/// Cell-average projection Pi_0: (Pi_0 u)_K = (1/|K|) \int_K u.
/// Degree-4 quadrature by default. Parallel over cells.
P0Field interp_p0(const Triangulation& t, const ScalarFn& u);
P0Field interp_p0(const Triangulation& t, const ScalarFn& u,
                  const TriangleQuadrature& quad);
P0Field interp_p0_serial(const Triangulation& t, const ScalarFn& u);

/// Flux interpolation Pi_RT: flux on each edge = \int_a p.n_a ds
/// (two-point Gauss, exact for the RT0 traces). Parallel over edges.
RTField interp_rt(const Triangulation& t, const VectorFn& p);
RTField interp_rt_serial(const Triangulation& t, const VectorFn& p);

/// Edge-indexed Gram matrix M_ab = (phi_a, phi_b)_0, assembled cell by cell
/// with the midpoint rule (exact: the integrands are quadratic). Entries are
/// nonzero only for edge pairs sharing a cell. Parallel over cells with an
/// ordered merge.
SparseMatrix rt_mass_matrix(const Triangulation& t);
SparseMatrix rt_mass_matrix_serial(const Triangulation& t);

}  // namespace fvpg

#endif
