#ifndef FVPG_CG_HPP
#define FVPG_CG_HPP

#include <span>
#include <vector>

#include "fvpg/sparse.hpp"

namespace fvpg {

struct CgResult {
  std::vector<double> x;
  int iterations = 0;
  double residual = 0.0;  ///< final ||Ax - b||_2 / ||b||_2
};

/// Jacobi-preconditioned conjugate gradients for a symmetric positive
/// definite matrix. Stops when ||Ax - b||_2 <= tol * ||b||_2.
///
/// max_iter == 0 selects the default cap of 10 * n. b == 0 returns x == 0
/// without iterating. All inner products are accumulated in a fixed serial
/// order, so identical inputs give bit-identical results regardless of the
/// thread count used by the matrix product.
///
/// Throws ZeroDiagonal if some A_ii <= 0 and SolverDidNotConverge when the
/// iteration cap is reached.
CgResult cg_solve(const SparseMatrix& a, std::span<const double> b,
                  double tol = 1e-10, int max_iter = 0);

}  // namespace fvpg

#endif
