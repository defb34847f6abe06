#include "fvpg/cg.hpp"

#include <cmath>
#include <string>

#include "fvpg/errors.hpp"

namespace fvpg {

namespace {

double dot_serial(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

CgResult cg_solve(const SparseMatrix& a, std::span<const double> b, double tol,
                  int max_iter) {
  const int n = a.rows();
  if (static_cast<int>(b.size()) != n)
    throw DimensionMismatch("cg_solve: rhs size " + std::to_string(b.size()) +
                            " vs matrix dimension " + std::to_string(n));
  if (max_iter <= 0) max_iter = 10 * n;

  CgResult res;
  res.x.assign(n, 0.0);

  const double bnorm = std::sqrt(dot_serial(b, b));
  if (bnorm == 0.0) return res;

  std::vector<double> inv_diag(n);
  for (int i = 0; i < n; ++i) {
    const double d = a.coeff(i, i);
    if (d <= 0.0)
      throw ZeroDiagonal(i, "cg_solve: non-positive diagonal entry at row " +
                                std::to_string(i));
    inv_diag[i] = 1.0 / d;
  }

  // x0 = 0, so r0 = b.
  std::vector<double> r(b.begin(), b.end());
  std::vector<double> z(n), p(n), ap(n);
  for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = dot_serial(r, z);
  double rnorm = bnorm;

  for (int it = 1; it <= max_iter; ++it) {
    a.multiply(p, ap);
    const double pap = dot_serial(p, ap);
    const double alpha = rz / pap;
    for (int i = 0; i < n; ++i) res.x[i] += alpha * p[i];
    for (int i = 0; i < n; ++i) r[i] -= alpha * ap[i];

    rnorm = std::sqrt(dot_serial(r, r));
    res.iterations = it;
    res.residual = rnorm / bnorm;
    if (res.residual <= tol) return res;

    for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    const double rz_next = dot_serial(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }

  throw SolverDidNotConverge(res.iterations, res.residual,
                             "cg_solve: no convergence after " +
                                 std::to_string(max_iter) + " iterations (residual " +
                                 std::to_string(res.residual) + ")");
}

}  // namespace fvpg
