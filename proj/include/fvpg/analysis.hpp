#ifndef FVPG_ANALYSIS_HPP
#define FVPG_ANALYSIS_HPP

#include <string>
#include <vector>

#include "fvpg/scheme.hpp"

namespace fvpg {

/// Rate gate bounds for the convergence studies: the observed order between
/// the last two levels must land in [kRateLo, kRateHi].
inline constexpr double kRateLo = 0.9;
inline constexpr double kRateHi = 1.5;

/// Closed-form Dirichlet problem -Laplace(u) = f, u = 0 on the boundary of
/// the unit equilateral triangle (0,0), (1,0), (1/2, sqrt(3)/2).
struct ManufacturedProblem {
  std::string name;
  ScalarFn u;
  VectorFn grad_u;
  ScalarFn f;
};

/// u = l1*l2*l3 with l1 = y, l2 = sqrt(3)(1-x) - y, l3 = sqrt(3)x - y.
/// The forcing term works out to the constant 2*sqrt(3).
ManufacturedProblem bubble_on_equilateral();

/// x-weighted bubble u = l1*l2*l3*(1+x); its forcing term
/// f = 2*sqrt(3)(1+x) - 6y + 12xy is genuinely non-constant, which makes the
/// projection error ||f - f_T|| decay at first order (the plain bubble's is
/// identically zero).
ManufacturedProblem bubble_x_on_equilateral();

/// u = 0, f = 0.
ManufacturedProblem zero_on_equilateral();

const std::vector<std::string>& problem_names();
/// Throws Error listing the known names when `name` is not one of them.
ManufacturedProblem problem_by_name(const std::string& name);

struct ErrorNorms {
  double e_u = 0.0;    ///< ||u - u_T||_0
  double e_p = 0.0;    ///< ||grad u - p_T||_0
  double e_div = 0.0;  ///< ||f - f_T||_0 ( = ||div(p - p_T)||_0 by the scheme identity)
};

ErrorNorms error_norms(const Triangulation& t, const PoissonSolution& sol,
                       const ManufacturedProblem& prob);
ErrorNorms error_norms_serial(const Triangulation& t, const PoissonSolution& sol,
                              const ManufacturedProblem& prob);

/// ||div(p - p_T)||_0 integrated directly from f and the fluxes of p_T;
/// agrees with ErrorNorms::e_div up to the algebraic solver residual.
double e_div_direct(const Triangulation& t, const PoissonSolution& sol,
                    const ManufacturedProblem& prob);

/// (||u_T||_0 + ||p_T||_{H(div)}) / ||f||_0.
double stability_ratio(const Triangulation& t, const PoissonSolution& sol,
                       const ManufacturedProblem& prob);

/// Interpolation errors (||u - Pi_0 u||_0, ||grad u - Pi_RT grad u||_0).
struct InterpErrors {
  double e_u0 = 0.0;
  double e_p0 = 0.0;
};
InterpErrors interpolation_errors(const Triangulation& t,
                                  const ManufacturedProblem& prob);

struct ConvergenceReport {
  struct Level {
    int level = 0;
    double h = 0.0;
    double e_u = 0.0, e_p = 0.0, e_div = 0.0;
    double rate_u, rate_p, rate_div;  // NaN when undefined (first level, zero errors)
    double stability = 0.0;
    int iterations = 0;
    double residual = 0.0;
    double structural_residual = 0.0;
  };

  std::string problem;
  std::vector<Level> levels;

  /// Columns: level,h,e_u,rate_u,e_p,rate_p,e_div,rate_div,stability,iters
  std::string to_csv() const;
  std::string to_json() const;
};

/// Solves the problem on gen_equilateral(level) for level_min..level_max and
/// fills the per-level errors, observed rates, stability ratios and solver
/// diagnostics. Requires 0 <= level_min <= level_max <= 8.
ConvergenceReport convergence_study(const ManufacturedProblem& prob, int level_min,
                                    int level_max, double tol = 1e-10);

/// Rate gates over the final level pair. Not applicable (and passing with a
/// warning) for studies of fewer than 3 levels.
struct GateResult {
  bool applicable = false;
  bool rate_u_ok = false;
  bool rate_p_ok = false;
  bool rate_div_ok = false;
  bool pass() const {
    return !applicable || (rate_u_ok && rate_p_ok && rate_div_ok);
  }
};
GateResult convergence_gates(const ConvergenceReport& report);

}  // namespace fvpg

#endif
