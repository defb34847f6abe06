#include "fvpg/analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <json.hpp>

#include "fvpg/errors.hpp"
#include "fvpg/format.hpp"
#include "fvpg/parallel.hpp"

namespace fvpg {

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;

double lambda1(Vec2 x) { return x.y; }
double lambda2(Vec2 x) { return kSqrt3 * (1.0 - x.x) - x.y; }
double lambda3(Vec2 x) { return kSqrt3 * x.x - x.y; }

double bubble(Vec2 x) { return lambda1(x) * lambda2(x) * lambda3(x); }

Vec2 bubble_grad(Vec2 x) {
  const double l1 = lambda1(x), l2 = lambda2(x), l3 = lambda3(x);
  // grad l1 = (0,1), grad l2 = (-sqrt3,-1), grad l3 = (sqrt3,-1)
  return {kSqrt3 * (l1 * l2 - l1 * l3), l2 * l3 - l1 * l3 - l1 * l2};
}

}  // namespace

ManufacturedProblem bubble_on_equilateral() {
  ManufacturedProblem p;
  p.name = "bubble";
  p.u = bubble;
  p.grad_u = bubble_grad;
  p.f = [](Vec2) { return 2.0 * kSqrt3; };
  return p;
}

ManufacturedProblem bubble_x_on_equilateral() {
  ManufacturedProblem p;
  p.name = "bubble-x";
  p.u = [](Vec2 x) { return bubble(x) * (1.0 + x.x); };
  p.grad_u = [](Vec2 x) {
    const Vec2 g = bubble_grad(x);
    return Vec2{(1.0 + x.x) * g.x + bubble(x), (1.0 + x.x) * g.y};
  };
  p.f = [](Vec2 x) {
    return 2.0 * kSqrt3 * (1.0 + x.x) - 6.0 * x.y + 12.0 * x.x * x.y;
  };
  return p;
}

ManufacturedProblem zero_on_equilateral() {
  ManufacturedProblem p;
  p.name = "zero";
  p.u = [](Vec2) { return 0.0; };
  p.grad_u = [](Vec2) { return Vec2{0.0, 0.0}; };
  p.f = [](Vec2) { return 0.0; };
  return p;
}

const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names = {"bubble", "bubble-x", "zero"};
  return names;
}

ManufacturedProblem problem_by_name(const std::string& name) {
  if (name == "bubble") return bubble_on_equilateral();
  if (name == "bubble-x") return bubble_x_on_equilateral();
  if (name == "zero") return zero_on_equilateral();
  std::string known;
  for (const std::string& n : problem_names()) known += " " + n;
  throw Error("unknown problem '" + name + "'; known problems:" + known);
}

namespace {

struct CellErrors {
  double u2 = 0.0, p2 = 0.0, div2 = 0.0;
};

CellErrors cell_errors(const Triangulation& t, int k, const PoissonSolution& sol,
                       const ManufacturedProblem& prob, const P0Field& f_t,
                       const TriangleQuadrature& quad) {
  const auto& tri = t.cell(k);
  const Vec2 a0 = t.vertex(tri[0]);
  const Vec2 a1 = t.vertex(tri[1]);
  const Vec2 a2 = t.vertex(tri[2]);
  const double area = t.geometry(k).area;

  CellErrors e;
  for (std::size_t q = 0; q < quad.size(); ++q) {
    const Vec2 x = bary_point(quad.points[q], a0, a1, a2);
    const double w = quad.weights[q] * area;
    const double du = prob.u(x) - sol.u.value[k];
    const Vec2 dp = prob.grad_u(x) - rt_eval(sol.p, k, x);
    const double df = prob.f(x) - f_t.value[k];
    e.u2 += w * du * du;
    e.p2 += w * dot(dp, dp);
    e.div2 += w * df * df;
  }
  return e;
}

ErrorNorms reduce_errors(const std::vector<CellErrors>& per_cell) {
  double u2 = 0.0, p2 = 0.0, d2 = 0.0;
  for (const CellErrors& e : per_cell) {
    u2 += e.u2;
    p2 += e.p2;
    d2 += e.div2;
  }
  return {std::sqrt(u2), std::sqrt(p2), std::sqrt(d2)};
}

}  // namespace

ErrorNorms error_norms(const Triangulation& t, const PoissonSolution& sol,
                       const ManufacturedProblem& prob) {
  const TriangleQuadrature quad = TriangleQuadrature::degree4();
  const P0Field f_t = project_rhs(t, prob.f);
  std::vector<CellErrors> per_cell(t.cell_count());
  parallel_for(t.cell_count(), [&](std::ptrdiff_t k) {
    per_cell[k] = cell_errors(t, static_cast<int>(k), sol, prob, f_t, quad);
  });
  return reduce_errors(per_cell);
}

ErrorNorms error_norms_serial(const Triangulation& t, const PoissonSolution& sol,
                              const ManufacturedProblem& prob) {
  const TriangleQuadrature quad = TriangleQuadrature::degree4();
  const P0Field f_t = interp_p0_serial(t, prob.f);
  std::vector<CellErrors> per_cell(t.cell_count());
  for (int k = 0; k < t.cell_count(); ++k)
    per_cell[k] = cell_errors(t, k, sol, prob, f_t, quad);
  return reduce_errors(per_cell);
}

double e_div_direct(const Triangulation& t, const PoissonSolution& sol,
                    const ManufacturedProblem& prob) {
  const TriangleQuadrature quad = TriangleQuadrature::degree4();
  const P0Field div_p = divergence(sol.p);
  double s = 0.0;
  for (int k = 0; k < t.cell_count(); ++k) {
    const auto& tri = t.cell(k);
    const Vec2 a0 = t.vertex(tri[0]);
    const Vec2 a1 = t.vertex(tri[1]);
    const Vec2 a2 = t.vertex(tri[2]);
    const double area = t.geometry(k).area;
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const Vec2 x = bary_point(quad.points[q], a0, a1, a2);
      // div p = -f for the exact solution; div p_T is cellwise constant.
      const double d = -prob.f(x) - div_p.value[k];
      s += quad.weights[q] * area * d * d;
    }
  }
  return std::sqrt(s);
}

double stability_ratio(const Triangulation& t, const PoissonSolution& sol,
                       const ManufacturedProblem& prob) {
  const TriangleQuadrature quad = TriangleQuadrature::degree4();
  const P0Field div_p = divergence(sol.p);
  double u2 = 0.0, p2 = 0.0, divp2 = 0.0, f2 = 0.0;
  for (int k = 0; k < t.cell_count(); ++k) {
    const auto& tri = t.cell(k);
    const Vec2 a0 = t.vertex(tri[0]);
    const Vec2 a1 = t.vertex(tri[1]);
    const Vec2 a2 = t.vertex(tri[2]);
    const double area = t.geometry(k).area;
    u2 += area * sol.u.value[k] * sol.u.value[k];
    divp2 += area * div_p.value[k] * div_p.value[k];
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const Vec2 x = bary_point(quad.points[q], a0, a1, a2);
      const Vec2 p = rt_eval(sol.p, k, x);
      const double f = prob.f(x);
      p2 += quad.weights[q] * area * dot(p, p);
      f2 += quad.weights[q] * area * f * f;
    }
  }
  const double hdiv = std::sqrt(p2 + divp2);
  return (std::sqrt(u2) + hdiv) / std::sqrt(f2);
}

InterpErrors interpolation_errors(const Triangulation& t,
                                  const ManufacturedProblem& prob) {
  const TriangleQuadrature quad = TriangleQuadrature::degree4();
  const P0Field u0 = interp_p0(t, prob.u);
  const RTField p0 = interp_rt(t, prob.grad_u);
  std::vector<CellErrors> per_cell(t.cell_count());
  parallel_for(t.cell_count(), [&](std::ptrdiff_t k) {
    const auto& tri = t.cell(k);
    const Vec2 a0 = t.vertex(tri[0]);
    const Vec2 a1 = t.vertex(tri[1]);
    const Vec2 a2 = t.vertex(tri[2]);
    const double area = t.geometry(k).area;
    CellErrors e;
    for (std::size_t q = 0; q < quad.size(); ++q) {
      const Vec2 x = bary_point(quad.points[q], a0, a1, a2);
      const double du = prob.u(x) - u0.value[k];
      const Vec2 dp = prob.grad_u(x) - rt_eval(p0, static_cast<int>(k), x);
      e.u2 += quad.weights[q] * area * du * du;
      e.p2 += quad.weights[q] * area * dot(dp, dp);
    }
    per_cell[k] = e;
  });
  double u2 = 0.0, p2 = 0.0;
  for (const CellErrors& e : per_cell) {
    u2 += e.u2;
    p2 += e.p2;
  }
  return {std::sqrt(u2), std::sqrt(p2)};
}

namespace {

double observed_rate(double coarse, double fine) {
  if (!(coarse > 0.0) || !(fine > 0.0))
    return std::numeric_limits<double>::quiet_NaN();
  const double r = std::log2(coarse / fine);
  return std::isfinite(r) ? r : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

ConvergenceReport convergence_study(const ManufacturedProblem& prob, int level_min,
                                    int level_max, double tol) {
  if (level_min < 0 || level_max > 8 || level_min > level_max)
    throw Error("convergence_study: levels must satisfy 0 <= min <= max <= 8");

  ConvergenceReport report;
  report.problem = prob.name;
  for (int level = level_min; level <= level_max; ++level) {
    const Triangulation t = gen_equilateral(level);
    const PoissonSolution sol = solve_poisson(t, prob.f, tol);
    const ErrorNorms e = error_norms(t, sol, prob);

    ConvergenceReport::Level row;
    row.level = level;
    row.h = t.mesh_size();
    row.e_u = e.e_u;
    row.e_p = e.e_p;
    row.e_div = e.e_div;
    row.stability = stability_ratio(t, sol, prob);
    row.iterations = sol.iterations;
    row.residual = sol.residual;
    row.structural_residual = sol.structural_residual;
    if (report.levels.empty()) {
      row.rate_u = row.rate_p = row.rate_div =
          std::numeric_limits<double>::quiet_NaN();
    } else {
      const auto& prev = report.levels.back();
      row.rate_u = observed_rate(prev.e_u, e.e_u);
      row.rate_p = observed_rate(prev.e_p, e.e_p);
      row.rate_div = observed_rate(prev.e_div, e.e_div);
    }
    report.levels.push_back(row);
  }
  return report;
}

GateResult convergence_gates(const ConvergenceReport& report) {
  GateResult g;
  g.applicable = report.levels.size() >= 3;
  if (!g.applicable) return g;
  const auto& last = report.levels.back();
  const auto in_range = [](double r) {
    return std::isfinite(r) && kRateLo <= r && r <= kRateHi;
  };
  g.rate_u_ok = in_range(last.rate_u);
  g.rate_p_ok = in_range(last.rate_p);
  g.rate_div_ok = in_range(last.rate_div);
  return g;
}

std::string ConvergenceReport::to_csv() const {
  std::string out = "level,h,e_u,rate_u,e_p,rate_p,e_div,rate_div,stability,iters\n";
  for (const Level& l : levels) {
    out += std::to_string(l.level) + "," + format_double17(l.h) + "," +
           format_double17(l.e_u) + "," + format_double17(l.rate_u) + "," +
           format_double17(l.e_p) + "," + format_double17(l.rate_p) + "," +
           format_double17(l.e_div) + "," + format_double17(l.rate_div) + "," +
           format_double17(l.stability) + "," + std::to_string(l.iterations) + "\n";
  }
  return out;
}

std::string ConvergenceReport::to_json() const {
  nlohmann::ordered_json j;
  j["problem"] = problem;
  j["levels"] = nlohmann::ordered_json::array();
  for (const Level& l : levels) {
    nlohmann::ordered_json row;
    row["level"] = l.level;
    row["h"] = l.h;
    row["e_u"] = l.e_u;
    row["rate_u"] = l.rate_u;
    row["e_p"] = l.e_p;
    row["rate_p"] = l.rate_p;
    row["e_div"] = l.e_div;
    row["rate_div"] = l.rate_div;
    row["stability"] = l.stability;
    row["iters"] = l.iterations;
    j["levels"].push_back(row);
  }
  const GateResult g = convergence_gates(*this);
  j["gates"] = {{"applicable", g.applicable},
                {"rate_u", g.rate_u_ok},
                {"rate_p", g.rate_p_ok},
                {"rate_div", g.rate_div_ok},
                {"pass", g.pass()}};
  return j.dump(2) + "\n";
}

}  // namespace fvpg
