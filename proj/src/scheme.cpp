#include "fvpg/scheme.hpp"

#include <cmath>
#include <string>

#include "fvpg/errors.hpp"
#include "fvpg/format.hpp"
#include "fvpg/parallel.hpp"

namespace fvpg {

namespace {

void validate_coefficients(const Triangulation& t, const std::vector<double>& c) {
  for (std::size_t a = 0; a < c.size(); ++a) {
    if (c[a] <= kCoefficientFloor) {
      const Edge& e = t.edge(static_cast<int>(a));
      std::string msg = "edge " + std::to_string(a) + " (" + std::to_string(e.s) +
                        "," + std::to_string(e.n) + ") has c_a = " +
                        format_double(c[a]) + " <= " +
                        format_double(kCoefficientFloor) + " (opposite angle " +
                        format_double(e.opposite_angle[0]);
      if (!e.boundary())
        msg += ", " + format_double(e.opposite_angle[1]);
      msg += " rad): scheme-degenerate mesh";
      throw NonPositiveCoefficient(static_cast<int>(a), c[a], msg);
    }
  }
}

double edge_coefficient(const Edge& e) {
  return e.boundary() ? e.opposite_cot[0] / 2.0
                      : (e.opposite_cot[0] + e.opposite_cot[1]) / 2.0;
}

}  // namespace

EdgeCoefficients edge_coefficients(const Triangulation& t) {
  EdgeCoefficients out;
  out.mesh = &t;
  out.c.resize(t.edge_count());
  parallel_for(t.edge_count(),
               [&](std::ptrdiff_t a) { out.c[a] = edge_coefficient(t.edge(static_cast<int>(a))); });
  validate_coefficients(t, out.c);
  return out;
}

EdgeCoefficients edge_coefficients_serial(const Triangulation& t) {
  EdgeCoefficients out;
  out.mesh = &t;
  out.c.resize(t.edge_count());
  for (int a = 0; a < t.edge_count(); ++a) out.c[a] = edge_coefficient(t.edge(a));
  validate_coefficients(t, out.c);
  return out;
}

RTField discrete_gradient(const P0Field& u, const EdgeCoefficients& c) {
  const Triangulation& t = *u.mesh;
  RTField p(t);
  parallel_for(t.edge_count(), [&](std::ptrdiff_t a) {
    const Edge& e = t.edge(static_cast<int>(a));
    const double uk = u.value[e.cell[0]];
    p.flux[a] = e.boundary() ? -uk / c.c[a] : (u.value[e.cell[1]] - uk) / c.c[a];
  });
  return p;
}

P0Field project_rhs(const Triangulation& t, const ScalarFn& f) {
  return interp_p0(t, f);
}

CellSystem assemble_system(const Triangulation& t, const EdgeCoefficients& c) {
  validate_coefficients(t, c.c);
  std::vector<SparseMatrix::Triplet> trip;
  trip.reserve(static_cast<std::size_t>(t.cell_count()) +
               2 * static_cast<std::size_t>(t.interior_edge_count()));
  // Diagonal first, accumulated per cell so both sides of an interior edge
  // receive exactly the same 1/c_a.
  std::vector<double> diag(t.cell_count(), 0.0);
  for (int a = 0; a < t.edge_count(); ++a) {
    const Edge& e = t.edge(a);
    const double w = 1.0 / c.c[a];
    diag[e.cell[0]] += w;
    if (!e.boundary()) {
      diag[e.cell[1]] += w;
      trip.push_back({e.cell[0], e.cell[1], -w});
      trip.push_back({e.cell[1], e.cell[0], -w});
    }
  }
  for (int k = 0; k < t.cell_count(); ++k) trip.push_back({k, k, diag[k]});

  CellSystem sys;
  sys.matrix = SparseMatrix::from_triplets(t.cell_count(), std::move(trip));
  sys.cell_measure.resize(t.cell_count());
  for (int k = 0; k < t.cell_count(); ++k) sys.cell_measure[k] = t.geometry(k).area;
  return sys;
}

PoissonSolution solve_poisson(const Triangulation& t, const ScalarFn& f, double tol,
                              int max_iter) {
  const EdgeCoefficients c = edge_coefficients(t);
  const CellSystem sys = assemble_system(t, c);
  const P0Field f_t = project_rhs(t, f);

  std::vector<double> b(t.cell_count());
  for (int k = 0; k < t.cell_count(); ++k) b[k] = sys.cell_measure[k] * f_t.value[k];

  CgResult cg = cg_solve(sys.matrix, b, tol, max_iter);

  PoissonSolution sol;
  sol.u = P0Field(t, std::move(cg.x));
  sol.p = discrete_gradient(sol.u, c);
  sol.iterations = cg.iterations;
  sol.residual = cg.residual;

  const P0Field div_p = divergence(sol.p);
  double num = 0.0, den = 0.0;
  for (int k = 0; k < t.cell_count(); ++k) {
    const double area = t.geometry(k).area;
    const double d = div_p.value[k] + f_t.value[k];
    num += area * d * d;
    den += area * f_t.value[k] * f_t.value[k];
  }
  sol.structural_residual = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
  return sol;
}

double vf4_transmissivity_check(const Triangulation& t) {
  const EdgeCoefficients c = edge_coefficients(t);
  double worst = 0.0;
  for (int a = 0; a < t.edge_count(); ++a) {
    const Edge& e = t.edge(a);
    const Vec2 s = t.vertex(e.s);
    // Signed circumcenter offsets along the edge normal; positive on the
    // cell[1] side. d_K + d_L is their gap (boundary: the K offset alone).
    const double off_k = dot(t.geometry(e.cell[0]).circumcenter - s, e.normal);
    const double gap =
        e.boundary() ? -off_k
                     : dot(t.geometry(e.cell[1]).circumcenter - s, e.normal) - off_k;
    if (gap <= 1e-14 * e.length)
      throw NonPositiveCoefficient(
          a, gap,
          "edge " + std::to_string(a) +
              ": circumcenter distance gap is not positive (scheme-degenerate)");
    const double tau = e.length / gap;    // VF4 transmissivity
    const double inv_c = 1.0 / c.c[a];
    worst = std::max(worst, std::fabs(inv_c - tau) / std::fabs(tau));
  }
  return worst;
}

double discrete_green_check(const Triangulation& t, const EdgeCoefficients& c,
                            const P0Field& u, const RTField& p) {
  const P0Field div_p = divergence(p);
  const RTField grad_u = discrete_gradient(u, c);

  double sum = 0.0, scale = 0.0;
  for (int k = 0; k < t.cell_count(); ++k) {
    const double term = t.geometry(k).area * u.value[k] * div_p.value[k];
    sum += term;
    scale += std::fabs(term);
  }
  for (int a = 0; a < t.edge_count(); ++a) {
    const double term = c.c[a] * grad_u.flux[a] * p.flux[a];
    sum += term;
    scale += std::fabs(term);
  }
  return scale > 0.0 ? std::fabs(sum) / scale : std::fabs(sum);
}

std::vector<LumpedMassRow> lumped_mass_check(const Triangulation& t) {
  const SparseMatrix m = rt_mass_matrix(t);
  const EdgeCoefficients c = edge_coefficients(t);
  std::vector<LumpedMassRow> rows(t.edge_count());
  const auto offsets = m.row_offsets();
  const auto values = m.values();
  for (int a = 0; a < t.edge_count(); ++a) {
    double s = 0.0;
    for (int k = offsets[a]; k < offsets[a + 1]; ++k) s += values[k];
    rows[a] = {a, c.c[a], s, (s - c.c[a]) / c.c[a]};
  }
  return rows;
}

std::string lumped_mass_csv(const std::vector<LumpedMassRow>& rows) {
  std::string out = "edge,c_a,row_sum,rel_diff\n";
  for (const LumpedMassRow& r : rows)
    out += std::to_string(r.edge) + "," + format_double17(r.c) + "," +
           format_double17(r.row_sum) + "," + format_double17(r.rel_diff) + "\n";
  return out;
}

}  // namespace fvpg
