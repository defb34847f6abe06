// Benchmark of the OpenMP kernels against their serial references. Also
// verifies that both paths produce bit-identical results.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "fvpg/analysis.hpp"
#include "fvpg/parallel.hpp"
#include "fvpg/scheme.hpp"

using namespace fvpg;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

struct Row {
  std::string name;
  double serial_ms;
  double parallel_ms;
  bool identical;
};

}  // namespace

int main(int argc, char** argv) {
  int level = 7;
  int threads = env_thread_count();
#ifdef _OPENMP
  if (threads == 1) threads = omp_get_max_threads();
#endif
  int reps = 5;

  CLI::App app{"serial vs OpenMP kernel benchmark"};
  app.add_option("--level", level, "equilateral refinement level")
      ->check(CLI::Range(0, 8));
  app.add_option("--threads", threads, "worker count for the parallel runs");
  app.add_option("--reps", reps, "repetitions per measurement");
  CLI11_PARSE(app, argc, argv);

  const Triangulation t = gen_equilateral(level);
  std::printf("mesh: level %d, %d cells, %d edges, threads %d\n", level,
              t.cell_count(), t.edge_count(), threads);

  const ManufacturedProblem prob = bubble_x_on_equilateral();
  const PoissonSolution sol = solve_poisson(t, prob.f);
  const CellSystem sys = assemble_system(t, edge_coefficients(t));

  std::mt19937 rng(12345);
  std::vector<double> x(t.cell_count());
  for (double& v : x)
    v = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
  std::vector<double> y(t.cell_count());

  std::vector<Row> rows;

  const auto bench = [&](const std::string& name, const std::function<void()>& serial,
                         const std::function<void()>& parallel,
                         const std::function<bool()>& same) {
    set_thread_count(1);
    const double ts = time_ms(serial, reps);
    set_thread_count(threads);
    const double tp = time_ms(parallel, reps);
    set_thread_count(1);
    rows.push_back({name, ts, tp, same()});
  };

  EdgeCoefficients c_s, c_p;
  bench(
      "edge_coefficients", [&] { c_s = edge_coefficients_serial(t); },
      [&] { c_p = edge_coefficients(t); }, [&] { return c_s.c == c_p.c; });

  P0Field p0_s, p0_p;
  bench(
      "project_rhs", [&] { p0_s = interp_p0_serial(t, prob.f); },
      [&] { p0_p = interp_p0(t, prob.f); },
      [&] { return p0_s.value == p0_p.value; });

  RTField rt_s, rt_p;
  bench(
      "interp_rt", [&] { rt_s = interp_rt_serial(t, prob.grad_u); },
      [&] { rt_p = interp_rt(t, prob.grad_u); },
      [&] { return rt_s.flux == rt_p.flux; });

  SparseMatrix m_s, m_p;
  bench(
      "rt_mass_matrix", [&] { m_s = rt_mass_matrix_serial(t); },
      [&] { m_p = rt_mass_matrix(t); },
      [&] {
        if (m_s.nonzeros() != m_p.nonzeros()) return false;
        for (int i = 0; i < m_s.nonzeros(); ++i)
          if (m_s.values()[i] != m_p.values()[i]) return false;
        return true;
      });

  std::vector<double> y_s(t.cell_count());
  bench(
      "matvec x100",
      [&] {
        for (int r = 0; r < 100; ++r) sys.matrix.multiply_serial(x, y_s);
      },
      [&] {
        for (int r = 0; r < 100; ++r) sys.matrix.multiply(x, y);
      },
      [&] { return y_s == y; });

  ErrorNorms e_s, e_p;
  bench(
      "error_norms", [&] { e_s = error_norms_serial(t, sol, prob); },
      [&] { e_p = error_norms(t, sol, prob); },
      [&] {
        return e_s.e_u == e_p.e_u && e_s.e_p == e_p.e_p && e_s.e_div == e_p.e_div;
      });

  std::printf("%-18s %12s %12s %9s %10s\n", "kernel", "serial ms", "parallel ms",
              "speedup", "identical");
  bool all_same = true;
  for (const Row& r : rows) {
    std::printf("%-18s %12.3f %12.3f %8.2fx %10s\n", r.name.c_str(), r.serial_ms,
                r.parallel_ms, r.serial_ms / r.parallel_ms,
                r.identical ? "yes" : "NO");
    all_same &= r.identical;
  }
  if (!all_same) {
    std::printf("FAIL: parallel results differ from the serial reference\n");
    return 1;
  }
  return 0;
}
