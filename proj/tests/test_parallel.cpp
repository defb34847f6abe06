// The OpenMP kernels must agree bit for bit with their serial references for
// any thread count: every parallel loop writes disjoint slots and reductions
// run over ordered per-cell buffers.

#include <random>

#include <doctest.h>

#include "fvpg/analysis.hpp"
#include "fvpg/parallel.hpp"
#include "fvpg/scheme.hpp"
#include "fvpg/spaces.hpp"
#include "test_helpers.hpp"

using namespace fvpg;
using namespace fvpg::testing;

namespace {

struct ThreadGuard {
  explicit ThreadGuard(int n) { set_thread_count(n); }
  ~ThreadGuard() { set_thread_count(1); }
};

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

}  // namespace

TEST_SUITE("parallel") {

TEST_CASE("thread count control") {
  CHECK(thread_count() == 1);  // serial by default
  set_thread_count(4);
  CHECK(thread_count() == 4);
  set_thread_count(0);
  CHECK(thread_count() == 1);  // clamped
  set_thread_count(1);
}

TEST_CASE("matvec matches the serial reference bitwise") {
  const Triangulation t = gen_equilateral(4);
  const CellSystem sys = assemble_system(t, edge_coefficients(t));
  std::mt19937 rng = seeded_rng(71);
  std::vector<double> x(t.cell_count());
  for (double& v : x) v = uniform(rng);

  const std::vector<double> serial = matvec_serial(sys.matrix, x);
  ThreadGuard guard(4);
  const std::vector<double> parallel = matvec(sys.matrix, x);
  CHECK(same_bits(serial, parallel));
}

TEST_CASE("edge coefficients match bitwise") {
  const Triangulation t = gen_equilateral(4);
  const EdgeCoefficients serial = edge_coefficients_serial(t);
  ThreadGuard guard(4);
  const EdgeCoefficients parallel = edge_coefficients(t);
  CHECK(same_bits(serial.c, parallel.c));
}

TEST_CASE("projection and interpolation match bitwise") {
  const Triangulation t = gen_equilateral(4);
  const ScalarFn f = [](Vec2 x) { return std::sin(3.0 * x.x) + x.y * x.y; };
  const VectorFn g = [](Vec2 x) { return Vec2{std::cos(x.y), x.x * x.y}; };

  const P0Field p0_serial = interp_p0_serial(t, f);
  const RTField rt_serial = interp_rt_serial(t, g);
  ThreadGuard guard(4);
  const P0Field p0_parallel = interp_p0(t, f);
  const RTField rt_parallel = interp_rt(t, g);
  CHECK(same_bits(p0_serial.value, p0_parallel.value));
  CHECK(same_bits(rt_serial.flux, rt_parallel.flux));
}

TEST_CASE("mass matrix assembly matches bitwise") {
  const Triangulation t = gen_equilateral(3);
  const SparseMatrix serial = rt_mass_matrix_serial(t);
  ThreadGuard guard(4);
  const SparseMatrix parallel = rt_mass_matrix(t);
  REQUIRE(serial.nonzeros() == parallel.nonzeros());
  const auto vs = serial.values();
  const auto vp = parallel.values();
  for (int i = 0; i < serial.nonzeros(); ++i) CHECK(vs[i] == vp[i]);
}

TEST_CASE("error norms match bitwise") {
  const Triangulation t = gen_equilateral(3);
  const ManufacturedProblem prob = bubble_x_on_equilateral();
  const PoissonSolution sol = solve_poisson(t, prob.f);
  const ErrorNorms serial = error_norms_serial(t, sol, prob);
  ThreadGuard guard(4);
  const ErrorNorms parallel = error_norms(t, sol, prob);
  CHECK(serial.e_u == parallel.e_u);
  CHECK(serial.e_p == parallel.e_p);
  CHECK(serial.e_div == parallel.e_div);
}

TEST_CASE("whole solve is thread-count independent") {
  const Triangulation t = gen_equilateral(4);
  const ManufacturedProblem prob = bubble_on_equilateral();
  const PoissonSolution serial = solve_poisson(t, prob.f);
  ThreadGuard guard(4);
  const PoissonSolution parallel = solve_poisson(t, prob.f);
  CHECK(serial.iterations == parallel.iterations);
  CHECK(same_bits(serial.u.value, parallel.u.value));
  CHECK(same_bits(serial.p.flux, parallel.p.flux));
}

}  // TEST_SUITE
