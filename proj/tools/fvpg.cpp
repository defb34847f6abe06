// Command-line front end: mesh generation/inspection, Poisson solves and
// convergence studies with scriptable exit codes.
//
// Exit codes: 0 ok, 1 check failure, 2 input/parse error, 3 solver failure,
// 4 convergence rate gate failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fvpg/analysis.hpp"
#include "fvpg/errors.hpp"
#include "fvpg/format.hpp"
#include "fvpg/parallel.hpp"
#include "fvpg/scheme.hpp"

namespace {

using namespace fvpg;

constexpr int kExitOk = 0;
constexpr int kExitCheckFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitSolver = 3;
constexpr int kExitRateGate = 4;

struct MeshSource {
  std::string mesh_path;
  std::string domain;
  int levels = -1;
};

Triangulation load_mesh(const MeshSource& src) {
  const bool from_file = !src.mesh_path.empty();
  const bool from_gen = !src.domain.empty() || src.levels >= 0;
  if (from_file == from_gen)
    throw Error("exactly one mesh source required: --mesh or --domain/--levels");
  if (from_file) return read_mesh_file(src.mesh_path);
  if (src.domain != "equilateral")
    throw Error("unknown domain '" + src.domain + "' (supported: equilateral)");
  if (src.levels < 0 || src.levels > 8)
    throw Error("--levels must be in [0, 8]");
  return gen_equilateral(src.levels);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f << content;
}

int cmd_mesh_gen(const MeshSource& src, const std::string& out) {
  MeshSource gen = src;
  if (gen.domain.empty()) gen.domain = "equilateral";
  const Triangulation t = load_mesh(gen);
  write_mesh_file(t, out);
  std::cout << "wrote " << out << " (" << t.cell_count() << " triangles)\n";
  return kExitOk;
}

int cmd_mesh_info(const MeshSource& src) {
  const Triangulation t = load_mesh(src);
  const AngleReport r = check_angles(t, 0.0, std::numbers::pi);
  std::cout << "vertices " << t.vertex_count() << "\n"
            << "triangles " << t.cell_count() << "\n"
            << "edges " << t.edge_count() << " (interior "
            << t.interior_edge_count() << ", boundary "
            << t.boundary_edge_count() << ")\n"
            << "h " << format_double(t.mesh_size()) << "\n"
            << "area " << format_double(t.total_area()) << "\n"
            << "angle_min " << format_double(r.theta_min) << "\n"
            << "angle_max " << format_double(r.theta_max) << "\n"
            << "acute " << (r.strictly_acute ? "true" : "false") << "\n";
  return kExitOk;
}

int cmd_mesh_refine(const MeshSource& src, int levels, const std::string& out) {
  if (levels < 1 || levels > 8) throw Error("--levels must be in [1, 8]");
  Triangulation t = load_mesh(src);
  for (int l = 0; l < levels; ++l) t = refine_uniform(t);
  write_mesh_file(t, out);
  std::cout << "wrote " << out << " (" << t.cell_count() << " triangles)\n";
  return kExitOk;
}

int cmd_mesh_check(const MeshSource& src, double theta_lo, double theta_hi) {
  const Triangulation t = load_mesh(src);
  int ret = kExitOk;

  const AngleReport r = check_angles(t, theta_lo, theta_hi);
  std::cout << "angle_min " << format_double(r.theta_min) << " (cell "
            << r.argmin_cell << ")\n"
            << "angle_max " << format_double(r.theta_max) << " (cell "
            << r.argmax_cell << ")\n"
            << "acute " << (r.strictly_acute ? "true" : "false") << "\n";
  if (!r.within_bounds) {
    std::cout << "angle_bounds fail: [" << format_double(theta_lo) << ", "
              << format_double(theta_hi) << "] violated\n";
    ret = kExitCheckFail;
  } else {
    std::cout << "angle_bounds pass\n";
  }

  try {
    const EdgeCoefficients c = edge_coefficients(t);
    double cmin = c.c[0];
    int amin = 0;
    for (int a = 1; a < t.edge_count(); ++a)
      if (c.c[a] < cmin) {
        cmin = c.c[a];
        amin = a;
      }
    std::cout << "min_c_a " << format_double(cmin) << " (edge " << amin << ")\n";
    std::cout << "vf4_discrepancy " << format_double(vf4_transmissivity_check(t))
              << "\n";
    std::cout << "vf4_admissible true\n";
  } catch (const NonPositiveCoefficient& e) {
    std::cout << "vf4_admissible false: " << e.what() << "\n";
    ret = kExitCheckFail;
  }
  return ret;
}

std::string field_csv(const char* id_name, const char* value_name,
                      const std::vector<double>& values) {
  std::string out = std::string(id_name) + "," + value_name + "\n";
  for (std::size_t i = 0; i < values.size(); ++i)
    out += std::to_string(i) + "," + format_double17(values[i]) + "\n";
  return out;
}

int cmd_solve(const MeshSource& src, const std::string& problem_name, double tol,
              const std::string& out_prefix) {
  const Triangulation t = load_mesh(src);
  const ManufacturedProblem prob = problem_by_name(problem_name);
  const PoissonSolution sol = solve_poisson(t, prob.f, tol);
  const ErrorNorms e = error_norms(t, sol, prob);

  write_file(out_prefix + ".u.csv", field_csv("cell_id", "u", sol.u.value));
  write_file(out_prefix + ".p.csv", field_csv("edge_id", "flux", sol.p.flux));

  nlohmann::ordered_json j;
  j["mesh"] = {{"vertices", t.vertex_count()},
               {"triangles", t.cell_count()},
               {"edges", t.edge_count()},
               {"h", t.mesh_size()}};
  j["problem"] = prob.name;
  j["tol"] = tol;
  j["iterations"] = sol.iterations;
  j["residual"] = sol.residual;
  j["structural_residual"] = sol.structural_residual;
  j["errors"] = {{"e_u", e.e_u}, {"e_p", e.e_p}, {"e_div", e.e_div}};
  write_file(out_prefix + ".json", j.dump(2) + "\n");

  std::cout << "wrote " << out_prefix << ".u.csv, " << out_prefix << ".p.csv, "
            << out_prefix << ".json\n";
  return kExitOk;
}

// Accepts "a:b" or a single level "k" (meaning k:k).
std::pair<int, int> parse_level_range(const std::string& s) {
  const auto colon = s.find(':');
  try {
    if (colon == std::string::npos) {
      const int k = std::stoi(s);
      return {k, k};
    }
    return {std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw Error("cannot parse level range '" + s + "' (expected a:b)");
  }
}

int cmd_convergence(const std::string& problem_name, const std::string& levels,
                    double tol, const std::string& out,
                    const std::string& format) {
  const auto [lo, hi] = parse_level_range(levels);
  const ManufacturedProblem prob = problem_by_name(problem_name);
  const ConvergenceReport report = convergence_study(prob, lo, hi, tol);

  const std::string payload =
      format == "json" ? report.to_json() : report.to_csv();
  if (out.empty())
    std::cout << payload;
  else
    write_file(out, payload);

  const GateResult g = convergence_gates(report);
  if (!g.applicable) {
    std::cerr << "warning: fewer than 3 levels, rate gates skipped\n";
    return kExitOk;
  }
  if (!g.pass()) {
    const auto& last = report.levels.back();
    std::cerr << "rate gate failure: rate_u=" << format_double(last.rate_u)
              << (g.rate_u_ok ? "" : " (out of range)")
              << " rate_p=" << format_double(last.rate_p)
              << (g.rate_p_ok ? "" : " (out of range)")
              << " rate_div=" << format_double(last.rate_div)
              << (g.rate_div_ok ? "" : " (out of range)") << "; bounds ["
              << format_double(kRateLo) << ", " << format_double(kRateHi)
              << "]\n";
    return kExitRateGate;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  fvpg::set_thread_count(fvpg::env_thread_count());

  CLI::App app{"VF4 finite-volume Poisson solver on conforming triangulations"};
  app.require_subcommand(1);

  // mesh gen|info|refine|check
  CLI::App* mesh = app.add_subcommand("mesh", "mesh operations");
  mesh->require_subcommand(1);

  MeshSource gen_src;
  std::string gen_out;
  CLI::App* gen = mesh->add_subcommand("gen", "generate a mesh file");
  gen->add_option("--domain", gen_src.domain, "domain name (equilateral)");
  gen->add_option("--levels", gen_src.levels, "refinement levels [0,8]")
      ->required();
  gen->add_option("--out", gen_out, "output mesh file")->required();

  MeshSource info_src;
  CLI::App* info = mesh->add_subcommand("info", "print mesh statistics");
  info->add_option("--mesh", info_src.mesh_path, "mesh file");
  info->add_option("--domain", info_src.domain, "domain name");
  info->add_option("--levels", info_src.levels, "refinement levels");

  MeshSource refine_src;
  int refine_levels = 1;
  std::string refine_out;
  CLI::App* refine = mesh->add_subcommand("refine", "red-refine a mesh");
  refine->add_option("--mesh", refine_src.mesh_path, "mesh file")->required();
  refine->add_option("--levels", refine_levels, "number of refinement passes");
  refine->add_option("--out", refine_out, "output mesh file")->required();

  MeshSource check_src;
  double theta_lo = 0.0;
  double theta_hi = std::numbers::pi;
  CLI::App* check = mesh->add_subcommand("check", "angle and admissibility checks");
  check->add_option("--mesh", check_src.mesh_path, "mesh file");
  check->add_option("--domain", check_src.domain, "domain name");
  check->add_option("--levels", check_src.levels, "refinement levels");
  check->add_option("--theta-lo", theta_lo, "lower angle bound (radians)");
  check->add_option("--theta-hi", theta_hi, "upper angle bound (radians)");

  // solve
  MeshSource solve_src;
  std::string solve_problem = "bubble";
  std::string solve_out;
  double solve_tol = 1e-10;
  CLI::App* solve = app.add_subcommand("solve", "solve the Dirichlet Poisson problem");
  solve->add_option("--mesh", solve_src.mesh_path, "mesh file");
  solve->add_option("--domain", solve_src.domain, "domain name");
  solve->add_option("--levels", solve_src.levels, "refinement levels");
  solve->add_option("--problem", solve_problem, "problem name");
  solve->add_option("--tol", solve_tol, "solver relative residual tolerance");
  solve->add_option("--out", solve_out, "output prefix")->required();

  // convergence
  std::string conv_problem = "bubble";
  std::string conv_levels = "2:6";
  std::string conv_out;
  std::string conv_format = "csv";
  double conv_tol = 1e-10;
  CLI::App* conv = app.add_subcommand("convergence", "run a refinement study");
  conv->add_option("--problem", conv_problem, "problem name");
  conv->add_option("--levels", conv_levels, "level range a:b");
  conv->add_option("--tol", conv_tol, "solver relative residual tolerance");
  conv->add_option("--out", conv_out, "output file (stdout when omitted)");
  conv->add_option("--format", conv_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (gen->parsed()) return cmd_mesh_gen(gen_src, gen_out);
    if (info->parsed()) return cmd_mesh_info(info_src);
    if (refine->parsed()) return cmd_mesh_refine(refine_src, refine_levels, refine_out);
    if (check->parsed()) return cmd_mesh_check(check_src, theta_lo, theta_hi);
    if (solve->parsed()) return cmd_solve(solve_src, solve_problem, solve_tol, solve_out);
    if (conv->parsed())
      return cmd_convergence(conv_problem, conv_levels, conv_tol, conv_out,
                             conv_format);
  } catch (const SolverDidNotConverge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const NonPositiveCoefficient& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFail;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
