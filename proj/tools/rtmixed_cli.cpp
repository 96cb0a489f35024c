// Command-line driver for the convergence experiments.
//
//   rtmixed run --example 1 [--levels 2,4,8] [--sigma-ref 512|256|0] [--out DIR]
//   rtmixed compare-p1 --domain rect --n 32 --alpha -0.4999 --out DIR
//   rtmixed mesh-info --domain lshape --n 4 [--dump-mesh FILE] [--dump-matrix FILE]

#include <CLI11.hpp>
#include <fmt/format.h>

#include <chrono>
#include <fstream>
#include <iostream>

#include "rtmixed/assembly.hpp"
#include "rtmixed/error.hpp"
#include "rtmixed/experiments.hpp"
#include "rtmixed/mesh.hpp"

namespace {

using namespace rtmixed;

int run(const std::string& example, const std::vector<int>& levels, int sigma_ref,
        const std::string& out, const std::string& solver, bool quiet) {
  ExperimentConfig cfg;
  cfg.example = parse_example(example);
  if (!levels.empty()) cfg.levels = levels;
  cfg.sigma_ref_n = sigma_ref;
  cfg.out_dir = out;
  cfg.solver.method = parse_solver_method(solver);
  if (sigma_ref > 0 && sigma_ref < 512)
    std::cerr << fmt::format(
        "warning: sigma reference at n={} (default 512); sigma-error magnitudes shift, only the "
        "rate trend is meaningful\n",
        sigma_ref);

  const auto start = std::chrono::steady_clock::now();
  const ConvergenceReport report = run_example(cfg, [&](int level, const std::string& msg) {
    if (!quiet) std::cerr << fmt::format("[n={}] {}\n", level, msg);
  });
  report.write_csv(std::cout);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!quiet)
    std::cerr << fmt::format("predicted u-rate {:.6f}; finished in {:.1f} s\n",
                             predict_rate(cfg.example), secs);
  return 0;
}

int compare(const std::string& domain, int n, double alpha, const std::string& out,
            const std::string& solver) {
  SolverConfig cfg;
  cfg.method = parse_solver_method(solver);
  const ComparisonResult r = compare_p1(parse_domain(domain), n, alpha, out, cfg);
  std::cout << fmt::format("mixed field: {} ({} cells)\n", r.mixed_csv.string(), r.mixed_rows);
  std::cout << fmt::format("P1 field:    {} ({} vertices)\n", r.p1_csv.string(), r.p1_rows);
  std::cout << fmt::format("max |u_h| on cells at the origin (mixed): {:.6f}\n",
                           r.mixed_peak_near_origin);
  std::cout << fmt::format("max |u_h| at vertices within 2/n of the origin (P1): {:.6f}\n",
                           r.p1_peak_near_origin);
  return 0;
}

int mesh_info(const std::string& domain, int n, const std::string& dump_mesh,
              const std::string& dump_matrix) {
  const Mesh mesh = generate_structured(parse_domain(domain), n);
  double area = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) area += mesh.area(t);
  std::cout << fmt::format("domain {} n={} h={:.6f}\n", to_string(mesh.domain()), n, mesh.h());
  std::cout << fmt::format("vertices {}\ntriangles {}\nedges {}\nboundary_edges {}\narea {:.6f}\n",
                           mesh.num_vertices(), mesh.num_triangles(), mesh.num_edges(),
                           mesh.num_boundary_edges(), area);
  if (!dump_mesh.empty()) {
    std::ofstream os(dump_mesh);
    if (!os) throw Error(fmt::format("cannot write {}", dump_mesh));
    write_mesh(os, mesh);
  }
  if (!dump_matrix.empty()) {
    std::ofstream os(dump_matrix);
    if (!os) throw Error(fmt::format("cannot write {}", dump_matrix));
    write_coordinate(os, assemble_mixed(mesh, BoundaryData::smooth([](Point2) { return 0.0; }))
                             .block_matrix());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lowest-order Raviart-Thomas mixed FEM for Poisson with rough Dirichlet data"};
  app.require_subcommand(1);

  std::string example, out = ".", solver = "direct";
  std::vector<int> levels;
  int sigma_ref = 512;
  bool quiet = false;
  auto* run_cmd = app.add_subcommand("run", "Run a convergence experiment and print its table");
  run_cmd->add_option("--example", example, "1 | 2 | 3-rect | 3-lshape")->required();
  run_cmd->add_option("--levels", levels, "Comma-separated mesh levels n (h = sqrt(2)/n)")
      ->delimiter(',');
  run_cmd->add_option("--sigma-ref", sigma_ref, "Fine reference level for sigma errors (0 skips)");
  run_cmd->add_option("--out", out, "Output directory for the CSV");
  run_cmd->add_option("--solver", solver, "direct | iterative");
  run_cmd->add_flag("--quiet", quiet, "No progress output");

  std::string domain;
  int n = 0;
  double alpha = -0.4999;
  auto* cmp_cmd = app.add_subcommand("compare-p1", "Dump mixed and P1 fields on the same mesh");
  cmp_cmd->add_option("--domain", domain, "rect | lshape")->required();
  cmp_cmd->add_option("--n", n, "Mesh level")->required()->check(CLI::PositiveNumber);
  cmp_cmd->add_option("--alpha", alpha, "Singular exponent");
  cmp_cmd->add_option("--out", out, "Output directory");
  cmp_cmd->add_option("--solver", solver, "direct | iterative");

  std::string dump_mesh, dump_matrix;
  auto* info_cmd = app.add_subcommand("mesh-info", "Print mesh statistics");
  info_cmd->add_option("--domain", domain, "rect | lshape")->required();
  info_cmd->add_option("--n", n, "Mesh level")->required()->check(CLI::PositiveNumber);
  info_cmd->add_option("--dump-mesh", dump_mesh, "Write the mesh as v/t/b lines");
  info_cmd->add_option("--dump-matrix", dump_matrix, "Write the saddle-point matrix (row col value)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return run(example, levels, sigma_ref, out, solver, quiet);
    if (*cmp_cmd) return compare(domain, n, alpha, out, solver);
    if (*info_cmd) return mesh_info(domain, n, dump_mesh, dump_matrix);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
