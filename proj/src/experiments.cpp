#include "rtmixed/experiments.hpp"

#include <bit>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <memory>
#include <optional>

#include "rtmixed/assembly.hpp"
#include "rtmixed/error.hpp"
#include "rtmixed/exact.hpp"
#include "rtmixed/spaces.hpp"

namespace rtmixed {

ExampleId parse_example(std::string_view name) {
  if (name == "1") return ExampleId::Convex;
  if (name == "2") return ExampleId::LShape;
  if (name == "3-rect") return ExampleId::SmootherRect;
  if (name == "3-lshape") return ExampleId::SmootherLShape;
  throw Error(fmt::format("unknown example '{}' (expected 1, 2, 3-rect or 3-lshape)", name));
}

std::string_view to_string(ExampleId id) {
  switch (id) {
    case ExampleId::Convex:
      return "1";
    case ExampleId::LShape:
      return "2";
    case ExampleId::SmootherRect:
      return "3-rect";
    case ExampleId::SmootherLShape:
      return "3-lshape";
  }
  return "?";
}

ExampleSetup example_setup(ExampleId id) {
  switch (id) {
    case ExampleId::Convex:
      return {Domain::Rectangle, -0.4999};
    case ExampleId::LShape:
      return {Domain::LShape, -0.4999};
    case ExampleId::SmootherRect:
      return {Domain::Rectangle, -1.0 / 3.0};
    case ExampleId::SmootherLShape:
      return {Domain::LShape, -1.0 / 3.0};
  }
  throw Error("unknown example");
}

ExpectedRate expected_rate(ExampleId id) {
  const ExampleSetup setup = example_setup(id);
  // Re-entrant angle 3 pi / 2 limits the regularity index to pi / Theta.
  const double s = setup.domain == Domain::Rectangle ? 1.0 : 2.0 / 3.0;
  const bool smoother = id == ExampleId::SmootherRect || id == ExampleId::SmootherLShape;
  return {s, smoother ? 1.0 / 6.0 : 0.0};
}

double predict_rate(ExampleId id) { return expected_rate(id).predicted(); }

void validate(const ExperimentConfig& cfg) {
  if (cfg.levels.empty()) throw Error("no levels requested");
  for (size_t i = 0; i < cfg.levels.size(); ++i) {
    const int n = cfg.levels[i];
    if (n < 1 || !std::has_single_bit(static_cast<unsigned>(n)))
      throw Error(fmt::format("level {} is not a power of two", n));
    if (i > 0 && n <= cfg.levels[i - 1]) throw Error("levels must be strictly increasing");
    if (cfg.sigma_ref_n > 0 && cfg.sigma_ref_n % n != 0)
      throw Error(fmt::format("sigma reference level {} is not a multiple of level {}",
                              cfg.sigma_ref_n, n));
  }
  if (cfg.sigma_ref_n < 0) throw Error("sigma reference level must be >= 0");
}

ConvergenceReport run_example(const ExperimentConfig& cfg, const ProgressFn& progress) {
  validate(cfg);
  const ExampleSetup setup = example_setup(cfg.example);
  const SingularHarmonic sol(setup.alpha, setup.domain);
  const BoundaryData g = BoundaryData::from(sol);
  const auto report_progress = [&](int level, const std::string& msg) {
    if (progress) progress(level, msg);
  };

  std::unique_ptr<SigmaReferenceSolver> reference;
  if (cfg.sigma_ref_n > 0) {
    report_progress(0, fmt::format("factorizing sigma reference at n={}", cfg.sigma_ref_n));
    reference = std::make_unique<SigmaReferenceSolver>(setup.domain, cfg.sigma_ref_n, cfg.solver);
  }

  ConvergenceReport report;
  for (int n : cfg.levels) {
    try {
      const Mesh mesh = generate_structured(setup.domain, n);
      const MixedSystem system = assemble_mixed(mesh, g);
      const MixedSolution uh = solve_mixed(system, cfg.solver);
      ConvergenceRow row;
      row.level = n;
      row.h = mesh.h();
      row.err_u = l2_error_u({uh.u.data(), static_cast<size_t>(uh.u.size())}, sol, mesh);
      if (reference) {
        const BoundaryProjection gh = boundary_l2_projection(g, mesh);
        const SigmaReference ref = reference->build(gh, n);
        row.err_sigma =
            l2_error_sigma({uh.sigma.data(), static_cast<size_t>(uh.sigma.size())}, mesh, ref);
      }
      report.rows.push_back(row);
      report_progress(n, fmt::format("err_u={:.6f}{}", row.err_u,
                                     row.err_sigma ? fmt::format(" err_sigma={:.6f}", *row.err_sigma)
                                                   : std::string{}));
    } catch (const std::exception& e) {
      throw Error(fmt::format("level n={}: {}", n, e.what()));
    }
  }
  report.compute_rates();

  if (!cfg.out_dir.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    const auto path = cfg.out_dir / fmt::format("example_{}.csv", to_string(cfg.example));
    std::ofstream os(path);
    if (!os) throw Error(fmt::format("cannot write {}", path.string()));
    report.write_csv(os);
  }
  return report;
}

ComparisonResult compare_p1(Domain domain, int n, const BoundaryData& g,
                            const std::filesystem::path& out_dir, const SolverConfig& cfg) {
  const Mesh mesh = generate_structured(domain, n);
  const MixedSolution mixed = solve_mixed(assemble_mixed(mesh, g), cfg);
  const BoundaryProjection gh = boundary_l2_projection(g, mesh);
  const P1System p1 = assemble_p1_dirichlet(mesh, gh);
  const std::vector<double> nodal = p1.expand(solve_spd(p1, cfg).x);

  ComparisonResult out;
  std::filesystem::create_directories(out_dir);
  out.mixed_csv = out_dir / fmt::format("mixed_{}_n{}.csv", to_string(domain), n);
  out.p1_csv = out_dir / fmt::format("p1_{}_n{}.csv", to_string(domain), n);

  std::ofstream mixed_os(out.mixed_csv);
  std::ofstream p1_os(out.p1_csv);
  if (!mixed_os || !p1_os) throw Error(fmt::format("cannot write into {}", out_dir.string()));
  mixed_os << "cx,cy,u\n";
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Point2 c = centroid(mesh.triangle(t));
    mixed_os << fmt::format("{:.6f},{:.6f},{:.6f}\n", c.x, c.y, mixed.u[t]);
    if (mesh.touches_origin(t))
      out.mixed_peak_near_origin = std::max(out.mixed_peak_near_origin, std::abs(mixed.u[t]));
    ++out.mixed_rows;
  }
  p1_os << "x,y,u\n";
  const double radius = 2.0 / n;
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    const Point2 x = mesh.vertices()[v];
    p1_os << fmt::format("{:.6f},{:.6f},{:.6f}\n", x.x, x.y, nodal[v]);
    if (norm(x) <= radius + 1e-12)
      out.p1_peak_near_origin = std::max(out.p1_peak_near_origin, std::abs(nodal[v]));
    ++out.p1_rows;
  }
  return out;
}

ComparisonResult compare_p1(Domain domain, int n, double alpha, const std::filesystem::path& out_dir,
                            const SolverConfig& cfg) {
  return compare_p1(domain, n, BoundaryData::from(SingularHarmonic(alpha, domain)), out_dir, cfg);
}

}  // namespace rtmixed
