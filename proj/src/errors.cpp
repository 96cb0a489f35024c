#include "rtmixed/errors.hpp"

#include <cmath>
#include <fmt/format.h>
#include <ostream>

#include "rtmixed/error.hpp"

namespace rtmixed {

double l2_error_u(std::span<const double> uh, const SingularHarmonic& sol, const Mesh& mesh,
                  const CellQuadrature& q) {
  if (static_cast<int>(uh.size()) != mesh.num_triangles())
    throw DomainError(fmt::format("expected {} cell values, got {}", mesh.num_triangles(), uh.size()));
  double sum = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const double c = uh[t];
    sum += integrate_cell(
        [&](Point2 x) {
          const double d = sol.value(x) - c;
          return d * d;
        },
        mesh, t, q);
  }
  return std::sqrt(sum);
}

double l2_error_u(std::span<const double> uh, const SingularHarmonic& sol, const Mesh& mesh) {
  return l2_error_u(uh, sol, mesh, CellQuadrature{default_triangle_rule(), default_graded_scheme(sol.alpha())});
}

SigmaReferenceSolver::SigmaReferenceSolver(Domain domain, int fine_n, const SolverConfig& cfg)
    : fine_(std::make_shared<const Mesh>(generate_structured(domain, fine_n))),
      unknown_(fine_->num_vertices(), -1),
      solver_([&] {
        const Mesh& fine = *fine_;
        const int nv = fine.num_vertices();
        int n = 0;
        for (int v = 0; v < nv; ++v)
          if (!fine.is_boundary_vertex(v)) unknown_[v] = n++;
        SparseTriplets coupling(n, nv);
        SparseTriplets interior(n, n);
        coupling.reserve(9 * static_cast<size_t>(fine.num_triangles()));
        interior.reserve(9 * static_cast<size_t>(fine.num_triangles()));
        for (int t = 0; t < fine.num_triangles(); ++t) {
          const Triangle tri = fine.triangle(t);
          const double area = signed_area(tri);
          const auto grads = p1_gradients(tri);
          const auto& vs = fine.triangles()[t];
          for (int i = 0; i < 3; ++i) {
            const int row = unknown_[vs[i]];
            if (row < 0) continue;
            for (int j = 0; j < 3; ++j) {
              const double kij = area * dot(grads[i], grads[j]);
              const int col = unknown_[vs[j]];
              if (col >= 0)
                interior.add(row, col, kij);
              else
                coupling.add(row, vs[j], kij);
            }
          }
        }
        coupling_ = coupling.compress();
        return SpdSolver(interior.compress(), cfg);
      }()) {}

SigmaReference SigmaReferenceSolver::build(const BoundaryProjection& coarse_gh, int coarse_n) const {
  const Mesh& fine = *fine_;
  if (coarse_n < 1 || fine.level() % coarse_n != 0)
    throw MeshError(fmt::format("reference level {} is not nested in coarse level {}", fine.level(),
                                coarse_n));
  const int nv = fine.num_vertices();
  Vector g = Vector::Zero(nv);
  for (int v = 0; v < nv; ++v)
    if (fine.is_boundary_vertex(v)) g[v] = coarse_gh.evaluate(fine.vertices()[v]);

  const Vector rhs = -(coupling_ * g);
  const SpdSolution sol = solver_.solve(rhs);
  std::vector<double> nodal(g.data(), g.data() + nv);
  for (int v = 0; v < nv; ++v)
    if (unknown_[v] >= 0) nodal[v] = sol.x[unknown_[v]];

  SigmaReference ref{fine_, std::vector<Point2>(fine.num_triangles()), sol.residual};
  for (int t = 0; t < fine.num_triangles(); ++t) {
    const auto grads = p1_gradients(fine.triangle(t));
    const auto& vs = fine.triangles()[t];
    Point2 grad{};
    for (int k = 0; k < 3; ++k) grad = grad + nodal[vs[k]] * grads[k];
    ref.gradient[t] = grad;
  }
  return ref;
}

SigmaReference build_sigma_reference(const BoundaryProjection& coarse_gh, int coarse_n,
                                     Domain domain, int fine_n, const SolverConfig& cfg) {
  return SigmaReferenceSolver(domain, fine_n, cfg).build(coarse_gh, coarse_n);
}

double l2_error_sigma(std::span<const double> sigma_h, const Mesh& coarse,
                      const SigmaReference& ref) {
  if (static_cast<int>(sigma_h.size()) != coarse.num_edges())
    throw DomainError(fmt::format("expected {} edge fluxes, got {}", coarse.num_edges(), sigma_h.size()));
  const Mesh& fine = *ref.fine;
  const std::vector<int> parent = parent_map(coarse, fine);
  // The difference is linear per fine cell, its square quadratic.
  const TriangleRule rule = triangle_rule(2);
  double sum = 0.0;
  for (int t = 0; t < fine.num_triangles(); ++t) {
    const Triangle tri = fine.triangle(t);
    double cell = 0.0;
    for (size_t q = 0; q < rule.size(); ++q) {
      const Point2 x = from_barycentric(tri, rule.points[q]);
      const Point2 d = rt0_evaluate(coarse, sigma_h, parent[t], x) - ref.gradient[t];
      cell += rule.weights[q] * dot(d, d);
    }
    sum += cell * signed_area(tri);
  }
  return std::sqrt(sum);
}

std::vector<double> rates(std::span<const double> errors) {
  std::vector<double> out;
  for (size_t i = 0; i < errors.size(); ++i) {
    if (!(errors[i] > 0.0))
      throw DomainError(fmt::format("rates need positive errors, entry {} is {}", i, errors[i]));
    if (i > 0) out.push_back(std::log(errors[i - 1] / errors[i]) / std::log(2.0));
  }
  return out;
}

void ConvergenceReport::compute_rates() {
  for (size_t i = 1; i < rows.size(); ++i) {
    const double ru = rates(std::vector{rows[i - 1].err_u, rows[i].err_u})[0];
    rows[i].rate_u = ru;
    if (rows[i - 1].err_sigma && rows[i].err_sigma)
      rows[i].rate_sigma = rates(std::vector{*rows[i - 1].err_sigma, *rows[i].err_sigma})[0];
  }
}

void ConvergenceReport::write_csv(std::ostream& os) const {
  const auto opt = [](const std::optional<double>& v) {
    return v ? fmt::format("{:.6f}", *v) : std::string{};
  };
  os << "level,h,err_u,rate_u,err_sigma,rate_sigma\n";
  for (const auto& r : rows)
    os << fmt::format("{},{:.6f},{:.6f},{},{},{}\n", r.level, r.h, r.err_u, opt(r.rate_u),
                      opt(r.err_sigma), opt(r.rate_sigma));
}

}  // namespace rtmixed
