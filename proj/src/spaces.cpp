#include "rtmixed/spaces.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "rtmixed/error.hpp"

namespace rtmixed {

Point2 rt0_basis(const Mesh& mesh, int t, int k, Point2 x) {
  const Point2 p = mesh.vertices()[mesh.triangles()[t][k]];
  return (mesh.edge_signs(t)[k] / (2.0 * mesh.area(t))) * (x - p);
}

double rt0_divergence(const Mesh& mesh, int t, int k) {
  return mesh.edge_signs(t)[k] / mesh.area(t);
}

Point2 rt0_evaluate(const Mesh& mesh, std::span<const double> coeffs, int t, Point2 x) {
  const auto& edges = mesh.triangle_edges(t);
  const auto& signs = mesh.edge_signs(t);
  const auto& tri = mesh.triangles()[t];
  const auto verts = mesh.vertices();
  Point2 v{};
  for (int k = 0; k < 3; ++k) v = v + (signs[k] * coeffs[edges[k]]) * (x - verts[tri[k]]);
  return (1.0 / (2.0 * mesh.area(t))) * v;
}

std::vector<double> rt0_cell_divergence(const Mesh& mesh, std::span<const double> coeffs) {
  std::vector<double> div(mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& edges = mesh.triangle_edges(t);
    const auto& signs = mesh.edge_signs(t);
    double flux = 0.0;
    for (int k = 0; k < 3; ++k) flux += signs[k] * coeffs[edges[k]];
    div[t] = flux / mesh.area(t);
  }
  return div;
}

std::vector<double> rt0_interpolate(const VectorField& v, const Mesh& mesh, const EdgeRule& rule) {
  std::vector<double> coeffs(mesh.num_edges());
  const auto verts = mesh.vertices();
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edges()[e];
    const Point2 n = edge.normal;
    coeffs[e] = integrate_edge([&](Point2 x) { return dot(v(x), n); },
                               verts[edge.vertices[0]], verts[edge.vertices[1]], rule);
  }
  return coeffs;
}

double integrate_cell(const ScalarField& f, const Mesh& mesh, int t, const CellQuadrature& q) {
  if (q.singular) {
    const int k = mesh.origin_local_vertex(t);
    if (k >= 0) return integrate_triangle_graded(f, mesh.triangle(t), k, *q.singular);
  }
  return integrate_triangle(f, mesh.triangle(t), q.rule);
}

std::vector<double> dg0_project(const ScalarField& f, const Mesh& mesh, const CellQuadrature& q) {
  std::vector<double> values(mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t)
    values[t] = integrate_cell(f, mesh, t, q) / mesh.area(t);
  return values;
}

std::array<Point2, 3> p1_gradients(const Triangle& tri) {
  const double two_area = 2.0 * signed_area(tri);
  std::array<Point2, 3> g;
  for (int k = 0; k < 3; ++k) {
    // Gradient of lambda_k is the inward normal of the opposite edge / height.
    const Point2 e = tri[(k + 2) % 3] - tri[(k + 1) % 3];
    g[k] = {-e.y / two_area, e.x / two_area};
  }
  return g;
}

double p1_evaluate(const Mesh& mesh, std::span<const double> nodal, int t, Point2 x) {
  const Triangle tri = mesh.triangle(t);
  const double two_area = 2.0 * signed_area(tri);
  const auto& v = mesh.triangles()[t];
  double value = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double lambda = cross(tri[(k + 2) % 3] - tri[(k + 1) % 3], x - tri[(k + 1) % 3]);
    value += nodal[v[k]] * lambda / two_area;
  }
  return value;
}

double integrate_boundary_edge(const ScalarField& f, const Mesh& mesh, int e,
                               const BoundaryData& data, const EdgeRule& rule) {
  const Edge& edge = mesh.edges()[e];
  const Point2 a = mesh.vertices()[edge.vertices[0]];
  const Point2 b = mesh.vertices()[edge.vertices[1]];
  if (data.singular_at_origin) {
    if (edge.vertices[0] == mesh.origin_vertex()) return integrate_edge_graded(f, a, b, data.scheme);
    if (edge.vertices[1] == mesh.origin_vertex()) return integrate_edge_graded(f, b, a, data.scheme);
  }
  return integrate_edge(f, a, b, rule);
}

BoundaryTraceSpace::BoundaryTraceSpace(const Mesh& mesh)
    : loop_(boundary_loop(mesh)), vertex_dof_(mesh.num_vertices(), -1) {
  dof_vertex_.reserve(loop_.size());
  for (int e : loop_) {
    const int v = mesh.edges()[e].vertices[0];
    vertex_dof_[v] = static_cast<int>(dof_vertex_.size());
    dof_vertex_.push_back(v);
    points_.push_back(mesh.vertices()[v]);
  }
}

double BoundaryTraceSpace::evaluate(std::span<const double> coeffs, Point2 x) const {
  const int n = size();
  for (int i = 0; i < n; ++i) {
    const Point2 a = points_[i];
    const Point2 b = points_[(i + 1) % n];
    const Point2 d = b - a;
    const double len2 = dot(d, d);
    const double s = dot(x - a, d) / len2;
    if (s < -1e-12 || s > 1.0 + 1e-12) continue;
    if (std::abs(cross(d, x - a)) > 1e-12 * len2) continue;
    const double sc = std::clamp(s, 0.0, 1.0);
    return (1.0 - sc) * coeffs[i] + sc * coeffs[(i + 1) % n];
  }
  throw DomainError(fmt::format("point ({}, {}) is not on the boundary", x.x, x.y));
}

namespace {

// Loads <f, phi_i> for f = g: per edge the hats are (1 - s) and s.
std::vector<double> boundary_load(const BoundaryData& g, const BoundaryTraceSpace& space,
                                  const Mesh& mesh, const EdgeRule& rule) {
  const int n = space.size();
  std::vector<double> load(n, 0.0);
  const auto loop = space.loop();
  for (int i = 0; i < n; ++i) {
    const int e = loop[i];
    const Point2 a = space.dof_point(i);
    const Point2 d = space.dof_point((i + 1) % n) - a;
    const double len2 = dot(d, d);
    const auto hat_end = [&](Point2 x) { return dot(x - a, d) / len2; };
    load[i] += integrate_boundary_edge([&](Point2 x) { return g.g(x) * (1.0 - hat_end(x)); }, mesh, e,
                                       g, rule);
    load[(i + 1) % n] +=
        integrate_boundary_edge([&](Point2 x) { return g.g(x) * hat_end(x); }, mesh, e, g, rule);
  }
  return load;
}

// Applies the boundary mass matrix (cyclic tridiagonal) to c.
std::vector<double> boundary_mass_apply(const BoundaryTraceSpace& space,
                                        std::span<const double> c) {
  const int n = space.size();
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    const double len = norm(space.dof_point(j) - space.dof_point(i));
    out[i] += len * (c[i] / 3.0 + c[j] / 6.0);
    out[j] += len * (c[i] / 6.0 + c[j] / 3.0);
  }
  return out;
}

}  // namespace

BoundaryProjection boundary_l2_projection(const BoundaryData& g, const Mesh& mesh) {
  BoundaryTraceSpace space(mesh);
  const int n = space.size();
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(4 * n);
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    const double len = norm(space.dof_point(j) - space.dof_point(i));
    entries.emplace_back(i, i, len / 3.0);
    entries.emplace_back(j, j, len / 3.0);
    entries.emplace_back(i, j, len / 6.0);
    entries.emplace_back(j, i, len / 6.0);
  }
  Eigen::SparseMatrix<double> mass(n, n);
  mass.setFromTriplets(entries.begin(), entries.end());

  const std::vector<double> load = boundary_load(g, space, mesh, default_edge_rule());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(mass);
  if (ldlt.info() != Eigen::Success) throw SolverError("boundary mass matrix is singular", 0.0);
  const Eigen::VectorXd x = ldlt.solve(Eigen::Map<const Eigen::VectorXd>(load.data(), n));
  return {std::move(space), std::vector<double>(x.data(), x.data() + n)};
}

std::vector<double> projection_residuals(const BoundaryData& g, const BoundaryProjection& gh,
                                         const Mesh& mesh, const EdgeRule& edge_rule) {
  std::vector<double> r = boundary_load(g, gh.space, mesh, edge_rule);
  const std::vector<double> m = boundary_mass_apply(gh.space, gh.coeffs);
  for (size_t i = 0; i < r.size(); ++i) r[i] -= m[i];
  return r;
}

double boundary_l2_norm(const BoundaryData& g, const Mesh& mesh) {
  double sum = 0.0;
  for (int e : boundary_loop(mesh))
    sum += integrate_boundary_edge([&](Point2 x) { const double v = g.g(x); return v * v; }, mesh, e,
                                   g);
  return std::sqrt(sum);
}

double boundary_l2_norm(const BoundaryProjection& gh) {
  const std::vector<double> m = boundary_mass_apply(gh.space, gh.coeffs);
  double sum = 0.0;
  for (size_t i = 0; i < m.size(); ++i) sum += gh.coeffs[i] * m[i];
  return std::sqrt(sum);
}

}  // namespace rtmixed
