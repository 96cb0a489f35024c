#include "rtmixed/assembly.hpp"

#include <fmt/format.h>
#include <ostream>

#include "rtmixed/error.hpp"

namespace rtmixed {

SparseMatrix SparseTriplets::compress() const {
  SparseMatrix a(rows_, cols_);
  a.setFromTriplets(entries_.begin(), entries_.end());
  a.makeCompressed();
  return a;
}

SparseMatrix MixedSystem::block_matrix() const {
  const int nf = num_fluxes();
  const int nc = num_cells();
  SparseTriplets t(nf + nc, nf + nc);
  t.reserve(mass.nonZeros() + 2 * divergence.nonZeros());
  for (int k = 0; k < mass.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(mass, k); it; ++it) t.add(it.row(), it.col(), it.value());
  for (int k = 0; k < divergence.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(divergence, k); it; ++it) {
      t.add(nf + it.row(), it.col(), it.value());
      t.add(it.col(), nf + it.row(), it.value());
    }
  return t.compress();
}

Vector MixedSystem::block_rhs() const {
  Vector rhs(num_fluxes() + num_cells());
  rhs << boundary_load, -source_load;
  return rhs;
}

namespace {

MixedSystem assemble_operators(const Mesh& mesh) {
  const int ne = mesh.num_edges();
  const int nt = mesh.num_triangles();
  SparseTriplets mass(ne, ne);
  SparseTriplets div(nt, ne);
  mass.reserve(9 * static_cast<size_t>(nt));
  div.reserve(3 * static_cast<size_t>(nt));

  // Products of two RT0 functions are quadratic on a cell.
  const TriangleRule rule = triangle_rule(2);
  for (int t = 0; t < nt; ++t) {
    const Triangle tri = mesh.triangle(t);
    const double area = signed_area(tri);
    const auto& edges = mesh.triangle_edges(t);
    const auto& signs = mesh.edge_signs(t);
    double local[3][3] = {};
    for (size_t q = 0; q < rule.size(); ++q) {
      const Point2 x = from_barycentric(tri, rule.points[q]);
      for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) local[i][j] += rule.weights[q] * dot(x - tri[i], x - tri[j]);
    }
    const double scale = area / (4.0 * area * area);
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) local[j][i] = local[i][j] = local[i][j] * scale * signs[i] * signs[j];
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) mass.add(edges[i], edges[j], local[i][j]);
      div.add(t, edges[i], signs[i]);
    }
  }

  MixedSystem sys;
  sys.mass = mass.compress();
  sys.divergence = div.compress();
  sys.boundary_load = Vector::Zero(ne);
  sys.source_load = Vector::Zero(nt);
  return sys;
}

void assemble_boundary_load(const Mesh& mesh, const BoundaryData& g, MixedSystem& sys) {
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edges()[e];
    if (!edge.on_boundary()) continue;
    // phi_e . n = 1/|e| on its own boundary edge (unit flux, outward normal).
    try {
      sys.boundary_load[e] = integrate_boundary_edge(g.g, mesh, e, g) / edge.length;
    } catch (const QuadratureError& err) {
      throw QuadratureError(fmt::format("boundary edge {}: {}", e, err.what()));
    }
  }
}

}  // namespace

MixedSystem assemble_mixed(const Mesh& mesh, const BoundaryData& g, const ScalarField& f) {
  MixedSystem sys = assemble_operators(mesh);
  assemble_boundary_load(mesh, g, sys);
  if (f) {
    CellQuadrature q;
    for (int t = 0; t < mesh.num_triangles(); ++t) sys.source_load[t] = integrate_cell(f, mesh, t, q);
  }
  return sys;
}

MixedSystem assemble_mixed(const Mesh& mesh, const BoundaryData& g) {
  return assemble_mixed(mesh, g, ScalarField{});
}

std::vector<double> P1System::expand(const Vector& interior) const {
  std::vector<double> nodal = boundary_values;
  for (size_t i = 0; i < interior_vertices.size(); ++i) nodal[interior_vertices[i]] = interior[i];
  return nodal;
}

P1System assemble_p1_dirichlet(const Mesh& mesh, std::span<const double> boundary_values,
                               const ScalarField& f) {
  const int nv = mesh.num_vertices();
  if (static_cast<int>(boundary_values.size()) != nv)
    throw DomainError(fmt::format("expected {} boundary values, got {}", nv, boundary_values.size()));

  P1System sys;
  std::vector<int> unknown(nv, -1);
  sys.boundary_values.assign(nv, 0.0);
  for (int v = 0; v < nv; ++v) {
    if (mesh.is_boundary_vertex(v)) {
      sys.boundary_values[v] = boundary_values[v];
    } else {
      unknown[v] = static_cast<int>(sys.interior_vertices.size());
      sys.interior_vertices.push_back(v);
    }
  }
  const int n = static_cast<int>(sys.interior_vertices.size());
  SparseTriplets a(n, n);
  a.reserve(9 * static_cast<size_t>(mesh.num_triangles()));
  sys.rhs = Vector::Zero(n);
  const TriangleRule& rule = default_triangle_rule();

  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Triangle tri = mesh.triangle(t);
    const double area = signed_area(tri);
    const auto grads = p1_gradients(tri);
    const auto& v = mesh.triangles()[t];
    double load[3] = {};
    if (f) {
      for (size_t q = 0; q < rule.size(); ++q) {
        const double fx = f(from_barycentric(tri, rule.points[q]));
        for (int k = 0; k < 3; ++k) load[k] += rule.weights[q] * fx * rule.points[q][k] * area;
      }
    }
    for (int i = 0; i < 3; ++i) {
      const int row = unknown[v[i]];
      if (row < 0) continue;
      sys.rhs[row] += load[i];
      for (int j = 0; j < 3; ++j) {
        const double kij = area * dot(grads[i], grads[j]);
        const int col = unknown[v[j]];
        if (col >= 0)
          a.add(row, col, kij);
        else
          sys.rhs[row] -= kij * sys.boundary_values[v[j]];
      }
    }
  }
  sys.stiffness = a.compress();
  return sys;
}

P1System assemble_p1_dirichlet(const Mesh& mesh, const BoundaryProjection& gh,
                               const ScalarField& f) {
  std::vector<double> values(mesh.num_vertices(), 0.0);
  for (int d = 0; d < gh.space.size(); ++d) values[gh.space.dof_vertex(d)] = gh.coeffs[d];
  return assemble_p1_dirichlet(mesh, values, f);
}

void write_coordinate(std::ostream& os, const SparseMatrix& a) {
  os << fmt::format("% {} {} {}\n", a.rows(), a.cols(), a.nonZeros());
  for (int k = 0; k < a.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(a, k); it; ++it)
      os << fmt::format("{} {} {:.17g}\n", it.row(), it.col(), it.value());
}

}  // namespace rtmixed
