#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "rtmixed/exact.hpp"
#include "rtmixed/geometry.hpp"
#include "rtmixed/mesh.hpp"
#include "rtmixed/quadrature.hpp"

namespace rtmixed {

// RT0: one dof per edge, the total flux across the edge along its global
// normal. On triangle K the basis function of local edge k is
//   phi_k(x) = sign_k / (2|K|) (x - p_k),
// p_k the vertex opposite edge k, so that the flux of phi_k through edge k is
// sign_k and through the other two edges is zero.

Point2 rt0_basis(const Mesh& mesh, int t, int k, Point2 x);
double rt0_divergence(const Mesh& mesh, int t, int k);
/// Value on triangle t of the RT0 field with edge coefficients `coeffs`.
Point2 rt0_evaluate(const Mesh& mesh, std::span<const double> coeffs, int t, Point2 x);
/// Cellwise divergence of an RT0 field.
std::vector<double> rt0_cell_divergence(const Mesh& mesh, std::span<const double> coeffs);

/// Canonical interpolant: coefficient of edge e is the flux of v through e.
std::vector<double> rt0_interpolate(const VectorField& v, const Mesh& mesh,
                                    const EdgeRule& rule = default_edge_rule());

struct CellQuadrature {
  TriangleRule rule = default_triangle_rule();
  /// Graded scheme used on cells with a vertex at the origin, if set.
  std::optional<GradedScheme> singular;
};

/// Integral of f over triangle t, graded toward the origin when requested.
double integrate_cell(const ScalarField& f, const Mesh& mesh, int t, const CellQuadrature& q);

/// DG0 projection: cell averages.
std::vector<double> dg0_project(const ScalarField& f, const Mesh& mesh,
                                const CellQuadrature& q = {});

/// Gradients of the three P1 hat functions on a triangle.
std::array<Point2, 3> p1_gradients(const Triangle& tri);

/// Value of the P1 field with nodal values `nodal` at point x of triangle t.
double p1_evaluate(const Mesh& mesh, std::span<const double> nodal, int t, Point2 x);

/// Integral of f along boundary edge e; graded toward the origin when the data
/// is singular there and the edge is incident to it.
double integrate_boundary_edge(const ScalarField& f, const Mesh& mesh, int e,
                               const BoundaryData& data,
                               const EdgeRule& rule = default_edge_rule());

/// Continuous piecewise-linear functions on the boundary loop: one dof per
/// boundary vertex, shared across corners.
class BoundaryTraceSpace {
 public:
  explicit BoundaryTraceSpace(const Mesh& mesh);

  int size() const { return static_cast<int>(dof_vertex_.size()); }
  /// Boundary edges in loop order; edge i joins dof i and dof (i + 1) % size.
  std::span<const int> loop() const { return loop_; }
  int dof_vertex(int dof) const { return dof_vertex_[dof]; }
  /// Dof index of a mesh vertex, -1 for interior vertices.
  int vertex_dof(int vertex) const { return vertex_dof_[vertex]; }
  Point2 dof_point(int dof) const { return points_[dof]; }

  /// Value at a boundary point (on any boundary segment of the mesh).
  /// Throws DomainError if x is not on the boundary.
  double evaluate(std::span<const double> coeffs, Point2 x) const;

 private:
  std::vector<int> loop_;
  std::vector<int> dof_vertex_;
  std::vector<int> vertex_dof_;
  std::vector<Point2> points_;
};

/// g^h: the L^2(Gamma) projection of g onto the boundary trace space.
struct BoundaryProjection {
  BoundaryTraceSpace space;
  std::vector<double> coeffs;

  double evaluate(Point2 x) const { return space.evaluate(coeffs, x); }
};

BoundaryProjection boundary_l2_projection(const BoundaryData& g, const Mesh& mesh);

/// <g - g^h, phi_i> for every boundary hat, evaluated with `data.scheme` and
/// `edge_rule`, independently of the quadrature that built the projection.
std::vector<double> projection_residuals(const BoundaryData& g, const BoundaryProjection& gh,
                                         const Mesh& mesh, const EdgeRule& edge_rule);

/// ||g||_{L^2(Gamma)}.
double boundary_l2_norm(const BoundaryData& g, const Mesh& mesh);

/// ||g^h||_{L^2(Gamma)}, exact for piecewise linears.
double boundary_l2_norm(const BoundaryProjection& gh);

}  // namespace rtmixed
