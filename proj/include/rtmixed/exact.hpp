#pragma once

#include <functional>

#include "rtmixed/geometry.hpp"
#include "rtmixed/mesh.hpp"
#include "rtmixed/quadrature.hpp"

namespace rtmixed {

/// u(r, theta) = r^alpha sin(alpha theta), harmonic for r > 0 and zero on the
/// ray theta = 0. The angle is measured on the domain's sector at the origin:
/// [0, pi] for the rectangle, [0, 3 pi / 2] for the L-shape.
class SingularHarmonic {
 public:
  SingularHarmonic(double alpha, Domain domain);

  double alpha() const { return alpha_; }
  Domain domain() const { return domain_; }
  double theta_max() const;

  /// Polar angle on the domain's branch. Throws DomainError at the origin.
  double angle(Point2 x) const;
  double value(Point2 x) const;
  Point2 gradient(Point2 x) const;

 private:
  double alpha_;
  Domain domain_;
};

/// Dirichlet data g on the boundary. `singular_at_origin` selects graded
/// quadrature on the boundary edges incident to the origin.
struct BoundaryData {
  ScalarField g;
  bool singular_at_origin = false;
  /// Supremum of the Sobolev indices t with g in H^t (alpha + 1/2 for r^alpha data).
  double smoothness = 0.0;
  GradedScheme scheme{};

  static BoundaryData from(const SingularHarmonic& sol);
  static BoundaryData smooth(ScalarField g);
};

/// g at a + s (b - a). Throws DomainError for s outside [0, 1].
double trace_on_edge(const BoundaryData& data, Point2 a, Point2 b, double s);

}  // namespace rtmixed
