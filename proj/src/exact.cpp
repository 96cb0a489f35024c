#include "rtmixed/exact.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>

#include "rtmixed/error.hpp"

namespace rtmixed {

SingularHarmonic::SingularHarmonic(double alpha, Domain domain) : alpha_(alpha), domain_(domain) {}

double SingularHarmonic::theta_max() const {
  return domain_ == Domain::Rectangle ? std::numbers::pi : 1.5 * std::numbers::pi;
}

double SingularHarmonic::angle(Point2 x) const {
  if (x.x == 0.0 && x.y == 0.0)
    throw DomainError("singular harmonic is undefined at the origin");
  // y == 0, x < 0 is the theta = pi edge; pin it so -0.0 cannot flip the branch.
  if (x.y == 0.0) return x.x > 0.0 ? 0.0 : std::numbers::pi;
  double theta = std::atan2(x.y, x.x);
  if (theta < 0.0) theta += 2.0 * std::numbers::pi;
  return std::min(theta, theta_max());
}

double SingularHarmonic::value(Point2 x) const {
  const double r = norm(x);
  return std::pow(r, alpha_) * std::sin(alpha_ * angle(x));
}

Point2 SingularHarmonic::gradient(Point2 x) const {
  const double r = norm(x);
  const double theta = angle(x);
  const double rpow = std::pow(r, alpha_ - 1.0);
  const double u_r = alpha_ * rpow * std::sin(alpha_ * theta);
  const double u_theta_over_r = alpha_ * rpow * std::cos(alpha_ * theta);
  const double c = std::cos(theta), s = std::sin(theta);
  return {u_r * c - u_theta_over_r * s, u_r * s + u_theta_over_r * c};
}

BoundaryData BoundaryData::from(const SingularHarmonic& sol) {
  BoundaryData data;
  data.g = [sol](Point2 x) { return sol.value(x); };
  data.singular_at_origin = true;
  // g ~ r^alpha on the boundary lies in H^t for every t < alpha + 1/2; store
  // the supremum.
  data.smoothness = std::max(0.0, sol.alpha() + 0.5);
  data.scheme = default_graded_scheme(sol.alpha());
  return data;
}

BoundaryData BoundaryData::smooth(ScalarField g) {
  BoundaryData data;
  data.g = std::move(g);
  return data;
}

double trace_on_edge(const BoundaryData& data, Point2 a, Point2 b, double s) {
  if (!(s >= 0.0 && s <= 1.0))
    throw DomainError(fmt::format("edge parameter {} outside [0, 1]", s));
  return data.g(a + s * (b - a));
}

}  // namespace rtmixed
