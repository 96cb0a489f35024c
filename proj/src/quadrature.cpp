#include "rtmixed/quadrature.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>
#include <utility>

#include "rtmixed/error.hpp"

namespace rtmixed {

namespace {

double checked(double v, Point2 x) {
  if (!std::isfinite(v))
    throw QuadratureError(fmt::format("non-finite integrand value at ({:.17g}, {:.17g})", x.x, x.y));
  return v;
}

double checked(double v, double s) {
  if (!std::isfinite(v))
    throw QuadratureError(fmt::format("non-finite integrand value at parameter {:.17g}", s));
  return v;
}

double apply_rule(const std::function<double(double)>& f, double lo, double hi,
                  const EdgeRule& rule) {
  const double len = hi - lo;
  double sum = 0.0;
  for (size_t i = 0; i < rule.size(); ++i) {
    const double s = lo + len * rule.points[i];
    sum += rule.weights[i] * checked(f(s), s);
  }
  return sum * len;
}

}  // namespace

EdgeRule gauss_legendre(int n) {
  if (n < 1) throw QuadratureError(fmt::format("Gauss-Legendre needs n >= 1, got {}", n));
  // P_n(x) and P_n'(x) by the three-term recurrence.
  const auto legendre = [n](double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
  };
  EdgeRule rule;
  rule.degree = 2 * n - 1;
  rule.points.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(x).second;
    // Map [-1, 1] -> [0, 1], ascending.
    rule.points[n - 1 - i] = 0.5 * (x + 1.0);
    rule.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

TriangleRule triangle_rule(int degree) {
  if (degree < 1 || degree > 10)
    throw QuadratureError(fmt::format("triangle rules ship for degree 1..10, got {}", degree));
  TriangleRule rule;
  rule.degree = degree;
  if (degree == 1) {
    rule.points = {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}};
    rule.weights = {1.0};
    return rule;
  }
  if (degree == 2) {
    constexpr double a = 1.0 / 6.0, b = 2.0 / 3.0;
    rule.points = {{b, a, a}, {a, b, a}, {a, a, b}};
    rule.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    return rule;
  }
  // Collapsed product: (xi, eta) = (s (1 - t), s t), Jacobian s.
  const EdgeRule radial = gauss_legendre((degree + 2 + 1) / 2);
  const EdgeRule angular = gauss_legendre((degree + 1 + 1) / 2);
  for (size_t i = 0; i < radial.size(); ++i) {
    const double s = radial.points[i];
    for (size_t j = 0; j < angular.size(); ++j) {
      const double t = angular.points[j];
      const double xi = s * (1.0 - t), eta = s * t;
      rule.points.push_back({1.0 - xi - eta, xi, eta});
      rule.weights.push_back(2.0 * radial.weights[i] * angular.weights[j] * s);
    }
  }
  return rule;
}

const TriangleRule& default_triangle_rule() {
  static const TriangleRule rule = triangle_rule(kDefaultTriangleDegree);
  return rule;
}

const EdgeRule& default_edge_rule() {
  static const EdgeRule rule = gauss_legendre(kDefaultEdgePoints);
  return rule;
}

GradedScheme default_graded_scheme(double alpha) {
  GradedScheme scheme;
  if (alpha > -0.4) {
    scheme.ratio = 0.25;
    scheme.levels = 20;
  }
  return scheme;
}

double integrate_triangle(const ScalarField& f, const Triangle& tri, const TriangleRule& rule) {
  double sum = 0.0;
  for (size_t i = 0; i < rule.size(); ++i) {
    const Point2 x = from_barycentric(tri, rule.points[i]);
    sum += rule.weights[i] * checked(f(x), x);
  }
  return sum * std::abs(signed_area(tri));
}

double integrate_edge(const ScalarField& f, Point2 a, Point2 b, const EdgeRule& rule) {
  double sum = 0.0;
  for (size_t i = 0; i < rule.size(); ++i) {
    const Point2 x = a + rule.points[i] * (b - a);
    sum += rule.weights[i] * checked(f(x), x);
  }
  return sum * norm(b - a);
}

double integrate_unit_graded(const std::function<double(double)>& f, const GradedScheme& scheme) {
  if (!(scheme.ratio > 0.0 && scheme.ratio < 1.0) || scheme.levels < 1)
    throw QuadratureError(
        fmt::format("invalid graded scheme: ratio {} levels {}", scheme.ratio, scheme.levels));
  std::vector<double> band(scheme.levels);
  double hi = 1.0;
  for (int k = 0; k < scheme.levels; ++k) {
    const double lo = hi * scheme.ratio;
    band[k] = apply_rule(f, lo, hi, scheme.base);
    hi = lo;
  }

  // Geometric tail over [0, hi]: band contributions of a power law decay by a
  // constant factor, so the remainder is band * rho / (1 - rho).
  double tail = 0.0;
  bool extrapolated = false;
  const int L = scheme.levels;
  if (L >= 3 && band[L - 2] != 0.0 && band[L - 3] != 0.0) {
    const double rho1 = band[L - 1] / band[L - 2];
    const double rho2 = band[L - 2] / band[L - 3];
    if (rho1 > 0.0 && rho1 < 1.0 && std::abs(rho1 - rho2) <= 1e-6 * rho1) {
      tail = band[L - 1] * rho1 / (1.0 - rho1);
      extrapolated = true;
    }
  }
  if (!extrapolated) tail = apply_rule(f, 0.0, hi, scheme.base);

  // Sum innermost first: smallest magnitudes accumulate before the large ones.
  double sum = tail;
  for (int k = L - 1; k >= 0; --k) sum += band[k];
  return sum;
}

double integrate_edge_graded(const ScalarField& f, Point2 singular, Point2 other,
                             const GradedScheme& scheme) {
  const Point2 d = other - singular;
  return norm(d) * integrate_unit_graded([&](double s) { return f(singular + s * d); }, scheme);
}

double integrate_triangle_graded(const ScalarField& f, const Triangle& tri, int singular_vertex,
                                 const GradedScheme& scheme) {
  if (singular_vertex < 0 || singular_vertex > 2)
    throw QuadratureError(fmt::format("singular vertex must be 0, 1 or 2, got {}", singular_vertex));
  const Point2 a = tri[singular_vertex];
  const Point2 b = tri[(singular_vertex + 1) % 3];
  const Point2 c = tri[(singular_vertex + 2) % 3];
  const double jac = 2.0 * std::abs(signed_area(tri));
  const EdgeRule& angular = scheme.base;
  const auto radial = [&](double s) {
    double sum = 0.0;
    for (size_t j = 0; j < angular.size(); ++j) {
      const Point2 x = a + s * (b - a) + (s * angular.points[j]) * (c - b);
      sum += angular.weights[j] * checked(f(x), x);
    }
    return jac * s * sum;
  };
  return integrate_unit_graded(radial, scheme);
}

}  // namespace rtmixed
