#pragma once

#include <array>
#include <cmath>

namespace rtmixed {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Point2 a, Point2 b) = default;
};

constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }

using Triangle = std::array<Point2, 3>;

/// Signed area; positive for counterclockwise vertex order.
constexpr double signed_area(const Triangle& t) {
  return 0.5 * cross(t[1] - t[0], t[2] - t[0]);
}

constexpr Point2 centroid(const Triangle& t) {
  return {(t[0].x + t[1].x + t[2].x) / 3.0, (t[0].y + t[1].y + t[2].y) / 3.0};
}

/// Maps barycentric coordinates (l0, l1, l2) to a physical point.
constexpr Point2 from_barycentric(const Triangle& t, const std::array<double, 3>& l) {
  return {l[0] * t[0].x + l[1] * t[1].x + l[2] * t[2].x,
          l[0] * t[0].y + l[1] * t[1].y + l[2] * t[2].y};
}

}  // namespace rtmixed
