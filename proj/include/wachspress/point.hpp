#pragma once

#include <array>
#include <cmath>

namespace wachspress {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Point2& operator+=(Point2 o) { x += o.x; y += o.y; return *this; }
  constexpr Point2& operator-=(Point2 o) { x -= o.x; y -= o.y; return *this; }
  constexpr Point2& operator*=(double s) { x *= s; y *= s; return *this; }
  friend constexpr bool operator==(Point2, Point2) = default;
};

/// Gradients and edge vectors share the representation of points.
using Vec2 = Point2;

constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
constexpr Point2 operator-(Point2 a) { return {-a.x, -a.y}; }
constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
constexpr Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
constexpr Point2 operator/(Point2 a, double s) { return {a.x / s, a.y / s}; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
/// z-component of the 3D cross product.
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
/// Counterclockwise rotation by pi/2.
constexpr Vec2 perp(Vec2 a) { return {-a.y, a.x}; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
constexpr double norm2(Vec2 a) { return dot(a, a); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Row-major 2x2 matrix.
struct Mat2 {
  std::array<double, 4> a{1.0, 0.0, 0.0, 1.0};

  constexpr double operator()(int r, int c) const { return a[2 * r + c]; }
  constexpr double det() const { return a[0] * a[3] - a[1] * a[2]; }
  constexpr Vec2 operator*(Vec2 v) const {
    return {a[0] * v.x + a[1] * v.y, a[2] * v.x + a[3] * v.y};
  }

  static constexpr Mat2 identity() { return {}; }
  static Mat2 rotation(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {{c, -s, s, c}};
  }
  static constexpr Mat2 scaling(double h) { return {{h, 0.0, 0.0, h}}; }
};

/// x -> linear * x + translation
struct AffineMap {
  Mat2 linear;
  Point2 translation;

  constexpr Point2 operator()(Point2 p) const { return linear * p + translation; }
};

/// Symmetric 2x2 tensor, used for Hessians.
struct Sym2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;
};

}  // namespace wachspress
