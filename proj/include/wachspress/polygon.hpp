#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "point.hpp"

namespace wachspress {

namespace detail {

inline double max_pairwise_distance(std::span<const Point2> pts) {
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      best = std::max(best, distance(pts[i], pts[j]));
  return best;
}

inline double signed_area(std::span<const Point2> pts) {
  double twice = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    twice += cross(pts[i], pts[(i + 1) % pts.size()]);
  return 0.5 * twice;
}

/// Relative factor for the cross-product degeneracy threshold (scaled by diam^2).
inline constexpr double kConvexityFactor = 1e-12;

}  // namespace detail

/// A strictly convex polygon with counterclockwise vertices. Only
/// obtainable through validate_polygon, so every instance satisfies the
/// invariants. Vertex indexing through vertex() is cyclic.
class Polygon {
 public:
  std::span<const Point2> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }

  const Point2& vertex(std::ptrdiff_t i) const {
    const auto n = static_cast<std::ptrdiff_t>(vertices_.size());
    return vertices_[static_cast<std::size_t>(((i % n) + n) % n)];
  }

  /// Edge vector v_{i+1} - v_i.
  Vec2 edge(std::ptrdiff_t i) const { return vertex(i + 1) - vertex(i); }

  double diameter() const { return diam_; }
  double area() const { return detail::signed_area(vertices_); }

  /// Threshold for cross products and signed areas: 1e-12 * diam^2.
  double convexity_tolerance() const {
    return detail::kConvexityFactor * diam_ * diam_;
  }

 private:
  Polygon(std::vector<Point2> v, double diam) : vertices_(std::move(v)), diam_(diam) {}
  friend Polygon validate_polygon(std::vector<Point2> raw);

  std::vector<Point2> vertices_;
  double diam_ = 0.0;
};

/// Checks the polygon invariants and returns the validated polygon.
/// Clockwise input is reversed rather than rejected.
inline Polygon validate_polygon(std::vector<Point2> raw) {
  const std::size_t n = raw.size();
  if (n < 3)
    throw Error(ErrorCode::too_few_vertices,
                "polygon needs at least 3 vertices, got " + std::to_string(n));
  for (const auto& p : raw)
    if (!is_finite(p))
      throw Error(ErrorCode::non_finite_input, "vertex coordinate is not finite");

  const double diam = detail::max_pairwise_distance(raw);
  const double eps = detail::kConvexityFactor * diam * diam;
  if (!(diam > 0.0))
    throw Error(ErrorCode::duplicate_vertex, "all vertices coincide");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (norm(raw[i] - raw[j]) <= eps / diam)
        throw Error(ErrorCode::duplicate_vertex,
                    "vertices " + std::to_string(i) + " and " + std::to_string(j) +
                        " coincide");

  if (detail::signed_area(raw) < 0.0) std::reverse(raw.begin(), raw.end());

  double turning = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 in = raw[i] - raw[(i + n - 1) % n];
    const Vec2 out = raw[(i + 1) % n] - raw[i];
    const double c = cross(in, out);
    if (!(c > eps))
      throw Error(ErrorCode::non_convex,
                  "turn at vertex " + std::to_string(i) + " is not strictly convex");
    turning += std::atan2(c, dot(in, out));
  }
  // A star polygon turns left at every vertex but winds more than once.
  if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-9)
    throw Error(ErrorCode::non_convex, "vertices wind more than once");

  return Polygon(std::move(raw), diam);
}

/// Maps every vertex through m. For det < 0 the orientation flips and
/// validation restores counterclockwise order.
inline Polygon apply_affine(const Polygon& p, const AffineMap& m) {
  if (!(std::abs(m.linear.det()) > detail::kConvexityFactor) ||
      !std::isfinite(m.linear.det()))
    throw Error(ErrorCode::singular_map, "affine map is not invertible");
  std::vector<Point2> out;
  out.reserve(p.size());
  for (const auto& v : p.vertices()) out.push_back(m(v));
  return validate_polygon(std::move(out));
}

}  // namespace wachspress
