#pragma once

// Shared generators and independent oracles for the test suites. Nothing
// here calls into the coordinate or quadrature code it is used to check.

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <wachspress/point.hpp>
#include <wachspress/polygon.hpp>

namespace wachspress::testing {

/// Random strictly convex n-gon: sorted angles on the unit circle (with a
/// minimum gap) pushed through a random well-conditioned affine map.
inline Polygon random_convex_polygon(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double min_gap = 0.25 * 2.0 * std::numbers::pi / n;
  std::vector<double> theta;
  for (;;) {
    theta.clear();
    for (int i = 0; i < n; ++i) theta.push_back(2.0 * std::numbers::pi * unit(rng));
    std::sort(theta.begin(), theta.end());
    bool ok = 2.0 * std::numbers::pi - theta.back() + theta.front() > min_gap;
    for (int i = 1; i < n && ok; ++i) ok = theta[i] - theta[i - 1] > min_gap;
    if (ok) break;
  }
  const double rot = 2.0 * std::numbers::pi * unit(rng);
  const double sx = 0.3 + 2.7 * unit(rng), sy = 0.3 + 2.7 * unit(rng);
  const double c = std::cos(rot), s = std::sin(rot);
  const Point2 shift{4.0 * unit(rng) - 2.0, 4.0 * unit(rng) - 2.0};
  std::vector<Point2> v;
  for (double t : theta) {
    const Point2 p{sx * std::cos(t), sy * std::sin(t)};
    v.push_back(Point2{c * p.x - s * p.y, s * p.x + c * p.y} + shift);
  }
  return validate_polygon(std::move(v));
}

/// Signed distance from x to the line through edge i (positive inside).
inline double edge_distance(const Polygon& p, Point2 x, std::ptrdiff_t i) {
  const Vec2 e = p.edge(i);
  return cross(e, x - p.vertex(i)) / norm(e);
}

inline double boundary_distance(const Polygon& p, Point2 x) {
  double d = std::numeric_limits<double>::infinity();
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(p.size()); ++i)
    d = std::min(d, edge_distance(p, x, i));
  return d;
}

/// Random interior point at distance >= margin * diam from the boundary.
inline Point2 random_interior_point(std::mt19937_64& rng, const Polygon& p,
                                    double margin = 0.01) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    std::vector<double> w;
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      w.push_back(-std::log(unit(rng) + 1e-300));
      total += w.back();
    }
    Point2 x{0.0, 0.0};
    for (std::size_t i = 0; i < p.size(); ++i) x += (w[i] / total) * p.vertices()[i];
    if (boundary_distance(p, x) > margin * p.diameter()) return x;
  }
}

/// Classical barycentric coordinates of x in the triangle (a, b, c).
inline std::array<double, 3> triangle_barycentric(Point2 a, Point2 b, Point2 c, Point2 x) {
  const double total = cross(b - a, c - a);
  return {cross(b - x, c - x) / total, cross(c - x, a - x) / total, cross(a - x, b - x) / total};
}

/// Largest inscribed radius by bisection on r: the set of points at
/// distance >= r from every edge line is the bounding box clipped by the
/// inward-offset half-planes (Sutherland-Hodgman), nonempty iff r <= r*.
inline double inscribed_radius_search(const Polygon& p, int iterations = 200) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& v : p.vertices()) {
    xmin = std::min(xmin, v.x);
    xmax = std::max(xmax, v.x);
    ymin = std::min(ymin, v.y);
    ymax = std::max(ymax, v.y);
  }
  const auto n = static_cast<std::ptrdiff_t>(p.size());
  auto feasible = [&](double r) {
    std::vector<Point2> region{{xmin, ymin}, {xmax, ymin}, {xmax, ymax}, {xmin, ymax}};
    for (std::ptrdiff_t i = 0; i < n && !region.empty(); ++i) {
      std::vector<Point2> next;
      for (std::size_t k = 0; k < region.size(); ++k) {
        const Point2 a = region[k], b = region[(k + 1) % region.size()];
        const double da = edge_distance(p, a, i) - r, db = edge_distance(p, b, i) - r;
        if (da >= 0) next.push_back(a);
        if ((da >= 0) != (db >= 0)) next.push_back(a + (da / (da - db)) * (b - a));
      }
      region = std::move(next);
    }
    return !region.empty();
  };
  double lo = 0.0, hi = std::max(xmax - xmin, ymax - ymin);
  for (int it = 0; it < iterations && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

/// Composite Simpson rule on [a, b] with an even number of panels.
template <class F>
double simpson(F&& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

}  // namespace wachspress::testing
