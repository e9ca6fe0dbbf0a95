#pragma once

// Polygon families that witness the sharpness of the maximum angle
// condition and the minimum edge length property, with their closed-form
// coordinates and lower bounds.

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "coordinates.hpp"
#include "error.hpp"
#include "point.hpp"
#include "polygon.hpp"
#include "quadrature.hpp"

namespace wachspress {

namespace detail {
inline void require_range(double s, double lo, double hi, const char* what) {
  if (!(s > lo && s < hi))
    throw Error(ErrorCode::param_out_of_range,
                std::string(what) + ": s = " + std::to_string(s) + " outside (" +
                    std::to_string(lo) + ", " + std::to_string(hi) + ")");
}
}  // namespace detail

/// Upper end of the admissible range of the thin-trapezoid family, (1/2)^4.
inline constexpr double kCex2Limit = 0.0625;

/// (0,0), (1,0), (s,s), (0,1) for 1/2 < s < 1. The angle at (s,s) tends
/// to pi as s -> 1/2 while every vertex distance stays >= diam/2.
inline Polygon make_cex1(double s) {
  detail::require_range(s, 0.5, 1.0, "cex1");
  return validate_polygon({{0.0, 0.0}, {1.0, 0.0}, {s, s}, {0.0, 1.0}});
}

/// (0,0), (1,0), (1 - s^{1/4}, s), (0,s) for 0 < s < 1/16: a trapezoid of
/// height s whose short vertical side collapses.
inline Polygon make_cex2(double s) {
  detail::require_range(s, 0.0, kCex2Limit, "cex2");
  return validate_polygon({{0.0, 0.0}, {1.0, 0.0}, {1.0 - std::pow(s, 0.25), s}, {0.0, s}});
}

/// K(1, 1-s, s, 1-s): (0,0), (1,0), (s, 1-s), (0, 1-s) for 0 < s < 1.
inline Polygon make_f1(double s) {
  detail::require_range(s, 0.0, 1.0, "f1");
  return validate_polygon({{0.0, 0.0}, {1.0, 0.0}, {s, 1.0 - s}, {0.0, 1.0 - s}});
}

/// K(1, 1, s, s): (0,0), (1,0), (s,s), (0,1) for 1/2 < s < 1.
inline Polygon make_f2(double s) {
  detail::require_range(s, 0.5, 1.0, "f2");
  return validate_polygon({{0.0, 0.0}, {1.0, 0.0}, {s, s}, {0.0, 1.0}});
}

/// [0,h] x [0,h]
inline Polygon make_square(double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::param_out_of_range, "square side must be positive");
  return validate_polygon({{0.0, 0.0}, {h, 0.0}, {h, h}, {0.0, h}});
}

/// Regular n-gon of circumradius h centred at the origin, first vertex on
/// the positive x axis.
inline Polygon make_regular_ngon(int n, double h) {
  if (n < 3) throw Error(ErrorCode::too_few_vertices, "regular polygon needs n >= 3");
  if (!(h > 0.0)) throw Error(ErrorCode::param_out_of_range, "circumradius must be positive");
  std::vector<Point2> v;
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * std::numbers::pi * k / n;
    v.push_back({h * std::cos(t), h * std::sin(t)});
  }
  return validate_polygon(std::move(v));
}

/// Closed form of lambda_3 (the coordinate of (s,s)) on make_cex1(s).
inline double oracle_lambda_cex1(double s, Point2 x) {
  detail::require_range(s, 0.5, 1.0, "cex1");
  return (2.0 * s - 1.0) * x.x / s * x.y / ((s - 1.0) * (x.x + x.y) + s);
}

/// d lambda_3 / dy on make_cex1(s).
inline double oracle_dlambda3_dy_cex1(double s, Point2 x) {
  detail::require_range(s, 0.5, 1.0, "cex1");
  const double d = (s - 1.0) * (x.x + x.y) + s;
  return (2.0 * s - 1.0) * x.x / s * ((s - 1.0) * x.x + s) / (d * d);
}

/// Closed forms (lambda_2, lambda_3) on make_cex2(s), with a = 1 - s^{1/4}.
inline std::pair<double, double> oracle_lambda_cex2(double s, Point2 x) {
  detail::require_range(s, 0.0, kCex2Limit, "cex2");
  const double a = 1.0 - std::pow(s, 0.25);
  const double d = s + x.y * (a - 1.0);
  return {x.x * (s - x.y) / d, x.x * x.y / d};
}

/// d(I u)/dy for u = x^2 on make_cex2(s): x s a (a - 1) / (s + y (a - 1))^2.
inline double oracle_dinterp_dy_cex2(double s, Point2 x) {
  detail::require_range(s, 0.0, kCex2Limit, "cex2");
  const double a = 1.0 - std::pow(s, 0.25);
  const double d = s + x.y * (a - 1.0);
  return x.x * s * a * (a - 1.0) / (d * d);
}

/// s (1 - s) sqrt((3s - 1)^2 / (2^10 s^3 (2s - 1))): lower bound on
/// |u - I u|_{H^1} for u = x(1-x) on make_cex1(s).
inline double cex1_lower_bound(double s) {
  detail::require_range(s, 0.5, 1.0, "cex1");
  const double num = (3.0 * s - 1.0) * (3.0 * s - 1.0);
  const double den = 1024.0 * s * s * s * (2.0 * s - 1.0);
  return s * (1.0 - s) * std::sqrt(num / den);
}

/// sqrt((1 - s^{1/4})^3 / (8 sqrt(s))): lower bound on |I u - u|_{H^1}
/// for u = x^2 on make_cex2(s).
inline double cex2_lower_bound(double s) {
  detail::require_range(s, 0.0, kCex2Limit, "cex2");
  const double a = 1.0 - std::pow(s, 0.25);
  return std::sqrt(a * a * a / (8.0 * std::sqrt(s)));
}

/// (3s - 1) / (8 s (2s - 1)), the pointwise lower bound of d lambda_3/dy on T_s.
inline double cex1_gradient_bound(double s) {
  detail::require_range(s, 0.5, 1.0, "cex1");
  return (3.0 * s - 1.0) / (8.0 * s * (2.0 * s - 1.0));
}

/// T_s: (1/4, 3/4), (1/2, 1/2), (1/2, (3s-1)/(2s)). Two sides lie on the
/// diagonal x + y = 1 and on x = 1/2; the third vertex is on the edge
/// from (s,s) to (0,1).
inline Triangle cex1_region(double s) {
  detail::require_range(s, 0.5, 1.0, "cex1");
  return {{0.25, 0.75}, {0.5, 0.5}, {0.5, (3.0 * s - 1.0) / (2.0 * s)}};
}

/// D_s = K_s intersected with {x >= 1/2}, a trapezoid of area a s / 2.
inline Polygon cex2_region(double s) {
  detail::require_range(s, 0.0, kCex2Limit, "cex2");
  const double a = 1.0 - std::pow(s, 0.25);
  return validate_polygon({{0.5, 0.0}, {1.0, 0.0}, {a, s}, {0.5, s}});
}

/// resolution x resolution nodes strictly inside a triangle: cell midpoints
/// of the unit square pushed through the collapsed map.
inline std::vector<Point2> triangle_grid(const Triangle& t, int resolution) {
  if (resolution <= 0) throw Error(ErrorCode::invalid_grid, "grid resolution must be positive");
  std::vector<Point2> nodes;
  nodes.reserve(static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution));
  for (int i = 0; i < resolution; ++i)
    for (int j = 0; j < resolution; ++j) {
      const double u = (i + 0.5) / resolution;
      const double v = (j + 0.5) / resolution * (1.0 - u);
      nodes.push_back(t.at({1.0 - u - v, u, v}));
    }
  return nodes;
}

struct PointwiseCheck {
  bool holds = false;
  /// min over nodes of d lambda_3/dy - bound
  double min_margin = std::numeric_limits<double>::infinity();
  std::size_t nodes = 0;
};

/// Evaluates d lambda_3/dy with the Wachspress basis at a grid inside T_s
/// and compares with the pointwise bound, allowing 1e-9 slack.
inline PointwiseCheck pointwise_bound_report_cex1(double s, int resolution) {
  const Polygon k = make_cex1(s);
  const WachspressBasis basis(k);
  const double bound = cex1_gradient_bound(s);
  PointwiseCheck out;
  out.holds = true;
  for (const auto& x : triangle_grid(cex1_region(s), resolution)) {
    const double dy = basis.gradients(x)[2].y;
    out.min_margin = std::min(out.min_margin, dy - bound);
    out.holds = out.holds && dy >= bound - 1e-9;
    ++out.nodes;
  }
  return out;
}

inline bool pointwise_bound_check_cex1(double s, int resolution) {
  return pointwise_bound_report_cex1(s, resolution).holds;
}

}  // namespace wachspress
