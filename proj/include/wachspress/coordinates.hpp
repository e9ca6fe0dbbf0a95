#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "error.hpp"
#include "point.hpp"
#include "polygon.hpp"

namespace wachspress {

/// A_i(x) = |x v_i v_{i+1}| (signed, positive inside), B_i = |v_{i-1} v_i v_{i+1}|
/// and the constant gradients of the affine functions A_i.
struct TriangleAreas {
  std::vector<double> A;
  std::vector<double> B;
  std::vector<Vec2> gradA;
};

enum class WeightForm {
  area,       // product of triangle areas; valid on the closed polygon
  cotangent,  // (cot alpha_i + cot delta_i) / |x - v_i|^2; interior points only
};

struct BasisEvaluation {
  Point2 point;
  std::vector<double> weights;
  std::vector<double> coords;
  std::optional<std::vector<Vec2>> grads;
};

/// Wachspress basis of a fixed polygon.
///
/// Evaluation happens on a copy of the polygon translated to v_0 and scaled
/// to unit diameter. The coordinates are invariant under that similarity
/// and the n-2 area factors in each weight stay O(1), so no overflow or
/// underflow handling is needed for moderate n. Immutable after
/// construction; all member functions are safe to call concurrently.
class WachspressBasis {
 public:
  explicit WachspressBasis(Polygon polygon)
      : polygon_(std::move(polygon)),
        origin_(polygon_.vertex(0)),
        scale_(polygon_.diameter()) {
    const auto n = static_cast<std::ptrdiff_t>(polygon_.size());
    local_.reserve(polygon_.size());
    for (const auto& v : polygon_.vertices()) local_.push_back(to_local(v));
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const Point2 prev = local(i - 1), cur = local(i), next = local(i + 1);
      B_.push_back(0.5 * cross(cur - prev, next - prev));
      gradA_.push_back(0.5 * perp(next - cur));
      edge_length_.push_back(norm(next - cur));
    }
  }

  const Polygon& polygon() const { return polygon_; }
  std::size_t size() const { return polygon_.size(); }

  /// Areas in the polygon's own units.
  TriangleAreas triangle_areas(Point2 x) const {
    const auto n = static_cast<std::ptrdiff_t>(size());
    TriangleAreas t;
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const Point2 vi = polygon_.vertex(i), vj = polygon_.vertex(i + 1);
      t.A.push_back(0.5 * cross(vi - x, vj - x));
      t.B.push_back(0.5 * cross(vi - polygon_.vertex(i - 1), vj - polygon_.vertex(i - 1)));
      t.gradA.push_back(0.5 * perp(vj - vi));
    }
    return t;
  }

  /// w_i(x) = B_i prod_{j != i, i-1} A_j(x), in the polygon's own units.
  std::vector<double> weights_area(Point2 x) const {
    std::vector<double> w(size());
    area_weights_local(to_local(x), w);
    const double unit = std::pow(scale_, 2.0 * static_cast<double>(size() - 1));
    for (auto& wi : w) wi *= unit;
    return w;
  }

  /// (cot alpha_i + cot delta_i) / |x - v_i|^2 with the cotangents taken
  /// from dot and cross products. Singular at the vertices, so only
  /// strictly interior points are accepted.
  std::vector<double> weights_cotangent(Point2 x) const {
    const Point2 q = to_local(x);
    require_interior(q);
    const auto n = static_cast<std::ptrdiff_t>(size());
    std::vector<double> w(size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const Point2 vi = local(i);
      const Vec2 to_next = local(i + 1) - vi;
      const Vec2 to_prev = local(i - 1) - vi;
      const Vec2 to_x = q - vi;
      const double cot_alpha = dot(to_next, to_x) / cross(to_next, to_x);
      const double cot_delta = dot(to_x, to_prev) / cross(to_x, to_prev);
      w[static_cast<std::size_t>(i)] = (cot_alpha + cot_delta) / norm2(to_x) / (scale_ * scale_);
    }
    return w;
  }

  /// lambda on the closed polygon (area form).
  void coordinates_into(Point2 x, std::span<double> lambda) const {
    area_weights_local(to_local(x), lambda);
    normalize(lambda);
  }

  std::vector<double> coordinates(Point2 x, WeightForm form = WeightForm::area) const {
    std::vector<double> lambda =
        form == WeightForm::area ? std::vector<double>(size()) : weights_cotangent(x);
    if (form == WeightForm::area)
      coordinates_into(x, lambda);
    else
      normalize(lambda);
    return lambda;
  }

  /// lambda and grad lambda at a strictly interior point, written into
  /// caller-owned spans of length n. Allocation free.
  ///
  /// grad w_i = B_i sum_k grad A_k prod_{j != k} A_j over the n-2 factors,
  /// grad lambda_i = (grad w_i - lambda_i sum_j grad w_j) / sum_j w_j.
  void gradients_into(Point2 x, std::span<double> lambda, std::span<Vec2> grad) const {
    const Point2 q = to_local(x);
    require_interior(q);
    const auto n = static_cast<std::ptrdiff_t>(size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      double prod = 1.0;
      Vec2 dprod{0.0, 0.0};
      for (std::ptrdiff_t j = i + 1; j < i + n - 1; ++j) {
        const double a = local_area(q, j);
        dprod = a * dprod + prod * gradA_[wrap(j)];
        prod *= a;
      }
      lambda[static_cast<std::size_t>(i)] = B_[static_cast<std::size_t>(i)] * prod;
      grad[static_cast<std::size_t>(i)] = B_[static_cast<std::size_t>(i)] * dprod;
    }
    double total = 0.0;
    Vec2 dtotal{0.0, 0.0};
    for (std::size_t i = 0; i < size(); ++i) {
      total += lambda[i];
      dtotal += grad[i];
    }
    if (!(total > 0.0) || !std::isfinite(total))
      throw Error(ErrorCode::degenerate_normalization, "sum of weights is not positive");
    for (std::size_t i = 0; i < size(); ++i) {
      lambda[i] /= total;
      grad[i] = (grad[i] - lambda[i] * dtotal) / (total * scale_);
    }
  }

  std::vector<Vec2> gradients(Point2 x) const {
    std::vector<double> lambda(size());
    std::vector<Vec2> grad(size());
    gradients_into(x, lambda, grad);
    return grad;
  }

  BasisEvaluation evaluate(Point2 x, WeightForm form = WeightForm::area,
                           bool with_gradients = false) const {
    BasisEvaluation e;
    e.point = x;
    e.weights = form == WeightForm::area ? weights_area(x) : weights_cotangent(x);
    e.coords = coordinates(x, form);
    if (with_gradients) e.grads = gradients(x);
    return e;
  }

 private:
  std::size_t wrap(std::ptrdiff_t i) const {
    const auto n = static_cast<std::ptrdiff_t>(size());
    return static_cast<std::size_t>(((i % n) + n) % n);
  }
  Point2 local(std::ptrdiff_t i) const { return local_[wrap(i)]; }
  Point2 to_local(Point2 x) const { return (x - origin_) / scale_; }

  double local_area(Point2 q, std::ptrdiff_t i) const {
    return 0.5 * cross(local(i) - q, local(i + 1) - q);
  }

  // Rejects points outside the closure; snaps areas within roundoff of an
  // edge to zero so that vertex and edge evaluations are exact.
  void area_weights_local(Point2 q, std::span<double> w) const {
    const auto n = static_cast<std::ptrdiff_t>(size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      double prod = 1.0;
      for (std::ptrdiff_t j = i + 1; j < i + n - 1; ++j) prod *= clamped_area(q, j);
      w[static_cast<std::size_t>(i)] = B_[static_cast<std::size_t>(i)] * prod;
    }
  }

  double clamped_area(Point2 q, std::ptrdiff_t i) const {
    const double a = local_area(q, i);
    if (a >= 0.0) return a;
    if (a >= -detail::kConvexityFactor) return 0.0;
    throw Error(ErrorCode::outside_polygon, "point lies outside the polygon");
  }

  void require_interior(Point2 q) const {
    const auto n = static_cast<std::ptrdiff_t>(size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const double a = local_area(q, i);
      if (a < -detail::kConvexityFactor)
        throw Error(ErrorCode::outside_polygon, "point lies outside the polygon");
      // distance to the edge line, in units of diam
      if (2.0 * a / edge_length_[wrap(i)] <= kInteriorMargin)
        throw Error(ErrorCode::boundary_point, "point is on or too close to the boundary");
    }
  }

  void normalize(std::span<double> w) const {
    double total = 0.0;
    for (double wi : w) total += wi;
    if (!(total > 0.0) || !std::isfinite(total))
      throw Error(ErrorCode::degenerate_normalization, "sum of weights is not positive");
    for (auto& wi : w) wi /= total;
  }

  static constexpr double kInteriorMargin = 1e-10;

  Polygon polygon_;
  Point2 origin_;
  double scale_;
  std::vector<Point2> local_;
  std::vector<double> B_;
  std::vector<Vec2> gradA_;
  std::vector<double> edge_length_;
};

inline TriangleAreas triangle_areas(const Polygon& p, Point2 x) {
  return WachspressBasis(p).triangle_areas(x);
}

inline std::vector<double> weights_area_form(const Polygon& p, Point2 x) {
  return WachspressBasis(p).weights_area(x);
}

inline std::vector<double> weights_cotangent_form(const Polygon& p, Point2 x) {
  return WachspressBasis(p).weights_cotangent(x);
}

inline BasisEvaluation coordinates(const Polygon& p, Point2 x,
                                   WeightForm form = WeightForm::area,
                                   bool with_gradients = false) {
  return WachspressBasis(p).evaluate(x, form, with_gradients);
}

inline std::vector<Vec2> coordinate_gradients(const Polygon& p, Point2 x) {
  return WachspressBasis(p).gradients(x);
}

}  // namespace wachspress
