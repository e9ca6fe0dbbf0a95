#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coordinates.hpp"
#include "error.hpp"
#include "point.hpp"
#include "polygon.hpp"
#include "quadrature.hpp"

namespace wachspress {

/// Test function u with analytic derivatives. The Hessian is optional; it
/// is only needed for |u|_{H^2}.
struct ScalarField {
  std::string label;
  std::function<double(Point2)> value;
  std::function<Vec2(Point2)> gradient;
  std::function<Sym2(Point2)> hessian;
};

/// Compares the analytic gradient against central differences; returns the
/// largest relative discrepancy over the given points.
inline double gradient_discrepancy(const ScalarField& u, std::span<const Point2> points,
                                   double step = 1e-6) {
  double worst = 0.0;
  for (const auto& p : points) {
    const Vec2 g = u.gradient(p);
    const double gx = (u.value({p.x + step, p.y}) - u.value({p.x - step, p.y})) / (2 * step);
    const double gy = (u.value({p.x, p.y + step}) - u.value({p.x, p.y - step})) / (2 * step);
    const double scale = std::max(1.0, norm(g));
    worst = std::max(worst, norm(Vec2{gx, gy} - g) / scale);
  }
  return worst;
}

namespace fields {

namespace detail {
inline ScalarField checked(ScalarField u) {
  static constexpr Point2 probes[] = {{0.3, 0.7}, {-1.2, 0.4}, {2.5, -0.9}};
  if (gradient_discrepancy(u, probes) > 1e-6)
    throw std::logic_error("built-in field '" + u.label + "' has an inconsistent gradient");
  return u;
}
}  // namespace detail

inline ScalarField affine(double c0, double c1, double c2) {
  return detail::checked({"affine",
                          [=](Point2 p) { return c0 + c1 * p.x + c2 * p.y; },
                          [=](Point2) { return Vec2{c1, c2}; },
                          [](Point2) { return Sym2{}; }});
}

inline ScalarField constant(double c) {
  auto u = affine(c, 0.0, 0.0);
  u.label = "constant";
  return u;
}

/// u = x (1 - x)
inline ScalarField x_one_minus_x() {
  return detail::checked({"x(1-x)",
                          [](Point2 p) { return p.x * (1.0 - p.x); },
                          [](Point2 p) { return Vec2{1.0 - 2.0 * p.x, 0.0}; },
                          [](Point2) { return Sym2{-2.0, 0.0, 0.0}; }});
}

/// u = x^2
inline ScalarField x_squared() {
  return detail::checked({"x^2",
                          [](Point2 p) { return p.x * p.x; },
                          [](Point2 p) { return Vec2{2.0 * p.x, 0.0}; },
                          [](Point2) { return Sym2{2.0, 0.0, 0.0}; }});
}

/// u = x y
inline ScalarField xy() {
  return detail::checked({"xy",
                          [](Point2 p) { return p.x * p.y; },
                          [](Point2 p) { return Vec2{p.y, p.x}; },
                          [](Point2) { return Sym2{0.0, 1.0, 0.0}; }});
}

/// u = sin(x) cos(y)
inline ScalarField sin_cos() {
  return detail::checked(
      {"sin(x)cos(y)",
       [](Point2 p) { return std::sin(p.x) * std::cos(p.y); },
       [](Point2 p) {
         return Vec2{std::cos(p.x) * std::cos(p.y), -std::sin(p.x) * std::sin(p.y)};
       },
       [](Point2 p) {
         const double sc = std::sin(p.x) * std::cos(p.y);
         return Sym2{-sc, -std::cos(p.x) * std::sin(p.y), -sc};
       }});
}

}  // namespace fields

/// I u = sum_i u(v_i) lambda_i.
class WachspressInterpolant {
 public:
  WachspressInterpolant(const Polygon& p, const ScalarField& u) : basis_(p) {
    for (const auto& v : p.vertices()) nodal_.push_back(u.value(v));
  }

  const WachspressBasis& basis() const { return basis_; }
  std::span<const double> nodal_values() const { return nodal_; }

  double value(Point2 x) const {
    std::vector<double> lambda(basis_.size());
    basis_.coordinates_into(x, lambda);
    return combine(lambda);
  }

  /// Value and gradient at an interior point; scratch spans of length n.
  std::pair<double, Vec2> value_and_gradient(Point2 x, std::span<double> lambda,
                                             std::span<Vec2> grad) const {
    basis_.gradients_into(x, lambda, grad);
    Vec2 g{0.0, 0.0};
    for (std::size_t i = 0; i < nodal_.size(); ++i) g += nodal_[i] * grad[i];
    return {combine(lambda), g};
  }

  Vec2 gradient(Point2 x) const {
    std::vector<double> lambda(basis_.size());
    std::vector<Vec2> grad(basis_.size());
    return value_and_gradient(x, lambda, grad).second;
  }

 private:
  double combine(std::span<const double> lambda) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodal_.size(); ++i) s += nodal_[i] * lambda[i];
    return s;
  }

  WachspressBasis basis_;
  std::vector<double> nodal_;
};

inline WachspressInterpolant interpolate(const Polygon& p, const ScalarField& u) {
  return {p, u};
}

inline constexpr double kDefaultNormTolerance = 1e-7;

namespace detail {

// Error integrands vanish identically for affine u; the floor is relative
// to the size of u itself so that roundoff-level integrands terminate.
inline double error_floor(const Polygon& p, const ScalarField& u) {
  double ref = 0.0;
  for (const auto& t : triangulate_fan(p))
    ref += integrate_fixed(t, [&](Point2 x) {
      const Vec2 g = u.gradient(x);
      const double v = u.value(x);
      return v * v + norm2(g);
    });
  return 1e-24 * ref;
}

enum class ErrorKind { l2, h1_semi };

inline double error_integral(const Polygon& p, const ScalarField& u, double tol, ErrorKind kind) {
  const WachspressInterpolant iu(p, u);
  std::vector<double> lambda(p.size());
  std::vector<Vec2> grad(p.size());
  auto integrand = [&](Point2 x) {
    const auto [value, g] = iu.value_and_gradient(x, lambda, grad);
    if (kind == ErrorKind::l2) {
      const double e = u.value(x) - value;
      return e * e;
    }
    return norm2(u.gradient(x) - g);
  };
  IntegrationOptions opts;
  opts.abs_tol = error_floor(p, u);
  return integrate(p, integrand, tol, opts).value;
}

}  // namespace detail

/// ||u - I u||_{L^2}
inline double l2_error(const Polygon& p, const ScalarField& u,
                       double tol = kDefaultNormTolerance) {
  return std::sqrt(std::max(0.0, detail::error_integral(p, u, tol, detail::ErrorKind::l2)));
}

/// |u - I u|_{H^1}
inline double h1_seminorm_error(const Polygon& p, const ScalarField& u,
                                double tol = kDefaultNormTolerance) {
  return std::sqrt(
      std::max(0.0, detail::error_integral(p, u, tol, detail::ErrorKind::h1_semi)));
}

/// ||u - I u||_{H^1}
inline double h1_error(const Polygon& p, const ScalarField& u,
                       double tol = kDefaultNormTolerance) {
  return std::hypot(l2_error(p, u, tol), h1_seminorm_error(p, u, tol));
}

/// |u|_{H^2} = (int u_xx^2 + 2 u_xy^2 + u_yy^2)^{1/2}
inline double h2_seminorm(const Polygon& p, const ScalarField& u,
                          double tol = kDefaultNormTolerance) {
  if (!u.hessian) throw Error(ErrorCode::missing_hessian, "field '" + u.label + "' has no Hessian");
  auto integrand = [&](Point2 x) {
    const Sym2 h = u.hessian(x);
    return h.xx * h.xx + 2.0 * h.xy * h.xy + h.yy * h.yy;
  };
  return std::sqrt(std::max(0.0, integrate(p, integrand, tol).value));
}

inline constexpr double kZeroH2Threshold = 1e-12;

struct ErrorReport {
  double l2_error = 0.0;
  double h1_semi_error = 0.0;
  double h1_error = 0.0;
  double h2_semi = 0.0;
  double diam = 0.0;
  /// h1_error / (diam * h2_semi); absent when |u|_{H^2} vanishes.
  std::optional<double> ratio;
  bool zero_h2 = false;
};

inline ErrorReport error_report(const Polygon& p, const ScalarField& u,
                                double tol = kDefaultNormTolerance) {
  ErrorReport r;
  r.l2_error = l2_error(p, u, tol);
  r.h1_semi_error = h1_seminorm_error(p, u, tol);
  r.h1_error = std::hypot(r.l2_error, r.h1_semi_error);
  r.h2_semi = h2_seminorm(p, u, tol);
  r.diam = p.diameter();
  r.zero_h2 = r.h2_semi < kZeroH2Threshold;
  if (!r.zero_h2) r.ratio = r.h1_error / (r.diam * r.h2_semi);
  return r;
}

}  // namespace wachspress
