#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "point.hpp"
#include "polygon.hpp"

namespace wachspress {

struct Triangle {
  Point2 a, b, c;

  double signed_area() const { return 0.5 * cross(b - a, c - a); }
  double area() const { return std::abs(signed_area()); }
  Point2 at(const std::array<double, 3>& bary) const {
    return bary[0] * a + bary[1] * b + bary[2] * c;
  }
};

/// Fixed rule on a triangle: nodes in barycentric coordinates, weights
/// normalized to sum to one (multiply by the area to integrate).
struct TriangleRule {
  int degree = 0;
  std::vector<std::array<double, 3>> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [0, 1] (Newton iteration on P_n).
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre_unit(int n) {
  std::vector<double> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const auto k = static_cast<std::size_t>(n - 1 - i);
    x[k] = 0.5 * (1.0 + z);
    w[k] = 1.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

/// Collapsed (Duffy) product of two m-point Gauss-Legendre rules. Exact for
/// total degree <= 2m - 2: the Jacobian (1 - u) adds one degree in u.
inline TriangleRule collapsed_gauss_rule(int m) {
  const auto [x, w] = gauss_legendre_unit(m);
  TriangleRule rule;
  rule.degree = 2 * m - 2;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double u = x[i];
      const double v = x[j] * (1.0 - u);
      rule.nodes.push_back({1.0 - u - v, u, v});
      rule.weights.push_back(2.0 * w[i] * w[j] * (1.0 - u));
    }
  return rule;
}

/// 36-point rule of exactness degree 10.
inline const TriangleRule& degree10_rule() {
  static const TriangleRule rule = collapsed_gauss_rule(6);
  return rule;
}

/// Triangles (centroid, v_i, v_{i+1}); the centroid is the vertex mean.
inline std::vector<Triangle> triangulate_fan(const Polygon& p) {
  Point2 c{0.0, 0.0};
  for (const auto& v : p.vertices()) c += v;
  c = c / static_cast<double>(p.size());
  std::vector<Triangle> fan;
  const auto n = static_cast<std::ptrdiff_t>(p.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) fan.push_back({c, p.vertex(i), p.vertex(i + 1)});
  return fan;
}

/// Midpoint subdivision into four congruent children.
inline std::array<Triangle, 4> split4(const Triangle& t) {
  const Point2 ab = 0.5 * (t.a + t.b), bc = 0.5 * (t.b + t.c), ca = 0.5 * (t.c + t.a);
  return {{{t.a, ab, ca}, {ab, t.b, bc}, {ca, bc, t.c}, {ab, bc, ca}}};
}

struct IntegrationResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t cells_used = 0;
};

/// Thrown when refinement hits the cell cap; carries the best estimate.
class CellCapExceeded : public Error {
 public:
  explicit CellCapExceeded(IntegrationResult best)
      : Error(ErrorCode::cell_cap_exceeded,
              "adaptive quadrature reached " + std::to_string(best.cells_used) +
                  " cells (estimate " + std::to_string(best.error_estimate) + ")"),
        best_(best) {}
  const IntegrationResult& best() const { return best_; }

 private:
  IntegrationResult best_;
};

struct IntegrationOptions {
  /// Absolute floor on the error estimate, for integrands that vanish.
  double abs_tol = 0.0;
  std::size_t max_cells = 200000;
};

namespace detail {

/// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

template <class F>
double apply_rule(const TriangleRule& rule, const Triangle& t, F& f) {
  CompensatedSum s;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double v = f(t.at(rule.nodes[q]));
    if (!std::isfinite(v))
      throw Error(ErrorCode::non_finite_sample, "integrand is not finite at a quadrature node");
    s.add(rule.weights[q] * v);
  }
  return t.area() * s.value();
}

}  // namespace detail

/// Fixed-rule integral over a single triangle.
template <class F>
double integrate_fixed(const Triangle& t, F&& f, const TriangleRule& rule = degree10_rule()) {
  return detail::apply_rule(rule, t, f);
}

/// Greedy adaptive integration over a set of triangles.
///
/// Each cell carries its one-rule value and the value of its four
/// children; |coarse - refined| is the per-cell estimate. The cell with
/// the largest estimate is split until the total estimate drops below
/// max(tol * |value|, abs_tol). The result is a deterministic function of
/// the input: cells are summed in creation order and ties in the queue
/// are broken by cell index.
template <class F>
IntegrationResult integrate_triangles(std::span<const Triangle> initial, F&& f, double tol,
                                      const IntegrationOptions& opts = {}) {
  if (!(tol > 0.0)) throw Error(ErrorCode::invalid_threshold, "tolerance must be positive");
  const TriangleRule& rule = degree10_rule();

  struct Cell {
    Triangle tri;
    std::array<double, 4> child{};
    double coarse = 0.0;
    double refined = 0.0;
    double error = 0.0;
    bool active = true;
  };
  std::vector<Cell> cells;
  cells.reserve(initial.size() + 64);

  auto make_cell = [&](const Triangle& t, double coarse) {
    Cell c{t, {}, coarse, 0.0, 0.0, true};
    const auto kids = split4(t);
    detail::CompensatedSum s;
    for (std::size_t k = 0; k < 4; ++k) {
      c.child[k] = detail::apply_rule(rule, kids[k], f);
      s.add(c.child[k]);
    }
    c.refined = s.value();
    c.error = std::abs(c.coarse - c.refined);
    return c;
  };

  using Entry = std::pair<double, std::size_t>;
  auto worse = [](const Entry& l, const Entry& r) {
    return l.first < r.first || (l.first == r.first && l.second > r.second);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> queue(worse);

  double value = 0.0, error = 0.0;
  std::size_t active = 0;
  auto resum = [&] {
    detail::CompensatedSum v, e;
    for (const auto& c : cells)
      if (c.active) {
        v.add(c.refined);
        e.add(c.error);
      }
    value = v.value();
    error = e.value();
  };

  for (const auto& t : initial) {
    cells.push_back(make_cell(t, detail::apply_rule(rule, t, f)));
    queue.emplace(cells.back().error, cells.size() - 1);
    ++active;
  }
  resum();

  std::size_t splits = 0;
  while (error > std::max(tol * std::abs(value), opts.abs_tol)) {
    if (active + 3 > opts.max_cells) {
      resum();
      throw CellCapExceeded({value, error, active});
    }
    const std::size_t worst = queue.top().second;
    queue.pop();
    cells[worst].active = false;
    value -= cells[worst].refined;
    error -= cells[worst].error;
    const auto kids = split4(cells[worst].tri);
    const auto child = cells[worst].child;
    for (std::size_t k = 0; k < 4; ++k) {
      cells.push_back(make_cell(kids[k], child[k]));
      value += cells.back().refined;
      error += cells.back().error;
      queue.emplace(cells.back().error, cells.size() - 1);
    }
    active += 3;
    // the running sums drift; rebuild them exactly now and then
    if (++splits % 512 == 0) resum();
  }
  resum();
  return {value, error, active};
}

template <class F>
IntegrationResult integrate(const Polygon& p, F&& f, double tol,
                            const IntegrationOptions& opts = {}) {
  const auto fan = triangulate_fan(p);
  return integrate_triangles(std::span<const Triangle>(fan), std::forward<F>(f), tol, opts);
}

}  // namespace wachspress
