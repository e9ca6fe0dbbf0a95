#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "error.hpp"
#include "point.hpp"
#include "polygon.hpp"

namespace wachspress {

inline double diameter(const Polygon& p) {
  return detail::max_pairwise_distance(p.vertices());
}

/// Largest inscribed disk (Chebyshev center).
struct InscribedBall {
  Point2 center;
  double radius = 0.0;
};

/// Solves  max r  s.t.  n_i . c + r <= n_i . v_i  for every edge i, n_i the
/// unit outward normal. The optimum of a 3-variable LP sits at a vertex of
/// the feasible set, so enumerating the triples of active edges is exact;
/// polygons here are small (the cost is O(n^4)).
inline InscribedBall inscribed_ball(const Polygon& p) {
  const auto n = static_cast<std::ptrdiff_t>(p.size());
  const double eps_lp = 1e-10 * p.diameter();

  std::vector<Vec2> normal(static_cast<std::size_t>(n));
  std::vector<double> offset(static_cast<std::size_t>(n));
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const Vec2 e = p.edge(i);
    const Vec2 out = Vec2{e.y, -e.x} / norm(e);
    normal[static_cast<std::size_t>(i)] = out;
    offset[static_cast<std::size_t>(i)] = dot(out, p.vertex(i));
  }

  InscribedBall best{{0.0, 0.0}, -std::numeric_limits<double>::infinity()};
  for (std::ptrdiff_t i = 0; i < n; ++i)
    for (std::ptrdiff_t j = i + 1; j < n; ++j)
      for (std::ptrdiff_t k = j + 1; k < n; ++k) {
        const auto I = static_cast<std::size_t>(i), J = static_cast<std::size_t>(j),
                   K = static_cast<std::size_t>(k);
        using Row = std::array<double, 3>;
        const auto det3 = [](const Row& a, const Row& b, const Row& c) {
          return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
                 a[2] * (b[0] * c[1] - b[1] * c[0]);
        };
        const Row ra{normal[I].x, normal[I].y, 1.0};
        const Row rb{normal[J].x, normal[J].y, 1.0};
        const Row rc{normal[K].x, normal[K].y, 1.0};
        const double det = det3(ra, rb, rc);
        if (std::abs(det) < 1e-14) continue;
        // Cramer's rule: replace column `col` by the offsets.
        const auto solve = [&](int col) {
          Row a = ra, b = rb, c = rc;
          a[col] = offset[I];
          b[col] = offset[J];
          c[col] = offset[K];
          return det3(a, b, c) / det;
        };
        const double cx = solve(0), cy = solve(1), r = solve(2);
        if (!(r > best.radius)) continue;
        bool feasible = true;
        for (std::size_t m = 0; m < normal.size() && feasible; ++m)
          feasible = normal[m].x * cx + normal[m].y * cy + r <= offset[m] + eps_lp;
        if (feasible) best = {{cx, cy}, r};
      }
  return best;
}

/// rho(Omega): diameter of the largest inscribed ball.
inline double inscribed_ball_diameter(const Polygon& p) {
  return 2.0 * inscribed_ball(p).radius;
}

/// Interior angle at each vertex, in (0, pi). Uses atan2(cross, dot) so
/// that angles close to pi keep full relative accuracy of pi - beta.
inline std::vector<double> interior_angles(const Polygon& p) {
  const auto n = static_cast<std::ptrdiff_t>(p.size());
  std::vector<double> beta;
  beta.reserve(p.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const Vec2 next = p.vertex(i + 1) - p.vertex(i);
    const Vec2 prev = p.vertex(i - 1) - p.vertex(i);
    beta.push_back(std::atan2(cross(next, prev), dot(next, prev)));
  }
  return beta;
}

struct GeometricReport {
  double diam = 0.0;
  double rho = 0.0;
  double sigma = 0.0;  // diam / rho
  double d_m = 0.0;    // min_{i != j} |v_i - v_j| / diam
  double psi_M = 0.0;  // largest interior angle
  double psi_m = 0.0;  // smallest interior angle
  std::vector<double> angles;
};

inline GeometricReport quality_report(const Polygon& p) {
  GeometricReport r;
  r.diam = diameter(p);
  r.rho = inscribed_ball_diameter(p);
  r.sigma = r.diam / r.rho;

  double shortest = std::numeric_limits<double>::infinity();
  const auto v = p.vertices();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      shortest = std::min(shortest, distance(v[i], v[j]));
  r.d_m = shortest / r.diam;

  r.angles = interior_angles(p);
  const auto [lo, hi] = std::minmax_element(r.angles.begin(), r.angles.end());
  r.psi_m = *lo;
  r.psi_M = *hi;
  return r;
}

/// Thresholds for barp(sigma), melp(d_m), mac(psi_m) and MAC(psi_M).
struct Thresholds {
  double sigma = 3.0;
  double d_m = 0.3;
  double psi_m = std::numbers::pi / 6.0;
  double psi_M = 3.0 * std::numbers::pi / 4.0;
};

struct ConditionVerdict {
  bool barp_holds = false;
  bool melp_holds = false;
  bool mac_holds = false;
  bool MAC_holds = false;
};

inline ConditionVerdict check_conditions(const GeometricReport& r, const Thresholds& t) {
  const bool positive = t.sigma > 0.0 && t.d_m > 0.0 && t.psi_m > 0.0 && t.psi_M > 0.0;
  if (!positive || !(t.psi_M < std::numbers::pi))
    throw Error(ErrorCode::invalid_threshold,
                "thresholds must be positive with psi_M < pi");
  return {
      .barp_holds = r.sigma <= t.sigma,
      .melp_holds = r.d_m >= t.d_m,
      .mac_holds = r.psi_m >= t.psi_m,
      .MAC_holds = r.psi_M <= t.psi_M,
  };
}

}  // namespace wachspress
