#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <future>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "families.hpp"
#include "geometry.hpp"
#include "interpolation.hpp"
#include "polygon.hpp"

namespace wachspress {

enum class Family { cex1, cex2, f1, f2, benign_square, benign_ngon };

enum class FieldKind { x_one_minus_x, x_squared, xy, sin_cos };

inline constexpr std::string_view to_string(Family f) {
  switch (f) {
    case Family::cex1: return "cex1";
    case Family::cex2: return "cex2";
    case Family::f1: return "f1";
    case Family::f2: return "f2";
    case Family::benign_square: return "benign-square";
    case Family::benign_ngon: return "benign-ngon";
  }
  return "";
}

inline std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::cex1, Family::cex2, Family::f1, Family::f2, Family::benign_square,
                   Family::benign_ngon})
    if (to_string(f) == name) return f;
  return std::nullopt;
}

inline ScalarField make_field(FieldKind k) {
  switch (k) {
    case FieldKind::x_one_minus_x: return fields::x_one_minus_x();
    case FieldKind::x_squared: return fields::x_squared();
    case FieldKind::xy: return fields::xy();
    case FieldKind::sin_cos: return fields::sin_cos();
  }
  return fields::x_squared();
}

/// The counterexample functions: x(1-x) on cex1 (and f1/f2), x^2 on cex2,
/// sin(x)cos(y) on the benign controls.
inline FieldKind default_field(Family f) {
  switch (f) {
    case Family::cex2: return FieldKind::x_squared;
    case Family::benign_square:
    case Family::benign_ngon: return FieldKind::sin_cos;
    default: return FieldKind::x_one_minus_x;
  }
}

/// Geometric grids towards the degenerate end of each family. Benign
/// families are parametrized by the scale h.
inline std::vector<double> default_grid(Family f) {
  std::vector<double> s;
  switch (f) {
    case Family::cex1:
    case Family::f2:
      for (int k = 2; k <= 10; ++k) s.push_back(0.5 + std::ldexp(1.0, -k));
      break;
    case Family::cex2:
      for (int k = 3; k <= 8; ++k) s.push_back(std::ldexp(1.0, -2 * k));
      break;
    case Family::f1:
      for (int k = 1; k <= 10; ++k) s.push_back(std::ldexp(1.0, -k));
      break;
    case Family::benign_square:
    case Family::benign_ngon:
      s = {1.0, 0.5, 0.25, 0.125};
      break;
  }
  return s;
}

struct FamilySpec {
  Family family = Family::cex1;
  std::vector<double> s_values;
  FieldKind function = FieldKind::x_one_minus_x;
  int ngon_sides = 6;  // benign_ngon only

  static FamilySpec defaults(Family f) { return {f, default_grid(f), default_field(f), 6}; }
};

inline void validate_spec(const FamilySpec& spec) {
  if (spec.s_values.empty()) throw Error(ErrorCode::invalid_grid, "empty parameter grid");
  for (double s : spec.s_values) {
    switch (spec.family) {
      case Family::cex1:
      case Family::f2: detail::require_range(s, 0.5, 1.0, "grid"); break;
      case Family::cex2: detail::require_range(s, 0.0, kCex2Limit, "grid"); break;
      case Family::f1: detail::require_range(s, 0.0, 1.0, "grid"); break;
      case Family::benign_square:
      case Family::benign_ngon:
        if (!(s > 0.0) || !std::isfinite(s))
          throw Error(ErrorCode::param_out_of_range, "scale must be positive");
        break;
    }
  }
  if (spec.family == Family::benign_ngon && spec.ngon_sides < 3)
    throw Error(ErrorCode::too_few_vertices, "regular polygon needs n >= 3");
}

inline Polygon make_family_member(const FamilySpec& spec, double s) {
  switch (spec.family) {
    case Family::cex1: return make_cex1(s);
    case Family::cex2: return make_cex2(s);
    case Family::f1: return make_f1(s);
    case Family::f2: return make_f2(s);
    case Family::benign_square: return make_square(s);
    case Family::benign_ngon: return make_regular_ngon(spec.ngon_sides, s);
  }
  return make_square(s);
}

struct SweepRecord {
  double s = 0.0;
  double diam = 0.0, sigma = 0.0, d_m = 0.0, psi_M = 0.0, psi_m = 0.0;
  std::optional<double> l2_error, h1_semi_error, h1_error, h2_semi, ratio;
  std::optional<double> paper_lower_bound;
  std::optional<ErrorCode> failure;
  std::string failure_message;
};

/// Integration tolerance for one row: tightened to 1e-8 near the
/// degenerate end of the counterexample families.
inline double row_tolerance(Family f, double s, double tol) {
  const bool near_end = (f == Family::cex1 && 2.0 * s - 1.0 < 1.0 / 64.0) ||
                        (f == Family::cex2 && s < std::ldexp(1.0, -12));
  return near_end ? std::min(tol, 1e-8) : tol;
}

inline SweepRecord sweep_row(const FamilySpec& spec, double s, double tol) {
  SweepRecord rec;
  rec.s = s;
  try {
    const Polygon p = make_family_member(spec, s);
    const GeometricReport g = quality_report(p);
    rec.diam = g.diam;
    rec.sigma = g.sigma;
    rec.d_m = g.d_m;
    rec.psi_M = g.psi_M;
    rec.psi_m = g.psi_m;
    if (spec.family == Family::cex1 && spec.function == FieldKind::x_one_minus_x)
      rec.paper_lower_bound = cex1_lower_bound(s);
    if (spec.family == Family::cex2 && spec.function == FieldKind::x_squared)
      rec.paper_lower_bound = cex2_lower_bound(s);

    const ErrorReport e =
        error_report(p, make_field(spec.function), row_tolerance(spec.family, s, tol));
    rec.l2_error = e.l2_error;
    rec.h1_semi_error = e.h1_semi_error;
    rec.h1_error = e.h1_error;
    rec.h2_semi = e.h2_semi;
    rec.ratio = e.ratio;
  } catch (const Error& err) {
    rec.failure = err.code();
    rec.failure_message = err.what();
  }
  return rec;
}

/// Rows are independent and evaluated concurrently; the output is ordered
/// by s so that it does not depend on scheduling.
inline std::vector<SweepRecord> run_sweep(const FamilySpec& spec,
                                          double tol = kDefaultNormTolerance) {
  validate_spec(spec);
  std::vector<std::future<SweepRecord>> rows;
  for (double s : spec.s_values)
    rows.push_back(std::async(std::launch::async, [&spec, s, tol] { return sweep_row(spec, s, tol); }));
  std::vector<SweepRecord> out;
  for (auto& r : rows) out.push_back(r.get());
  std::stable_sort(out.begin(), out.end(),
                   [](const SweepRecord& a, const SweepRecord& b) { return a.s < b.s; });
  return out;
}

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least-squares fit of log y = intercept + slope log x.
inline RateFit fit_rate(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error(ErrorCode::invalid_grid, "xs and ys differ in length");
  if (xs.size() < 3) throw Error(ErrorCode::too_few_points, "need at least 3 points");
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
      throw Error(ErrorCode::non_positive_data, "log-log fit needs positive data");
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys[i]));
    mx += lx.back();
    my += ly.back();
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorCode::non_positive_data, "all x values coincide");
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  return fit;
}

}  // namespace wachspress
