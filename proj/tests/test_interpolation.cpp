#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <wachspress/families.hpp>
#include <wachspress/interpolation.hpp>

#include "frozen.hpp"
#include "test_support.hpp"

using namespace wachspress;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const Polygon kSquare = validate_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

TEST_CASE("built-in fields have consistent derivatives", "[interp][fields]") {
  const std::vector<Point2> probes{{0.1, 0.2}, {0.8, -0.3}, {-1.0, 2.0}};
  for (const auto& u : {fields::x_one_minus_x(), fields::x_squared(), fields::xy(),
                        fields::sin_cos(), fields::affine(1, -2, 3), fields::constant(4)})
    CHECK(gradient_discrepancy(u, probes) < 1e-7);

  const ScalarField wrong{"wrong", [](Point2 p) { return p.x * p.x; },
                          [](Point2) { return Vec2{1.0, 0.0}; }, nullptr};
  CHECK(gradient_discrepancy(wrong, probes) > 0.1);
}

TEST_CASE("interpolant basics", "[interp]") {
  SECTION("vertex values are reproduced") {
    const Polygon k = make_cex1(0.7);
    const auto iu = interpolate(k, fields::sin_cos());
    for (const auto& v : k.vertices()) CHECK_THAT(iu.value(v), WithinAbs(fields::sin_cos().value(v), 1e-15));
  }

  SECTION("Iu = s(1-s) lambda_3 for u = x(1-x) on K_s") {
    for (double s : {0.55, 0.75}) {
      const auto iu = interpolate(make_cex1(s), fields::x_one_minus_x());
      for (const auto& x : triangle_grid({{0, 0}, {1, 0}, {0, 1}}, 8))
        CHECK_THAT(iu.value(x), WithinRel(s * (1 - s) * oracle_lambda_cex1(s, x), 1e-12));
    }
  }

  SECTION("Iu = x for u = x^2 on the unit square") {
    const auto iu = interpolate(kSquare, fields::x_squared());
    for (const Point2 x : {Point2{0.3, 0.4}, Point2{0.9, 0.05}}) {
      CHECK_THAT(iu.value(x), WithinAbs(x.x, 1e-15));
      CHECK_THAT(iu.gradient(x).x, WithinAbs(1.0, 1e-14));
      CHECK_THAT(iu.gradient(x).y, WithinAbs(0.0, 1e-14));
    }
  }
}

TEST_CASE("affine fields are reproduced exactly", "[interp][property]") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> c(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Polygon p = testing::random_convex_polygon(rng, 3 + trial % 6);
    const auto u = fields::affine(c(rng), c(rng), c(rng));
    const auto iu = interpolate(p, u);
    for (int k = 0; k < 20; ++k) {
      const Point2 x = testing::random_interior_point(rng, p);
      CHECK_THAT(iu.value(x), WithinAbs(u.value(x), 1e-11));
      CHECK(norm(iu.gradient(x) - u.gradient(x)) <= 1e-9);
    }
    if (trial % 5 == 0) {
      const ErrorReport r = error_report(p, u);
      CHECK(r.l2_error <= 1e-10);
      CHECK(r.h1_semi_error <= 1e-8);
      CHECK(r.zero_h2);
      CHECK_FALSE(r.ratio.has_value());
    }
  }
}

TEST_CASE("error norms: closed forms on the unit square", "[interp][norms]") {
  // u = x(1-x): I u = 0, so the errors are the norms of u itself
  const ErrorReport a = error_report(kSquare, fields::x_one_minus_x());
  CHECK_THAT(a.l2_error, WithinRel(std::sqrt(1.0 / 30.0), 1e-9));
  CHECK_THAT(a.h1_semi_error, WithinRel(std::sqrt(1.0 / 3.0), 1e-9));
  CHECK_THAT(a.h1_error, WithinRel(std::sqrt(11.0 / 30.0), 1e-9));
  CHECK_THAT(a.h2_semi, WithinRel(2.0, 1e-12));
  CHECK_THAT(a.diam, WithinRel(std::sqrt(2.0), 1e-15));
  REQUIRE(a.ratio.has_value());
  CHECK_THAT(*a.ratio, WithinRel(std::sqrt(11.0 / 30.0) / (2.0 * std::sqrt(2.0)), 1e-9));

  // u = x^2: I u = x, error x^2 - x
  const ErrorReport b = error_report(kSquare, fields::x_squared());
  CHECK_THAT(b.l2_error, WithinRel(std::sqrt(1.0 / 30.0), 1e-9));
  CHECK_THAT(b.h1_semi_error, WithinRel(std::sqrt(1.0 / 3.0), 1e-9));

  // u = xy is bilinear, hence reproduced on the square
  const ErrorReport c = error_report(kSquare, fields::xy());
  CHECK(c.h1_error <= 1e-8);
  CHECK_THAT(c.h2_semi, WithinRel(std::sqrt(2.0), 1e-12));

  CHECK_THAT(a.h1_error, WithinRel(std::hypot(l2_error(kSquare, fields::x_one_minus_x()),
                                              h1_seminorm_error(kSquare, fields::x_one_minus_x())),
                                   1e-12));
  CHECK_THAT(h1_error(kSquare, fields::x_squared()), WithinRel(b.h1_error, 1e-12));
}

TEST_CASE("H2 seminorm of the counterexample functions is 2 |K|^(1/2)", "[interp][norms]") {
  for (double s : {0.51, 0.6, 0.75, 0.9}) {
    const Polygon k = make_cex1(s);
    CHECK_THAT(h2_seminorm(k, fields::x_one_minus_x()), WithinRel(2 * std::sqrt(k.area()), 1e-9));
  }
  for (double s : {1e-2, 1e-4, std::ldexp(1.0, -16)}) {
    const Polygon k = make_cex2(s);
    CHECK_THAT(h2_seminorm(k, fields::x_squared()), WithinRel(2 * std::sqrt(k.area()), 1e-9));
  }
}

TEST_CASE("counterexample errors", "[interp][norms]") {
  SECTION("K_s, s = 0.75: high-precision reference value") {
    CHECK_THAT(h1_seminorm_error(make_cex1(0.75), fields::x_one_minus_x(), 1e-10),
               WithinRel(0.4742345382847, 1e-8));
  }
  SECTION("K_s, s = 0.55 dominates the lower bound") {
    const double e = h1_seminorm_error(make_cex1(0.55), fields::x_one_minus_x());
    CHECK(e >= cex1_lower_bound(0.55));
  }
  SECTION("thin trapezoid, s = 4^-3 and 4^-8") {
    CHECK_THAT(h1_seminorm_error(make_cex2(std::ldexp(1.0, -6)), fields::x_squared(), 1e-10),
               WithinRel(1.17393918612, 1e-8));
    CHECK_THAT(h1_seminorm_error(make_cex2(std::ldexp(1.0, -16)), fields::x_squared(), 1e-10),
               WithinRel(8.80035396981718, 1e-8));
  }
}

TEST_CASE("seminorm ratio is scale invariant for quadratics", "[interp][property]") {
  const auto u = fields::x_squared();
  const Polygon k = make_cex1(0.7);
  const auto ref = error_report(k, u);
  for (double h : {0.5, 0.125, 4.0}) {
    const Polygon kh = apply_affine(k, {Mat2::scaling(h), {0, 0}});
    const auto r = error_report(kh, u);
    CHECK_THAT(r.h1_semi_error / (r.diam * r.h2_semi),
               WithinRel(ref.h1_semi_error / (ref.diam * ref.h2_semi), 1e-7));
  }
}

TEST_CASE("benign polygons stay under the frozen constant", "[interp][benign]") {
  for (int n = 3; n <= 8; ++n)
    for (double h : {1.0, 0.125}) {
      const auto r = error_report(make_regular_ngon(n, h), fields::sin_cos());
      REQUIRE(r.ratio.has_value());
      CHECK(*r.ratio < frozen::kBenignRatioCap);
    }
}

TEST_CASE("norm errors", "[interp][errors]") {
  const ScalarField no_hessian{"no-hessian", [](Point2 p) { return p.x * p.x; },
                               [](Point2 p) { return Vec2{2 * p.x, 0.0}; }, nullptr};
  try {
    h2_seminorm(kSquare, no_hessian);
    FAIL("expected MissingHessian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::missing_hessian);
  }
  CHECK_NOTHROW(h1_seminorm_error(kSquare, no_hessian));

  try {
    l2_error(kSquare, fields::x_squared(), 0.0);
    FAIL("expected InvalidThreshold");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_threshold);
  }
}
