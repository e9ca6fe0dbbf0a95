// Command line front end: coordinate evaluation, quality reports,
// family sweeps and log-log rate fits.
//
//   wachspress eval --polygon FILE --point X,Y [--form area|cot] [--grad]
//   wachspress quality --polygon FILE [--thresholds JSON]
//   wachspress sweep --family NAME [--grid S1,S2,...] [--tol T] --out FILE.csv
//   wachspress rate --in FILE.csv --x COL --y COL
//
// Exit codes: 0 success, 2 invalid input, 3 numerical failure.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <wachspress/io.hpp>
#include <wachspress/wachspress.hpp>

namespace {

using namespace wachspress;
using nlohmann::json;

constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

int exit_code(const Error& e) { return is_numerical(e.code()) ? kExitNumerical : kExitInvalid; }

Point2 parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::parse_error, "point must be X,Y");
  return {io::parse_real(text.substr(0, comma)), io::parse_real(text.substr(comma + 1))};
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::string::size_type start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string::npos ? std::string::npos
                                                                      : comma - start);
    out.push_back(io::parse_real(piece));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<FieldKind> parse_field(const std::string& name) {
  if (name == "x(1-x)") return FieldKind::x_one_minus_x;
  if (name == "x^2") return FieldKind::x_squared;
  if (name == "xy") return FieldKind::xy;
  if (name == "sin(x)cos(y)") return FieldKind::sin_cos;
  return std::nullopt;
}

json points_json(std::span<const Vec2> v) {
  json arr = json::array();
  for (const auto& g : v) arr.push_back({g.x, g.y});
  return arr;
}

int run_eval(const std::string& polygon_path, const std::string& point_text,
             const std::string& form_name, bool with_grad) {
  const Polygon p = io::read_polygon(polygon_path);
  const Point2 x = parse_point(point_text);
  const WeightForm form = form_name == "cot" ? WeightForm::cotangent : WeightForm::area;
  const BasisEvaluation e = WachspressBasis(p).evaluate(x, form, with_grad);
  json out = {{"point", {x.x, x.y}},
              {"form", form == WeightForm::area ? "area" : "cot"},
              {"weights", e.weights},
              {"coords", e.coords}};
  if (e.grads) out["grads"] = points_json(*e.grads);
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_quality(const std::string& polygon_path, const std::string& thresholds_text) {
  const Polygon p = io::read_polygon(polygon_path);
  Thresholds t;
  if (!thresholds_text.empty()) {
    const bool inline_json = thresholds_text.find('{') != std::string::npos;
    t = io::parse_thresholds(inline_json ? thresholds_text : io::read_file(thresholds_text));
  }
  const GeometricReport r = quality_report(p);
  const json out = {{"report", io::to_json(r)},
                    {"thresholds", io::to_json(t)},
                    {"verdict", io::to_json(check_conditions(r, t))}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_sweep_cmd(const std::string& family_name, const std::string& grid,
                  const std::string& function, int sides, double tol,
                  const std::string& out_path) {
  const auto family = parse_family(family_name);
  if (!family) throw Error(ErrorCode::parse_error, "unknown family '" + family_name + "'");
  FamilySpec spec = FamilySpec::defaults(*family);
  if (!grid.empty() && grid != "default") spec.s_values = parse_grid(grid);
  if (!function.empty()) {
    const auto f = parse_field(function);
    if (!f) throw Error(ErrorCode::parse_error, "unknown function '" + function + "'");
    spec.function = *f;
  }
  spec.ngon_sides = sides;

  const auto rows = run_sweep(spec, tol);
  std::ofstream out(out_path);
  if (!out) throw Error(ErrorCode::parse_error, "cannot write '" + out_path + "'");
  io::write_sweep_csv(out, rows);

  int code = 0;
  for (const auto& r : rows)
    if (r.failure) {
      std::cerr << "s=" << io::format_real(r.s) << ": " << r.failure_message << '\n';
      code = std::max(code, is_numerical(*r.failure) ? kExitNumerical : kExitInvalid);
    }
  return code;
}

int run_rate(const std::string& in_path, const std::string& x, const std::string& y) {
  const auto table = io::parse_csv(io::read_file(in_path));
  const auto [xs, ys] = io::csv_columns(table, x, y);
  const RateFit fit = fit_rate(xs, ys);
  const json out = {{"slope", fit.slope},
                    {"intercept", fit.intercept},
                    {"r_squared", fit.r_squared},
                    {"points", xs.size()}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wachspress coordinates, polygon quality metrics and interpolation error sweeps"};
  app.require_subcommand(1);

  std::string polygon_path, point_text, form = "area", thresholds;
  bool with_grad = false;
  auto* eval = app.add_subcommand("eval", "Evaluate coordinates (and gradients) at a point");
  eval->add_option("--polygon", polygon_path, "Polygon file (text or JSON)")->required();
  eval->add_option("--point", point_text, "Query point X,Y")->required();
  eval->add_option("--form", form, "Weight form")->check(CLI::IsMember({"area", "cot"}));
  eval->add_flag("--grad", with_grad, "Also print coordinate gradients");

  auto* quality = app.add_subcommand("quality", "Geometric report and condition verdict");
  quality->add_option("--polygon", polygon_path, "Polygon file (text or JSON)")->required();
  quality->add_option("--thresholds", thresholds,
                      "Inline JSON or a file: {\"sigma\",\"d_m\",\"psi_m\",\"psi_M\"}");

  std::string family, grid, function, out_path;
  double tol = kDefaultNormTolerance;
  int sides = 6;
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep over a polygon family, CSV output");
  sweep->add_option("--family", family, "cex1|cex2|f1|f2|benign-square|benign-ngon")->required();
  sweep->add_option("--grid", grid, "Comma-separated parameter values (default: family grid)");
  sweep->add_option("--tol", tol, "Relative tolerance of the norm integrals");
  sweep->add_option("--function", function, "x(1-x)|x^2|xy|sin(x)cos(y)");
  sweep->add_option("--sides", sides, "Vertex count for benign-ngon");
  sweep->add_option("--out", out_path, "Output CSV")->required();

  std::string in_path, col_x, col_y;
  auto* rate = app.add_subcommand("rate", "Log-log least-squares slope between two CSV columns");
  rate->add_option("--in", in_path, "Input CSV")->required();
  rate->add_option("--x", col_x, "Abscissa column")->required();
  rate->add_option("--y", col_y, "Ordinate column")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*eval) return run_eval(polygon_path, point_text, form, with_grad);
    if (*quality) return run_quality(polygon_path, thresholds);
    if (*sweep) return run_sweep_cmd(family, grid, function, sides, tol, out_path);
    if (*rate) return run_rate(in_path, col_x, col_y);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e);
  }
  return 0;
}
