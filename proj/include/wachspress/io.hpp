#pragma once

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "geometry.hpp"
#include "point.hpp"
#include "polygon.hpp"
#include "sweep.hpp"

namespace wachspress::io {

/// Shortest decimal that parses back to the same double.
inline std::string format_real(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw Error(ErrorCode::parse_error, "cannot format number");
  return {buf, end};
}

inline double parse_real(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  const auto last = text.find_last_not_of(" \t\r");
  if (first == std::string_view::npos)
    throw Error(ErrorCode::parse_error, "empty number");
  text = text.substr(first, last - first + 1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw Error(ErrorCode::parse_error, "not a number: '" + std::string(text) + "'");
  return v;
}

/// One "x y" pair per line; '#' starts a comment; blank lines are skipped.
inline std::vector<Point2> parse_vertices_text(std::string_view text) {
  std::vector<Point2> out;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() != 2)
      throw Error(ErrorCode::parse_error,
                  "line " + std::to_string(line_no) + ": expected two numbers");
    out.push_back({parse_real(tok[0]), parse_real(tok[1])});
  }
  return out;
}

/// {"vertices": [[x, y], ...]}
inline std::vector<Point2> parse_vertices_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
    throw Error(ErrorCode::parse_error, "expected an object with a \"vertices\" array");
  std::vector<Point2> out;
  for (const auto& v : j["vertices"]) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw Error(ErrorCode::parse_error, "each vertex must be [x, y]");
    out.push_back({v[0].get<double>(), v[1].get<double>()});
  }
  return out;
}

/// Dispatches on the first non-blank character: '{' means JSON.
inline std::vector<Point2> parse_vertices(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_vertices_json(text);
  return parse_vertices_text(text);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::parse_error, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Polygon read_polygon(const std::string& path) {
  return validate_polygon(parse_vertices(read_file(path)));
}

inline std::string to_text(std::span<const Point2> vertices) {
  std::string out;
  for (const auto& v : vertices) out += format_real(v.x) + " " + format_real(v.y) + "\n";
  return out;
}

inline nlohmann::json to_json(std::span<const Point2> vertices) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : vertices) arr.push_back({v.x, v.y});
  return {{"vertices", arr}};
}

inline nlohmann::json to_json(const GeometricReport& r) {
  return {{"diam", r.diam},   {"rho", r.rho},     {"sigma", r.sigma}, {"d_m", r.d_m},
          {"psi_M", r.psi_M}, {"psi_m", r.psi_m}, {"angles", r.angles}};
}

inline nlohmann::json to_json(const ConditionVerdict& v) {
  return {{"barp_holds", v.barp_holds},
          {"melp_holds", v.melp_holds},
          {"mac_holds", v.mac_holds},
          {"MAC_holds", v.MAC_holds}};
}

inline nlohmann::json to_json(const Thresholds& t) {
  return {{"sigma", t.sigma}, {"d_m", t.d_m}, {"psi_m", t.psi_m}, {"psi_M", t.psi_M}};
}

/// Missing keys keep their defaults.
inline Thresholds parse_thresholds(std::string_view text) {
  Thresholds t;
  try {
    const auto j = nlohmann::json::parse(text);
    if (!j.is_object()) throw Error(ErrorCode::parse_error, "thresholds must be a JSON object");
    t.sigma = j.value("sigma", t.sigma);
    t.d_m = j.value("d_m", t.d_m);
    t.psi_m = j.value("psi_m", t.psi_m);
    t.psi_M = j.value("psi_M", t.psi_M);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
  return t;
}

inline constexpr std::string_view kSweepHeader =
    "s,diam,sigma,d_m,psi_M,psi_m,l2_error,h1_semi_error,h1_error,h2_semi,ratio,"
    "paper_lower_bound";

/// Fixed column order; absent values are empty fields.
inline void write_sweep_csv(std::ostream& out, std::span<const SweepRecord> rows) {
  const auto opt = [](const std::optional<double>& v) { return v ? format_real(*v) : ""; };
  out << kSweepHeader << '\n';
  for (const auto& r : rows) {
    const bool geometry = !r.failure || r.diam > 0.0;
    const auto g = [&](double v) { return geometry ? format_real(v) : std::string(); };
    out << format_real(r.s) << ',' << g(r.diam) << ',' << g(r.sigma) << ',' << g(r.d_m) << ','
        << g(r.psi_M) << ',' << g(r.psi_m) << ',' << opt(r.l2_error) << ','
        << opt(r.h1_semi_error) << ',' << opt(r.h1_error) << ',' << opt(r.h2_semi) << ','
        << opt(r.ratio) << ',' << opt(r.paper_lower_bound) << '\n';
  }
}

/// Simple CSV: header row of names, comma separated, no quoting.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::optional<std::size_t> column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    return std::nullopt;
  }
};

inline CsvTable parse_csv(std::string_view text) {
  CsvTable t;
  std::istringstream in{std::string(text)};
  const auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) {
      if (!cell.empty() && cell.back() == '\r') cell.pop_back();
      cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
  };
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::parse_error, "empty CSV");
  t.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto cells = split(line);
    cells.resize(t.header.size());
    t.rows.push_back(std::move(cells));
  }
  return t;
}

/// Pairs (x, y) from two named columns; rows where either is empty are
/// skipped.
inline std::pair<std::vector<double>, std::vector<double>> csv_columns(const CsvTable& t,
                                                                       std::string_view x,
                                                                       std::string_view y) {
  const auto cx = t.column(x), cy = t.column(y);
  if (!cx) throw Error(ErrorCode::parse_error, "no column '" + std::string(x) + "'");
  if (!cy) throw Error(ErrorCode::parse_error, "no column '" + std::string(y) + "'");
  std::vector<double> xs, ys;
  for (const auto& row : t.rows) {
    if (row[*cx].empty() || row[*cy].empty()) continue;
    xs.push_back(parse_real(row[*cx]));
    ys.push_back(parse_real(row[*cy]));
  }
  return {xs, ys};
}

}  // namespace wachspress::io
