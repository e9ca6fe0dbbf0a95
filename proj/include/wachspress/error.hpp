#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wachspress {

enum class ErrorCode {
  too_few_vertices,
  non_finite_input,
  non_convex,
  duplicate_vertex,
  singular_map,
  outside_polygon,
  boundary_point,
  degenerate_normalization,
  invalid_threshold,
  cell_cap_exceeded,
  non_finite_sample,
  missing_hessian,
  param_out_of_range,
  invalid_grid,
  non_positive_data,
  too_few_points,
  parse_error,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::too_few_vertices: return "TooFewVertices";
    case ErrorCode::non_finite_input: return "NonFiniteInput";
    case ErrorCode::non_convex: return "NonConvex";
    case ErrorCode::duplicate_vertex: return "DuplicateVertex";
    case ErrorCode::singular_map: return "SingularMap";
    case ErrorCode::outside_polygon: return "OutsidePolygon";
    case ErrorCode::boundary_point: return "BoundaryPoint";
    case ErrorCode::degenerate_normalization: return "DegenerateNormalization";
    case ErrorCode::invalid_threshold: return "InvalidThreshold";
    case ErrorCode::cell_cap_exceeded: return "CellCapExceeded";
    case ErrorCode::non_finite_sample: return "NonFiniteSample";
    case ErrorCode::missing_hessian: return "MissingHessian";
    case ErrorCode::param_out_of_range: return "ParamOutOfRange";
    case ErrorCode::invalid_grid: return "InvalidGrid";
    case ErrorCode::non_positive_data: return "NonPositiveData";
    case ErrorCode::too_few_points: return "TooFewPoints";
    case ErrorCode::parse_error: return "ParseError";
  }
  return "Unknown";
}

/// Numerical failures (as opposed to bad input) map to a distinct CLI exit code.
constexpr bool is_numerical(ErrorCode code) {
  return code == ErrorCode::cell_cap_exceeded ||
         code == ErrorCode::non_finite_sample ||
         code == ErrorCode::degenerate_normalization;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace wachspress
