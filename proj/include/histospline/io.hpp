#pragma once

// File schemas shared by the CLI and the Python module.
//
// Histogram, JSON:  {"knots": [x_0, ..., x_k], "averages": [I_1, ..., I_k]}
// Histogram, CSV:   header "knot,average", then k+1 rows "x_i,I_{i+1}";
//                   the last row leaves the average field empty.
// Spline, JSON:     {"knots", "values", "slopes", "alpha", "boundary_mode",
//                    optional "boundary_values", "discrepancy", "warnings"}

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "histospline/mesh.hpp"
#include "histospline/shape.hpp"
#include "histospline/spline.hpp"
#include "histospline/verify.hpp"

namespace histospline::io {

/// Shortest form that keeps 17 significant digits ("%.17g").
std::string format_double(double v);

/// Accepts either schema; JSON is detected by a leading '{'. Throws
/// ParseError with a line or field diagnostic, or the validation error of
/// the histogram constructor.
Histogram parse_histogram(std::string_view text);
Histogram read_histogram_file(const std::string& path);

nlohmann::json histogram_to_json(const Histogram& histogram);
std::string histogram_to_csv(const Histogram& histogram);

struct SplineDocument {
  std::string boundary_mode = "formula";  ///< formula | clamped | fallback
  std::optional<BoundaryValues> boundary_values;
  std::optional<FallbackReport> discrepancy;
  std::vector<std::string> warnings;
};

nlohmann::json spline_to_json(const SplineC1& spline, const SplineDocument& doc = {});
SplineC1 parse_spline(std::string_view text);

nlohmann::json condition_to_json(const ConditionResult& result);
nlohmann::json report_to_json(const ShapeReport& report);

/// Columns k,hbar,err0,err1,jump,order0,order1,orderJump. Orders are empty
/// on the first row, and "exact" when the quantity is at roundoff for the
/// whole study.
std::string convergence_to_csv(const verify::ConvergenceStudy& study);

/// x,S,S1,S2 at n equispaced points over [x_0, x_k]; n >= 2.
std::string sample_csv(const SplineC1& spline, std::size_t n);

std::string read_text_file(const std::string& path);

}  // namespace histospline::io
