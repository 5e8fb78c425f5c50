#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "histospline/mesh.hpp"
#include "histospline/tridiag.hpp"

namespace histospline {

/// Endpoint values from the Taylor-expansion boundary formulas (default).
struct FormulaBoundary {};

/// Caller-prescribed endpoint values S(x_0), S(x_k).
struct ClampedBoundary {
  double s0 = 0.0;
  double sk = 0.0;
};

using BoundaryMode = std::variant<FormulaBoundary, ClampedBoundary>;

struct BoundaryValues {
  double s0 = 0.0;
  double sk = 0.0;
};

/// Coefficients of interior row i of the slope system.
struct RowCoefficients {
  double a = 0.0;  ///< multiplies m_{i-1}
  double c = 0.0;  ///< multiplies m_i
  double b = 0.0;  ///< multiplies m_{i+1}
};

RowCoefficients row_coefficients(const Partition& partition, AlphaParam alpha, std::size_t i);

/// C1 piecewise cubic in Hermite form: a value S(x_i) and a slope m_i at
/// every knot, shared by both adjacent pieces.
class SplineC1 {
 public:
  SplineC1(Partition partition, std::vector<double> values, std::vector<double> slopes,
           double alpha);

  const Partition& partition() const noexcept { return partition_; }
  std::size_t cells() const noexcept { return partition_.cells(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> slopes() const noexcept { return slopes_; }
  double value_at_knot(std::size_t i) const { return values_.at(i); }
  double slope_at_knot(std::size_t i) const { return slopes_.at(i); }
  double alpha() const noexcept { return alpha_; }

 private:
  Partition partition_;
  std::vector<double> values_;
  std::vector<double> slopes_;
  double alpha_;
};

/// Default endpoint values; requires k >= 3.
BoundaryValues boundary_values(const Histogram& histogram, AlphaParam alpha);

/// The closed (k+1)-row slope system for the given endpoint values.
TridiagonalSystem assemble_system(const Histogram& histogram, AlphaParam alpha, double s0,
                                  double sk);

/// Knot value S(x_i) seen from cell i (its right end), i = 1..k.
double knot_value_from_left_cell(const Histogram& histogram, AlphaParam alpha,
                                 std::span<const double> slopes, std::size_t i);
/// Knot value S(x_{i-1}) seen from cell i (its left end), i = 1..k.
double knot_value_from_right_cell(const Histogram& histogram, AlphaParam alpha,
                                  std::span<const double> slopes, std::size_t i);

SplineC1 fit(const Histogram& histogram, AlphaParam alpha,
             const BoundaryMode& mode = FormulaBoundary{});

/// How far a fallback spline is from satisfying the construction equations.
struct FallbackReport {
  /// Element [i-1]: |S(x_i) from cell i - S(x_i) from cell i+1|, i = 1..k-1.
  std::vector<double> knot_discrepancy;
  /// Element [i-1]: integral of the spline over cell i minus h_i I_i.
  std::vector<double> integral_residual;

  double max_knot_discrepancy() const;
  double max_integral_residual() const;
};

struct FallbackFit {
  SplineC1 spline;
  FallbackReport report;
};

/// Interior slopes set to delta I_i, end slopes from rows 1 and k-1 of the
/// slope system. Requires k >= 3.
FallbackFit fit_fallback(const Histogram& histogram, AlphaParam alpha);

}  // namespace histospline
