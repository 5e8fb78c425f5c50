#pragma once

// Sufficient-condition certificates for monotone and convex fits, slope
// sensitivity in alpha, feasible slope/value intervals and convex-position
// checks. Strict inequalities are evaluated with plain `<` and every
// inequality carries its margin (rhs - lhs) so callers can apply slack.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "histospline/mesh.hpp"
#include "histospline/spline.hpp"

namespace histospline {

/// One strict inequality lhs < rhs.
struct Inequality {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;

  double margin() const noexcept { return rhs - lhs; }
  bool holds() const noexcept { return lhs < rhs; }
};

struct ConditionResult {
  std::vector<Inequality> inequalities;
  bool holds = false;
  /// Name of the first failing inequality, empty when all hold.
  std::string reason;

  double min_margin() const;
};

/// Conditions under which the solved slopes are all positive. Includes
/// I_1 - S(x_0) > 0, S(x_k) - I_k > 0 and delta I_j > 0 as entries.
/// Requires k >= 3.
ConditionResult check_monotonicity_conditions(const Histogram& histogram, AlphaParam alpha,
                                              double s0, double sk);

/// Conditions under which consecutive slope differences are all positive,
/// given m_0 and m_{k-1}. Includes the two side conditions and the
/// positivity of each delta I_j - delta I_{j-1}. Requires k >= 3; for k = 3
/// the two end inequalities collapse into a single row.
ConditionResult check_convexity_conditions(const Histogram& histogram, AlphaParam alpha, double m0,
                                           double m_km1, double s0, double sk);

/// Post-hoc form: m_0, m_{k-1}, S(x_0), S(x_k) and alpha taken from `spline`.
ConditionResult check_convexity_conditions(const SplineC1& spline, const Histogram& histogram);

struct GeometricMeshCheck {
  bool geometric = false;
  /// max_i |h_i - sqrt(h_{i-1} h_{i+1})| / h_i over i = 2..k-1.
  double max_deviation = 0.0;
  /// Whether a_{i-1} = a_i, b_{i-1} = b_i, c_{i-1} = c_i hold to the same tolerance.
  bool coefficients_equal = false;
  double max_coefficient_deviation = 0.0;
};

GeometricMeshCheck check_geometric_mesh(const Partition& partition, double tolerance = 1e-12,
                                        AlphaParam alpha = AlphaParam(0.5));

struct CertifyOptions {
  std::size_t samples_per_cell = 1000;
  /// Sampled derivatives count as nonnegative down to -sample_tolerance.
  double sample_tolerance = 1e-12;
  double mesh_tolerance = 1e-12;
};

struct ShapeReport {
  bool data_monotone = false;
  std::optional<bool> data_convex;
  double data_monotone_margin = 0.0;
  std::optional<double> data_convex_margin;
  /// Absent when k < 3.
  std::optional<ConditionResult> cond20;
  std::optional<ConditionResult> cond24;
  bool mesh_geometric = false;
  double mesh_max_deviation = 0.0;
  bool mesh_coefficients_equal = false;
  /// All m_i >= 0.
  bool slopes_nonneg = false;
  /// All m_i - m_{i-1} >= 0.
  bool slopes_increasing = false;
  /// Verdicts from dense sampling of deriv1 / deriv2.
  bool spline_monotone_verdict = false;
  bool spline_convex_verdict = false;
  double min_sampled_deriv1 = 0.0;
  double min_sampled_deriv2 = 0.0;
  /// Slope-sign certificates imply the sampled verdicts.
  bool verdicts_consistent = false;
  bool convex_positions = false;
  /// Data has (numerically) constant divided differences.
  bool affine = false;
};

ShapeReport certify(const SplineC1& spline, const Histogram& histogram,
                    const CertifyOptions& options = {});

/// dm_i/d alpha at the spline's alpha with S(x_0), S(x_k) held fixed.
/// Intended for standard fits.
std::vector<double> slope_sensitivity(const SplineC1& spline, const Histogram& histogram);

struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  bool contains(double v) const noexcept { return lower <= v && v <= upper; }
  bool ordered() const noexcept { return lower <= upper; }
};

struct FeasibleIntervals {
  /// [m_i(1), m_i(0)] for every knot i = 0..k.
  std::vector<Interval> slopes;
  /// Element [i-1]: [I_i + h_i m_{i-1}(1) / 2, I_i + h_i m_i(0) / 2], i = 1..k-1.
  std::vector<Interval> values;
  BoundaryValues ends;
};

/// Fits at alpha = 0 and alpha = 1 with the endpoint values held at `ends`.
FeasibleIntervals feasible_intervals(const Histogram& histogram, BoundaryValues ends);

/// Endpoint values frozen at the default boundary formula for alpha = 1/2.
FeasibleIntervals feasible_intervals(const Histogram& histogram);

/// delta S(x_i) > delta S(x_{i-1}) >= 0 for i = 1..k-1, where
/// delta S(x_i) = (S(x_{i+1}) - S(x_i)) / h_{i+1}.
bool convex_positions(const SplineC1& spline);

}  // namespace histospline
