#pragma once

#include <cstddef>
#include <vector>

#include "histospline/spline.hpp"

namespace histospline {

/// A point resolved to its cell (1-based) and local coordinate t in [0, 1].
/// Cells are half-open [x_{i-1}, x_i) except the last, which is closed, so
/// interior knots resolve to the cell on their right.
struct EvalPoint {
  std::size_t cell = 1;
  double t = 0.0;
};

EvalPoint locate(const Partition& partition, double x);

double value(const SplineC1& spline, double x);

/// First derivative from the general Hermite form; valid for any SplineC1.
double deriv1(const SplineC1& spline, double x);

/// Second derivative from the general Hermite form. At an interior knot
/// this is the limit from the right; see `deriv2_at_knot` for both sides.
double deriv2(const SplineC1& spline, double x);

/// Reduced first-derivative form that assumes the construction relation
/// 3 (S_i - S_{i-1}) / h_i = (2 - alpha) m_{i-1} + (1 + alpha) m_i holds on
/// every cell. Agrees with `deriv1` on standard fits only.
double deriv1_reduced(const SplineC1& spline, double x);

/// Reduced second derivative 2 (alpha + t (1 - 2 alpha)) (m_i - m_{i-1}) / h_i,
/// under the same assumption as `deriv1_reduced`.
double deriv2_reduced(const SplineC1& spline, double x);

struct OneSided {
  double left = 0.0;
  double right = 0.0;
};

/// One-sided second derivatives at interior knot i = 1..k-1.
OneSided deriv2_at_knot(const SplineC1& spline, std::size_t i);

/// Exact integral over cell i = 1..k.
double cell_integral(const SplineC1& spline, std::size_t i);

/// S''(x_i + 0) - S''(x_i - 0) for i = 1..k-1; element [i-1] is knot i.
std::vector<double> second_derivative_jumps(const SplineC1& spline);

}  // namespace histospline
