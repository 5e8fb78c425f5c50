#include "histospline/eval.hpp"

#include <algorithm>
#include <string>

#include "histospline/error.hpp"

namespace histospline {

namespace {

// Hermite data of one cell.
struct Piece {
  double h, s_left, s_right, m_left, m_right, t;

  double secant() const { return (s_right - s_left) / h; }
};

Piece piece(const SplineC1& s, std::size_t cell, double t) {
  return {s.partition().step(cell), s.value_at_knot(cell - 1), s.value_at_knot(cell),
          s.slope_at_knot(cell - 1), s.slope_at_knot(cell), t};
}

Piece piece_at(const SplineC1& s, double x) {
  const EvalPoint p = locate(s.partition(), x);
  return piece(s, p.cell, p.t);
}

double second(const Piece& p) {
  const double t = p.t;
  return 6.0 * (1.0 - 2.0 * t) * p.secant() / p.h +
         ((6.0 * t - 4.0) * p.m_left + (6.0 * t - 2.0) * p.m_right) / p.h;
}

}  // namespace

EvalPoint locate(const Partition& partition, double x) {
  if (!(x >= partition.front() && x <= partition.back())) {
    throw Error(ErrorCode::OutOfDomain, "x = " + std::to_string(x) + " outside [" +
                                            std::to_string(partition.front()) + ", " +
                                            std::to_string(partition.back()) + "]");
  }
  const auto knots = partition.knots();
  const std::size_t k = partition.cells();
  // First knot strictly greater than x closes the cell; x_k falls back to cell k.
  const auto it = std::upper_bound(knots.begin(), knots.end(), x);
  std::size_t cell = static_cast<std::size_t>(it - knots.begin());
  cell = std::clamp<std::size_t>(cell, 1, k);
  const double t = (x - knots[cell - 1]) / partition.step(cell);
  return {cell, std::clamp(t, 0.0, 1.0)};
}

double value(const SplineC1& spline, double x) {
  const Piece p = piece_at(spline, x);
  const double t = p.t;
  const double u = 1.0 - t;
  return u * u * (1.0 + 2.0 * t) * p.s_left + t * t * (3.0 - 2.0 * t) * p.s_right +
         p.h * t * u * (u * p.m_left - t * p.m_right);
}

double deriv1(const SplineC1& spline, double x) {
  const Piece p = piece_at(spline, x);
  const double t = p.t;
  return 6.0 * t * (1.0 - t) * p.secant() + (1.0 - t) * (1.0 - 3.0 * t) * p.m_left +
         t * (3.0 * t - 2.0) * p.m_right;
}

double deriv2(const SplineC1& spline, double x) { return second(piece_at(spline, x)); }

double deriv1_reduced(const SplineC1& spline, double x) {
  const Piece p = piece_at(spline, x);
  const double t = p.t;
  const double al = spline.alpha();
  return (1.0 - t) * (1.0 + (1.0 - 2.0 * al) * t) * p.m_left +
         t * (2.0 * al + t * (1.0 - 2.0 * al)) * p.m_right;
}

double deriv2_reduced(const SplineC1& spline, double x) {
  const Piece p = piece_at(spline, x);
  const double al = spline.alpha();
  return 2.0 * (al + p.t * (1.0 - 2.0 * al)) / p.h * (p.m_right - p.m_left);
}

OneSided deriv2_at_knot(const SplineC1& spline, std::size_t i) {
  if (i < 1 || i >= spline.cells()) {
    throw Error(ErrorCode::BadCellIndex, "interior knot " + std::to_string(i) + " outside 1..k-1");
  }
  return {second(piece(spline, i, 1.0)), second(piece(spline, i + 1, 0.0))};
}

double cell_integral(const SplineC1& spline, std::size_t i) {
  if (i < 1 || i > spline.cells()) {
    throw Error(ErrorCode::BadCellIndex, "cell " + std::to_string(i) + " outside 1..k");
  }
  const Piece p = piece(spline, i, 0.0);
  return p.h * ((p.s_left + p.s_right) / 2.0 + p.h * (p.m_left - p.m_right) / 12.0);
}

std::vector<double> second_derivative_jumps(const SplineC1& spline) {
  std::vector<double> jumps(spline.cells() - 1);
  for (std::size_t i = 1; i < spline.cells(); ++i) {
    const OneSided d = deriv2_at_knot(spline, i);
    jumps[i - 1] = d.right - d.left;
  }
  return jumps;
}

}  // namespace histospline
