#pragma once

// Independent oracles (dense elimination, Simpson quadrature) and the
// refinement harness that measures convergence orders at the knots.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "histospline/mesh.hpp"
#include "histospline/spline.hpp"
#include "histospline/tridiag.hpp"

namespace histospline::verify {

/// Gaussian elimination with partial pivoting on the expanded dense matrix.
/// Limited to 500 unknowns; throws Singular on a vanishing pivot.
std::vector<double> dense_solve_oracle(const TridiagonalSystem& sys);

/// Composite Simpson rule over cell i = 1..k with `panels` (>= 64, even) panels.
double quadrature_oracle(const SplineC1& spline, std::size_t cell, std::size_t panels = 64);

enum class MeshKind { uniform, smooth_graded };

/// uniform: x_i = a + i (b - a) / k.
/// smooth_graded: x_i = g(i / k), g(s) = a + (b - a) (s + 0.2 s (1 - s)).
Partition mesh_family(MeshKind kind, std::size_t k, double a = 0.0, double b = 1.0);

struct TestFunction {
  std::string name;
  std::function<double(double)> u;
  std::function<double(double)> du;
  std::function<double(double)> antiderivative;

  /// Exact averages (U(x_i) - U(x_{i-1})) / h_i from the antiderivative.
  Histogram cell_averages(const Partition& partition) const;
};

TestFunction exp_function();
/// sin(x) + 2x.
TestFunction sinlin_function();
/// x^4 + x.
TestFunction quartic_function();
TestFunction affine_function(double slope = 2.0, double intercept = -1.0);

struct ConvergenceRecord {
  std::size_t k = 0;
  double hbar = 0.0;
  double err0 = 0.0;  ///< max_i |S(x_i) - u(x_i)|
  double err1 = 0.0;  ///< max_i |m_i - u'(x_i)|
  double jump = 0.0;  ///< max_i |S''(x_i+0) - S''(x_i-0)|
  /// Pairwise log-log slopes against the previous record; absent on the
  /// first record and when the quantity is at roundoff level.
  std::optional<double> order0;
  std::optional<double> order1;
  std::optional<double> order_jump;
};

/// Least-squares order estimate for one error quantity.
struct OrderEstimate {
  /// Errors sit at roundoff for every k; `order` is then absent.
  bool exact = false;
  std::optional<double> order;
  /// Last two pairwise orders differ by less than 0.2.
  bool stabilized = false;
};

struct ConvergenceStudy {
  std::vector<ConvergenceRecord> records;
  OrderEstimate value;
  OrderEstimate slope;
  OrderEstimate jump;
};

/// Least-squares slope of log(err) against log(hbar).
double least_squares_order(std::span<const double> hbar, std::span<const double> err);

/// Fits the exact cell averages of `f` on successively refined meshes of
/// [a, b], clamping the endpoints to u(a), u(b). Requires >= 3 strictly
/// increasing ks, each >= 3.
ConvergenceStudy convergence_study(const TestFunction& f, AlphaParam alpha, MeshKind kind,
                                   std::span<const std::size_t> ks, double a = 0.0,
                                   double b = 1.0);

}  // namespace histospline::verify
