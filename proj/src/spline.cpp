#include "histospline/spline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "histospline/error.hpp"
#include "histospline/eval.hpp"

namespace histospline {

namespace {

void require_cells(const Histogram& histogram, std::size_t minimum, const char* what) {
  if (histogram.cells() < minimum) {
    throw Error(ErrorCode::NeedsMoreCells, std::string(what) + " needs at least " +
                                               std::to_string(minimum) + " cells, got " +
                                               std::to_string(histogram.cells()));
  }
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteValue, std::string(what) + " is not finite");
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

RowCoefficients row_coefficients(const Partition& partition, AlphaParam alpha, std::size_t i) {
  const double al = alpha.value();
  const double lambda = partition.lambda(i);
  const double mu = partition.mu(i);
  RowCoefficients r;
  r.a = lambda * (3.0 - 2.0 * al);
  r.b = mu * (1.0 + 2.0 * al);
  r.c = r.a + r.b + 4.0 * (al * lambda + (1.0 - al) * mu);
  return r;
}

SplineC1::SplineC1(Partition partition, std::vector<double> values, std::vector<double> slopes,
                   double alpha)
    : partition_(std::move(partition)),
      values_(std::move(values)),
      slopes_(std::move(slopes)),
      alpha_(AlphaParam(alpha).value()) {
  const std::size_t n = partition_.cells() + 1;
  if (values_.size() != n || slopes_.size() != n) {
    throw Error(ErrorCode::LengthMismatch, "spline needs one value and one slope per knot (" +
                                               std::to_string(n) + ")");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(values_[i]) || !std::isfinite(slopes_[i])) {
      throw Error(ErrorCode::NonFiniteValue, "non-finite spline data at knot " + std::to_string(i));
    }
  }
}

BoundaryValues boundary_values(const Histogram& histogram, AlphaParam alpha) {
  require_cells(histogram, 3, "the default boundary formula");
  const Partition& p = histogram.partition();
  const std::size_t k = histogram.cells();
  const double al = alpha.value();

  const double d1 = histogram.delta(1);
  const double d2 = histogram.delta(2);
  const double left = p.mu(1) * (1.0 + 2.0 * al) * (2.0 * al - 5.0) * (d1 - d2) /
                          (p.lambda(1) * (3.0 - 2.0 * al)) -
                      6.0 * d1;

  const double dk1 = histogram.delta(k - 1);
  const double dk2 = histogram.delta(k - 2);
  const double right = p.lambda(k - 1) * (9.0 - 4.0 * al * al) * (dk1 - dk2) /
                           (p.mu(k - 1) * (1.0 + 2.0 * al)) +
                       6.0 * dk1;

  return {histogram.average(1) + p.step(1) / 12.0 * left,
          histogram.average(k) + p.step(k) / 12.0 * right};
}

TridiagonalSystem assemble_system(const Histogram& histogram, AlphaParam alpha, double s0,
                                  double sk) {
  require_finite(s0, "S(x_0)");
  require_finite(sk, "S(x_k)");
  const Partition& p = histogram.partition();
  const std::size_t k = histogram.cells();
  const double al = alpha.value();

  TridiagonalSystem sys;
  sys.sub.resize(k);
  sys.diag.resize(k + 1);
  sys.sup.resize(k);
  sys.rhs.resize(k + 1);

  sys.diag[0] = 5.0 - 2.0 * al;
  sys.sup[0] = 2.0 * al + 1.0;
  sys.rhs[0] = 12.0 / p.step(1) * (histogram.average(1) - s0);

  for (std::size_t i = 1; i < k; ++i) {
    const RowCoefficients r = row_coefficients(p, alpha, i);
    sys.sub[i - 1] = r.a;
    sys.diag[i] = r.c;
    sys.sup[i] = r.b;
    sys.rhs[i] = 6.0 * histogram.delta(i);
  }

  sys.sub[k - 1] = 3.0 - 2.0 * al;
  sys.diag[k] = 3.0 + 2.0 * al;
  sys.rhs[k] = 12.0 / p.step(k) * (sk - histogram.average(k));
  return sys;
}

double knot_value_from_left_cell(const Histogram& histogram, AlphaParam alpha,
                                 std::span<const double> slopes, std::size_t i) {
  const double al = alpha.value();
  return histogram.average(i) + histogram.partition().step(i) / 12.0 *
                                    ((3.0 - 2.0 * al) * slopes[i - 1] + (3.0 + 2.0 * al) * slopes[i]);
}

double knot_value_from_right_cell(const Histogram& histogram, AlphaParam alpha,
                                  std::span<const double> slopes, std::size_t i) {
  const double al = alpha.value();
  return histogram.average(i) + histogram.partition().step(i) / 12.0 *
                                    ((2.0 * al - 5.0) * slopes[i - 1] - (2.0 * al + 1.0) * slopes[i]);
}

SplineC1 fit(const Histogram& histogram, AlphaParam alpha, const BoundaryMode& mode) {
  BoundaryValues ends;
  if (const auto* clamped = std::get_if<ClampedBoundary>(&mode)) {
    ends = {clamped->s0, clamped->sk};
  } else {
    ends = boundary_values(histogram, alpha);
  }

  const std::vector<double> slopes = solve(assemble_system(histogram, alpha, ends.s0, ends.sk));

  const std::size_t k = histogram.cells();
  std::vector<double> values(k + 1);
  values[0] = ends.s0;
  for (std::size_t i = 1; i <= k; ++i) {
    values[i] = knot_value_from_left_cell(histogram, alpha, slopes, i);
  }
  return SplineC1(histogram.partition(), std::move(values), slopes, alpha.value());
}

double FallbackReport::max_knot_discrepancy() const { return max_abs(knot_discrepancy); }
double FallbackReport::max_integral_residual() const { return max_abs(integral_residual); }

FallbackFit fit_fallback(const Histogram& histogram, AlphaParam alpha) {
  require_cells(histogram, 3, "the fallback fit");
  const Partition& p = histogram.partition();
  const std::size_t k = histogram.cells();

  std::vector<double> slopes(k + 1);
  for (std::size_t i = 1; i < k; ++i) slopes[i] = histogram.delta(i);

  const RowCoefficients first = row_coefficients(p, alpha, 1);
  slopes[0] = (6.0 * histogram.delta(1) - first.c * slopes[1] - first.b * slopes[2]) / first.a;
  const RowCoefficients last = row_coefficients(p, alpha, k - 1);
  slopes[k] =
      (6.0 * histogram.delta(k - 1) - last.a * slopes[k - 2] - last.c * slopes[k - 1]) / last.b;

  std::vector<double> values(k + 1);
  values[0] = knot_value_from_right_cell(histogram, alpha, slopes, 1);
  for (std::size_t i = 1; i <= k; ++i) {
    values[i] = knot_value_from_left_cell(histogram, alpha, slopes, i);
  }

  FallbackReport report;
  report.knot_discrepancy.resize(k - 1);
  for (std::size_t i = 1; i < k; ++i) {
    report.knot_discrepancy[i - 1] =
        std::abs(values[i] - knot_value_from_right_cell(histogram, alpha, slopes, i + 1));
  }

  SplineC1 spline(p, std::move(values), std::move(slopes), alpha.value());
  report.integral_residual.resize(k);
  for (std::size_t i = 1; i <= k; ++i) {
    report.integral_residual[i - 1] = cell_integral(spline, i) - p.step(i) * histogram.average(i);
  }
  return {std::move(spline), std::move(report)};
}

}  // namespace histospline
