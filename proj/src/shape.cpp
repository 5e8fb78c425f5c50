#include "histospline/shape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "histospline/error.hpp"
#include "histospline/eval.hpp"

namespace histospline {

namespace {

constexpr double kAffineTolerance = 1e-12;

std::string indexed(const char* name, std::size_t j) {
  return std::string(name) + "[" + std::to_string(j) + "]";
}

ConditionResult finish(std::vector<Inequality> items) {
  ConditionResult out;
  out.inequalities = std::move(items);
  out.holds = true;
  for (const auto& q : out.inequalities) {
    if (!q.holds()) {
      out.holds = false;
      out.reason = q.name;
      break;
    }
  }
  return out;
}

void require_three_cells(const Histogram& histogram) {
  if (histogram.cells() < 3) {
    throw Error(ErrorCode::NeedsMoreCells, "shape conditions need at least 3 cells, got " +
                                               std::to_string(histogram.cells()));
  }
}

}  // namespace

double ConditionResult::min_margin() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& q : inequalities) m = std::min(m, q.margin());
  return m;
}

ConditionResult check_monotonicity_conditions(const Histogram& histogram, AlphaParam alpha,
                                              double s0, double sk) {
  require_three_cells(histogram);
  const Partition& p = histogram.partition();
  const std::size_t k = histogram.cells();
  const double al = alpha.value();
  auto row = [&](std::size_t i) { return row_coefficients(p, alpha, i); };
  auto d = [&](std::size_t i) { return histogram.delta(i); };

  const double left_gap = histogram.average(1) - s0;
  const double right_gap = sk - histogram.average(k);
  const double h1 = p.step(1);
  const double hk = p.step(k);

  std::vector<Inequality> q;
  q.push_back({"I_1-S(x_0)>0", 0.0, left_gap});
  q.push_back({"S(x_k)-I_k>0", 0.0, right_gap});
  for (std::size_t j = 1; j < k; ++j) q.push_back({indexed("deltaI>0", j), 0.0, d(j)});

  q.push_back({"left.lower",
               2.0 * row(1).a * left_gap / (h1 * (5.0 - 2.0 * al)) + row(1).b * d(2) / row(2).c,
               d(1)});
  q.push_back({"left.upper", d(1), 2.0 * row(1).c * left_gap / (h1 * (2.0 * al + 1.0))});

  for (std::size_t j = 2; j + 2 <= k; ++j) {
    q.push_back({indexed("interior", j),
                 row(j).a * d(j - 1) / row(j - 1).c + row(j).b * d(j + 1) / row(j + 1).c, d(j)});
  }

  q.push_back({"right.lower",
               2.0 * row(k - 1).b * right_gap / (hk * (3.0 + 2.0 * al)) +
                   row(k - 1).a * d(k - 2) / row(k - 2).c,
               d(k - 1)});
  q.push_back({"right.upper", d(k - 1), 2.0 * row(k - 1).c * right_gap / (hk * (3.0 - 2.0 * al))});
  return finish(std::move(q));
}

ConditionResult check_convexity_conditions(const Histogram& histogram, AlphaParam alpha, double m0,
                                           double m_km1, double s0, double sk) {
  require_three_cells(histogram);
  const Partition& p = histogram.partition();
  const std::size_t k = histogram.cells();
  const double al = alpha.value();
  auto row = [&](std::size_t i) { return row_coefficients(p, alpha, i); };
  // Second differences of the data, dd(j) = delta I_j - delta I_{j-1}, j = 2..k-1.
  auto dd = [&](std::size_t j) { return histogram.delta(j) - histogram.delta(j - 1); };

  // Right-hand sides of the two end rows of the slope-difference system, divided by 6.
  const double left_side = 2.0 / p.step(1) * (histogram.average(1) - s0) - m0;
  const double right_side = 2.0 / p.step(k) * (sk - histogram.average(k)) - m_km1;
  const double left_term = left_side / (2.0 * al + 1.0);
  const double right_term = right_side / (3.0 + 2.0 * al);

  std::vector<Inequality> q;
  q.push_back({"2(I_1-S(x_0))/h_1-m_0>0", 0.0, left_side});
  q.push_back({"2(S(x_k)-I_k)/h_k-m_{k-1}>0", 0.0, right_side});
  for (std::size_t j = 2; j < k; ++j) q.push_back({indexed("ddeltaI>0", j), 0.0, dd(j)});

  if (k == 3) {
    q.push_back({"left.right", row(2).a * left_term + row(2).b * right_term, dd(2)});
    return finish(std::move(q));
  }

  q.push_back({"left", row(2).a * left_term + row(2).b * dd(3) / row(3).c, dd(2)});
  for (std::size_t j = 3; j + 2 <= k; ++j) {
    q.push_back({indexed("interior", j),
                 row(j).a * dd(j - 1) / row(j - 1).c + row(j).b * dd(j + 1) / row(j + 1).c, dd(j)});
  }
  q.push_back({"right", row(k - 1).b * right_term + row(k - 1).a * dd(k - 2) / row(k - 2).c,
               dd(k - 1)});
  return finish(std::move(q));
}

ConditionResult check_convexity_conditions(const SplineC1& spline, const Histogram& histogram) {
  const std::size_t k = spline.cells();
  return check_convexity_conditions(histogram, AlphaParam(spline.alpha()), spline.slope_at_knot(0),
                                    spline.slope_at_knot(k - 1), spline.value_at_knot(0),
                                    spline.value_at_knot(k));
}

GeometricMeshCheck check_geometric_mesh(const Partition& partition, double tolerance,
                                        AlphaParam alpha) {
  GeometricMeshCheck out;
  const std::size_t k = partition.cells();
  for (std::size_t i = 2; i < k; ++i) {
    const double h = partition.step(i);
    const double mean = std::sqrt(partition.step(i - 1) * partition.step(i + 1));
    out.max_deviation = std::max(out.max_deviation, std::abs(h - mean) / h);

    const RowCoefficients prev = row_coefficients(partition, alpha, i - 1);
    const RowCoefficients cur = row_coefficients(partition, alpha, i);
    out.max_coefficient_deviation =
        std::max({out.max_coefficient_deviation, std::abs(prev.a - cur.a),
                  std::abs(prev.b - cur.b), std::abs(prev.c - cur.c)});
  }
  out.geometric = out.max_deviation <= tolerance;
  out.coefficients_equal = out.max_coefficient_deviation <= tolerance;
  return out;
}

ShapeReport certify(const SplineC1& spline, const Histogram& histogram,
                    const CertifyOptions& options) {
  ShapeReport r;
  const std::size_t k = spline.cells();
  const Partition& p = spline.partition();

  const DataClassification data = classify_data(histogram);
  r.data_monotone = data.monotone_increasing;
  r.data_monotone_margin = data.monotone_margin;
  r.data_convex = data.convex;
  r.data_convex_margin = data.convex_margin;

  if (k >= 3) {
    r.cond20 = check_monotonicity_conditions(histogram, AlphaParam(spline.alpha()),
                                             spline.value_at_knot(0), spline.value_at_knot(k));
    r.cond24 = check_convexity_conditions(spline, histogram);
  }

  const GeometricMeshCheck mesh = check_geometric_mesh(p, options.mesh_tolerance);
  r.mesh_geometric = mesh.geometric;
  r.mesh_max_deviation = mesh.max_deviation;
  r.mesh_coefficients_equal = mesh.coefficients_equal;

  const auto m = spline.slopes();
  r.slopes_nonneg = std::all_of(m.begin(), m.end(), [](double v) { return v >= 0.0; });
  r.slopes_increasing = true;
  for (std::size_t i = 1; i <= k; ++i) r.slopes_increasing &= m[i] - m[i - 1] >= 0.0;

  double min_d1 = std::numeric_limits<double>::infinity();
  double min_d2 = std::numeric_limits<double>::infinity();
  const std::size_t n = std::max<std::size_t>(options.samples_per_cell, 2);
  for (std::size_t cell = 1; cell <= k; ++cell) {
    const double x0 = p.knot(cell - 1);
    const double h = p.step(cell);
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const double x = x0 + h * static_cast<double>(j) / static_cast<double>(n - 1);
      min_d1 = std::min(min_d1, deriv1(spline, x));
      min_d2 = std::min(min_d2, deriv2(spline, x));
    }
    if (cell < k) min_d2 = std::min(min_d2, deriv2_at_knot(spline, cell).left);
  }
  min_d1 = std::min(min_d1, deriv1(spline, p.back()));
  min_d2 = std::min(min_d2, deriv2(spline, p.back()));
  r.min_sampled_deriv1 = min_d1;
  r.min_sampled_deriv2 = min_d2;
  r.spline_monotone_verdict = min_d1 >= -options.sample_tolerance;
  r.spline_convex_verdict = min_d2 >= -options.sample_tolerance;
  r.verdicts_consistent = (!r.slopes_nonneg || r.spline_monotone_verdict) &&
                          (!r.slopes_increasing || r.spline_convex_verdict);

  r.convex_positions = convex_positions(spline);

  const auto d = delta_I(histogram);
  double scale = 1.0;
  double spread = 0.0;
  for (std::size_t j = 0; j < d.size(); ++j) {
    scale = std::max(scale, std::abs(d[j]));
    if (j > 0) spread = std::max(spread, std::abs(d[j] - d[j - 1]));
  }
  r.affine = spread <= kAffineTolerance * scale;
  return r;
}

std::vector<double> slope_sensitivity(const SplineC1& spline, const Histogram& histogram) {
  const std::size_t k = spline.cells();
  const Partition& p = histogram.partition();
  const AlphaParam alpha(spline.alpha());
  TridiagonalSystem sys =
      assemble_system(histogram, alpha, spline.value_at_knot(0), spline.value_at_knot(k));
  const auto m = spline.slopes();
  sys.rhs[0] = 2.0 * (m[0] - m[1]);
  for (std::size_t i = 1; i < k; ++i) {
    sys.rhs[i] = 2.0 * p.lambda(i) * (m[i - 1] - m[i]) + 2.0 * p.mu(i) * (m[i] - m[i + 1]);
  }
  sys.rhs[k] = 2.0 * (m[k - 1] - m[k]);
  return solve(sys);
}

FeasibleIntervals feasible_intervals(const Histogram& histogram, BoundaryValues ends) {
  const ClampedBoundary clamp{ends.s0, ends.sk};
  const SplineC1 at0 = fit(histogram, AlphaParam(0.0), clamp);
  const SplineC1 at1 = fit(histogram, AlphaParam(1.0), clamp);
  const std::size_t k = histogram.cells();
  const Partition& p = histogram.partition();

  FeasibleIntervals out;
  out.ends = ends;
  out.slopes.resize(k + 1);
  for (std::size_t i = 0; i <= k; ++i) out.slopes[i] = {at1.slope_at_knot(i), at0.slope_at_knot(i)};
  out.values.resize(k - 1);
  for (std::size_t i = 1; i < k; ++i) {
    const double half = p.step(i) / 2.0;
    out.values[i - 1] = {histogram.average(i) + half * at1.slope_at_knot(i - 1),
                         histogram.average(i) + half * at0.slope_at_knot(i)};
  }
  return out;
}

FeasibleIntervals feasible_intervals(const Histogram& histogram) {
  return feasible_intervals(histogram, boundary_values(histogram, AlphaParam(0.5)));
}

bool convex_positions(const SplineC1& spline) {
  const std::size_t k = spline.cells();
  const Partition& p = spline.partition();
  auto secant = [&](std::size_t i) {
    return (spline.value_at_knot(i + 1) - spline.value_at_knot(i)) / p.step(i + 1);
  };
  for (std::size_t i = 1; i < k; ++i) {
    const double prev = secant(i - 1);
    if (!(secant(i) > prev && prev >= 0.0)) return false;
  }
  return true;
}

}  // namespace histospline
