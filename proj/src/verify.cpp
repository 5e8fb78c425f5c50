#include "histospline/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "histospline/error.hpp"
#include "histospline/eval.hpp"

namespace histospline::verify {

namespace {

constexpr std::size_t kMaxDenseSize = 500;
constexpr double kStabilizationWindow = 0.2;
// Roundoff floors: averages carry O(eps / h) error, so knot values see
// eps k, slopes eps k^2 and second-derivative jumps eps k^3 (times scale).
constexpr double kRoundoffFactor = 8.0;

std::optional<double> pairwise_order(double h_prev, double h, double e_prev, double e,
                                     double floor) {
  if (e_prev <= floor || e <= floor) return std::nullopt;
  return std::log(e / e_prev) / std::log(h / h_prev);
}

OrderEstimate estimate(std::span<const double> hbar, std::span<const double> err, double floor) {
  OrderEstimate out;
  out.exact = std::all_of(err.begin(), err.end(), [&](double e) { return e <= floor; });
  if (out.exact) {
    out.stabilized = true;
    return out;
  }
  if (std::any_of(err.begin(), err.end(), [&](double e) { return e <= floor; })) return out;
  out.order = least_squares_order(hbar, err);
  const std::size_t n = err.size();
  const double last = std::log(err[n - 1] / err[n - 2]) / std::log(hbar[n - 1] / hbar[n - 2]);
  const double prev = std::log(err[n - 2] / err[n - 3]) / std::log(hbar[n - 2] / hbar[n - 3]);
  out.stabilized = std::abs(last - prev) < kStabilizationWindow;
  return out;
}

}  // namespace

std::vector<double> dense_solve_oracle(const TridiagonalSystem& sys) {
  sys.validate_shape();
  const std::size_t n = sys.size();
  if (n > kMaxDenseSize) {
    throw Error(ErrorCode::InvalidArgument,
                "dense oracle limited to " + std::to_string(kMaxDenseSize) + " unknowns");
  }
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    a[j][j] = sys.diag[j];
    if (j > 0) a[j][j - 1] = sys.sub[j - 1];
    if (j + 1 < n) a[j][j + 1] = sys.sup[j];
    a[j][n] = sys.rhs[j];
  }

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[best][col])) best = r;
    }
    if (a[best][col] == 0.0) {
      throw Error(ErrorCode::Singular, "singular matrix at column " + std::to_string(col));
    }
    std::swap(a[col], a[best]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a[r][col] / a[col][col];
      if (factor == 0.0) continue;
      for (std::size_t c = col; c <= n; ++c) a[r][c] -= factor * a[col][c];
    }
  }

  std::vector<double> x(n);
  for (std::size_t r = n; r-- > 0;) {
    double s = a[r][n];
    for (std::size_t c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return x;
}

double quadrature_oracle(const SplineC1& spline, std::size_t cell, std::size_t panels) {
  if (cell < 1 || cell > spline.cells()) {
    throw Error(ErrorCode::BadCellIndex, "cell " + std::to_string(cell) + " outside 1..k");
  }
  panels = std::max<std::size_t>(panels, 64);
  if (panels % 2 != 0) ++panels;
  const double x0 = spline.partition().knot(cell - 1);
  const double x1 = spline.partition().knot(cell);
  const double h = (x1 - x0) / static_cast<double>(panels);

  double sum = value(spline, x0) + value(spline, x1);
  for (std::size_t j = 1; j < panels; ++j) {
    const double x = x0 + h * static_cast<double>(j);
    sum += (j % 2 == 1 ? 4.0 : 2.0) * value(spline, x);
  }
  return sum * h / 3.0;
}

Partition mesh_family(MeshKind kind, std::size_t k, double a, double b) {
  if (k < 3) throw Error(ErrorCode::NeedsMoreCells, "mesh families need k >= 3");
  if (!(b > a)) throw Error(ErrorCode::InvalidArgument, "mesh interval must satisfy a < b");
  std::vector<double> x(k + 1);
  for (std::size_t i = 0; i <= k; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(k);
    const double g = kind == MeshKind::uniform ? s : s + 0.2 * s * (1.0 - s);
    x[i] = a + (b - a) * g;
  }
  x.front() = a;
  x.back() = b;
  return Partition(std::move(x));
}

Histogram TestFunction::cell_averages(const Partition& partition) const {
  const std::size_t k = partition.cells();
  std::vector<double> avg(k);
  double prev = antiderivative(partition.knot(0));
  for (std::size_t i = 1; i <= k; ++i) {
    const double next = antiderivative(partition.knot(i));
    avg[i - 1] = (next - prev) / partition.step(i);
    prev = next;
  }
  return Histogram(partition, std::move(avg));
}

TestFunction exp_function() {
  auto e = [](double x) { return std::exp(x); };
  return {"exp", e, e, e};
}

TestFunction sinlin_function() {
  return {"sinlin", [](double x) { return std::sin(x) + 2.0 * x; },
          [](double x) { return std::cos(x) + 2.0; },
          [](double x) { return -std::cos(x) + x * x; }};
}

TestFunction quartic_function() {
  return {"quartic", [](double x) { return x * x * x * x + x; },
          [](double x) { return 4.0 * x * x * x + 1.0; },
          [](double x) { return x * x * x * x * x / 5.0 + x * x / 2.0; }};
}

TestFunction affine_function(double slope, double intercept) {
  return {"affine", [=](double x) { return slope * x + intercept; }, [=](double) { return slope; },
          [=](double x) { return slope * x * x / 2.0 + intercept * x; }};
}

double least_squares_order(std::span<const double> hbar, std::span<const double> err) {
  if (hbar.size() != err.size() || hbar.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "order fit needs matching samples, at least 2");
  }
  const double n = static_cast<double>(hbar.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t j = 0; j < hbar.size(); ++j) {
    const double lx = std::log(hbar[j]);
    const double ly = std::log(err[j]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceStudy convergence_study(const TestFunction& f, AlphaParam alpha, MeshKind kind,
                                   std::span<const std::size_t> ks, double a, double b) {
  if (ks.size() < 3) {
    throw Error(ErrorCode::InvalidArgument, "order estimates need at least 3 refinements");
  }
  for (std::size_t j = 1; j < ks.size(); ++j) {
    if (ks[j] <= ks[j - 1]) throw Error(ErrorCode::InvalidArgument, "ks must be strictly increasing");
  }

  ConvergenceStudy study;
  double scale0 = 1.0;
  double scale1 = 1.0;
  for (const std::size_t k : ks) {
    const Partition mesh = mesh_family(kind, k, a, b);
    const Histogram data = f.cell_averages(mesh);
    const SplineC1 s = fit(data, alpha, ClampedBoundary{f.u(a), f.u(b)});

    ConvergenceRecord rec;
    rec.k = k;
    rec.hbar = mesh.max_step();
    for (std::size_t i = 0; i <= k; ++i) {
      const double x = mesh.knot(i);
      rec.err0 = std::max(rec.err0, std::abs(s.value_at_knot(i) - f.u(x)));
      rec.err1 = std::max(rec.err1, std::abs(s.slope_at_knot(i) - f.du(x)));
      scale0 = std::max(scale0, std::abs(f.u(x)));
      scale1 = std::max(scale1, std::abs(f.du(x)));
    }
    for (const double j : second_derivative_jumps(s)) rec.jump = std::max(rec.jump, std::abs(j));
    study.records.push_back(rec);
  }

  const double eps = std::numeric_limits<double>::epsilon();
  const double kmax = static_cast<double>(ks.back());
  const double floor0 = kRoundoffFactor * eps * kmax * scale0;
  const double floor1 = kRoundoffFactor * eps * kmax * kmax * scale1;
  const double floorj = floor1 * kmax;

  std::vector<double> hbar, e0, e1, ej;
  for (std::size_t j = 0; j < study.records.size(); ++j) {
    auto& rec = study.records[j];
    if (j > 0) {
      const auto& prev = study.records[j - 1];
      rec.order0 = pairwise_order(prev.hbar, rec.hbar, prev.err0, rec.err0, floor0);
      rec.order1 = pairwise_order(prev.hbar, rec.hbar, prev.err1, rec.err1, floor1);
      rec.order_jump = pairwise_order(prev.hbar, rec.hbar, prev.jump, rec.jump, floorj);
    }
    hbar.push_back(rec.hbar);
    e0.push_back(rec.err0);
    e1.push_back(rec.err1);
    ej.push_back(rec.jump);
  }
  study.value = estimate(hbar, e0, floor0);
  study.slope = estimate(hbar, e1, floor1);
  study.jump = estimate(hbar, ej, floorj);
  return study;
}

}  // namespace histospline::verify
