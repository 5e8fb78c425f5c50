#include "histospline/tridiag.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "histospline/error.hpp"

namespace histospline {

namespace {

constexpr double kDominanceTolerance = 1e-14;

double off_diagonal(const TridiagonalSystem& sys, std::size_t j) {
  double s = 0.0;
  if (j > 0) s += std::abs(sys.sub[j - 1]);
  if (j + 1 < sys.size()) s += std::abs(sys.sup[j]);
  return s;
}

}  // namespace

void TridiagonalSystem::validate_shape() const {
  const std::size_t n = diag.size();
  if (n == 0) throw Error(ErrorCode::LengthMismatch, "empty tridiagonal system");
  if (rhs.size() != n || sub.size() + 1 != n || sup.size() + 1 != n) {
    throw Error(ErrorCode::LengthMismatch,
                "band lengths (sub " + std::to_string(sub.size()) + ", diag " + std::to_string(n) +
                    ", sup " + std::to_string(sup.size()) + ", rhs " + std::to_string(rhs.size()) +
                    ") do not describe a tridiagonal system");
  }
}

double TridiagonalSystem::dominance_margin() const {
  validate_shape();
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < size(); ++j) {
    margin = std::min(margin, std::abs(diag[j]) - off_diagonal(*this, j));
  }
  return margin;
}

std::vector<double> apply(const TridiagonalSystem& sys, const std::vector<double>& x) {
  sys.validate_shape();
  const std::size_t n = sys.size();
  if (x.size() != n) throw Error(ErrorCode::LengthMismatch, "vector length does not match system");
  std::vector<double> y(n);
  for (std::size_t j = 0; j < n; ++j) {
    double v = sys.diag[j] * x[j];
    if (j > 0) v += sys.sub[j - 1] * x[j - 1];
    if (j + 1 < n) v += sys.sup[j] * x[j + 1];
    y[j] = v;
  }
  return y;
}

std::vector<double> solve(const TridiagonalSystem& sys) {
  sys.validate_shape();
  const std::size_t n = sys.size();

  for (std::size_t j = 0; j < n; ++j) {
    const double off = off_diagonal(sys, j);
    const double scale = std::abs(sys.diag[j]) + off;
    if (std::abs(sys.diag[j]) < off - kDominanceTolerance * scale) {
      throw Error(ErrorCode::NotDominant, "row " + std::to_string(j) + " is not diagonally dominant");
    }
  }

  // Forward elimination; sup_star[j] and rhs_star[j] are the normalised
  // upper band and right-hand side of the LU factor.
  std::vector<double> sup_star(n, 0.0);
  std::vector<double> rhs_star(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double lower = j > 0 ? sys.sub[j - 1] : 0.0;
    const double pivot = sys.diag[j] - (j > 0 ? lower * sup_star[j - 1] : 0.0);
    const double scale = std::abs(sys.diag[j]) + off_diagonal(sys, j);
    if (!(std::abs(pivot) > std::numeric_limits<double>::epsilon() * scale)) {
      throw Error(ErrorCode::ZeroPivot, "zero pivot at row " + std::to_string(j));
    }
    if (j + 1 < n) sup_star[j] = sys.sup[j] / pivot;
    rhs_star[j] = (sys.rhs[j] - (j > 0 ? lower * rhs_star[j - 1] : 0.0)) / pivot;
  }

  std::vector<double> x(n);
  x[n - 1] = rhs_star[n - 1];
  for (std::size_t j = n - 1; j-- > 0;) x[j] = rhs_star[j] - sup_star[j] * x[j + 1];
  return x;
}

}  // namespace histospline
