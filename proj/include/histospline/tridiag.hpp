#pragma once

#include <cstddef>
#include <vector>

namespace histospline {

/// Tridiagonal system with N unknowns. Row j reads
///   sub[j-1] x_{j-1} + diag[j] x_j + sup[j] x_{j+1} = rhs[j],
/// so `sub` and `sup` hold N-1 entries each.
struct TridiagonalSystem {
  std::vector<double> sub;
  std::vector<double> diag;
  std::vector<double> sup;
  std::vector<double> rhs;

  std::size_t size() const noexcept { return diag.size(); }

  /// Throws LengthMismatch when the band lengths disagree.
  void validate_shape() const;
  /// Smallest per-row slack |c_j| - |a_j| - |b_j|.
  double dominance_margin() const;
};

/// Computes A x for the system matrix.
std::vector<double> apply(const TridiagonalSystem& sys, const std::vector<double>& x);

/// Thomas elimination without pivoting. Rows must be (at least weakly)
/// diagonally dominant; throws NotDominant past a 1e-14 relative slack and
/// ZeroPivot on a numerically singular elimination step.
std::vector<double> solve(const TridiagonalSystem& sys);

}  // namespace histospline
