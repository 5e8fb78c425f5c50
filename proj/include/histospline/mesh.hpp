#pragma once

// Partition and histogram data model.
//
// Index convention: knots are 0-based (x_0 < x_1 < ... < x_k) and cells are
// 1-based, cell i being [x_{i-1}, x_i] for i = 1..k. Steps h_i, averages I_i
// and cell integrals all use the cell index. Interior-knot quantities
// (half sums, lambda, mu, delta I) are indexed by the knot, i = 1..k-1.
// Accessors take these mathematical indices; vectors returned by value are
// plain 0-based containers whose element [0] holds the first valid index.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace histospline {

class Partition {
 public:
  /// Requires at least 3 strictly increasing finite knots.
  explicit Partition(std::vector<double> knots);

  /// Number of cells k.
  std::size_t cells() const noexcept { return knots_.size() - 1; }
  std::span<const double> knots() const noexcept { return knots_; }

  double knot(std::size_t i) const { return knots_.at(i); }
  double front() const noexcept { return knots_.front(); }
  double back() const noexcept { return knots_.back(); }

  /// h_i = x_i - x_{i-1}, i = 1..k.
  double step(std::size_t i) const;
  /// (h_i + h_{i+1}) / 2, i = 1..k-1.
  double half_sum(std::size_t i) const;
  /// h_i / (h_i + h_{i+1}), i = 1..k-1.
  double lambda(std::size_t i) const;
  /// 1 - lambda_i.
  double mu(std::size_t i) const;

  /// Maximum step, written h-bar in error estimates.
  double max_step() const noexcept { return max_step_; }

 private:
  std::vector<double> knots_;
  std::vector<double> steps_;      // steps_[i-1] = h_i
  std::vector<double> half_sums_;  // half_sums_[i-1] = half sum at knot i
  std::vector<double> lambdas_;    // lambdas_[i-1] = lambda_i
  double max_step_ = 0.0;
};

Partition make_partition(std::vector<double> knots);

/// Cell averages over a partition; I_i is the mean over cell i, so the
/// cell integral is h_i * I_i.
class Histogram {
 public:
  Histogram(Partition partition, std::vector<double> averages);

  const Partition& partition() const noexcept { return partition_; }
  std::size_t cells() const noexcept { return partition_.cells(); }
  std::span<const double> averages() const noexcept { return averages_; }

  /// I_i, i = 1..k.
  double average(std::size_t i) const;
  /// (I_{i+1} - I_i) / half_sum_i, i = 1..k-1.
  double delta(std::size_t i) const;

 private:
  Partition partition_;
  std::vector<double> averages_;
};

/// Spline family parameter, validated to [0, 1].
class AlphaParam {
 public:
  explicit AlphaParam(double alpha);
  double value() const noexcept { return alpha_; }

 private:
  double alpha_;
};

/// Divided differences of the averages; element [i-1] is delta I_i.
std::vector<double> delta_I(const Histogram& histogram);

struct DataClassification {
  bool monotone_increasing = false;
  /// min_i delta I_i.
  double monotone_margin = 0.0;
  /// Absent when k < 3.
  std::optional<bool> convex;
  /// min_i (delta I_i - delta I_{i-1}); absent when k < 3.
  std::optional<double> convex_margin;
};

/// Flags pass when the corresponding margin is >= -tolerance.
DataClassification classify_data(const Histogram& histogram, double tolerance = 0.0);

}  // namespace histospline
