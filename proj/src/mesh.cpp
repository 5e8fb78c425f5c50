#include "histospline/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "histospline/error.hpp"

namespace histospline {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::TooFewKnots: return "TooFewKnots";
    case ErrorCode::NonIncreasingKnots: return "NonIncreasingKnots";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::NeedsMoreCells: return "NeedsMoreCells";
    case ErrorCode::NotDominant: return "NotDominant";
    case ErrorCode::ZeroPivot: return "ZeroPivot";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::BadCellIndex: return "BadCellIndex";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Partition::Partition(std::vector<double> knots) : knots_(std::move(knots)) {
  if (knots_.size() < 3) {
    throw Error(ErrorCode::TooFewKnots,
                "need at least 3 knots (2 cells), got " + std::to_string(knots_.size()));
  }
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (!std::isfinite(knots_[i])) {
      throw Error(ErrorCode::NonFiniteValue, "knot " + std::to_string(i) + " is not finite");
    }
  }
  const std::size_t k = knots_.size() - 1;
  steps_.resize(k);
  for (std::size_t i = 1; i <= k; ++i) {
    const double h = knots_[i] - knots_[i - 1];
    if (!(h > 0.0)) {
      throw Error(ErrorCode::NonIncreasingKnots,
                  "knots must be strictly increasing; x_" + std::to_string(i) +
                      " <= x_" + std::to_string(i - 1));
    }
    steps_[i - 1] = h;
  }
  half_sums_.resize(k - 1);
  lambdas_.resize(k - 1);
  for (std::size_t i = 1; i < k; ++i) {
    const double hl = steps_[i - 1];
    const double hr = steps_[i];
    half_sums_[i - 1] = (hl + hr) / 2.0;
    lambdas_[i - 1] = hl / (hl + hr);
  }
  max_step_ = *std::max_element(steps_.begin(), steps_.end());
}

double Partition::step(std::size_t i) const {
  if (i < 1 || i > cells()) {
    throw Error(ErrorCode::BadCellIndex, "step index " + std::to_string(i) + " outside 1..k");
  }
  return steps_[i - 1];
}

double Partition::half_sum(std::size_t i) const {
  if (i < 1 || i >= cells()) {
    throw Error(ErrorCode::BadCellIndex, "interior knot " + std::to_string(i) + " outside 1..k-1");
  }
  return half_sums_[i - 1];
}

double Partition::lambda(std::size_t i) const {
  if (i < 1 || i >= cells()) {
    throw Error(ErrorCode::BadCellIndex, "interior knot " + std::to_string(i) + " outside 1..k-1");
  }
  return lambdas_[i - 1];
}

double Partition::mu(std::size_t i) const { return 1.0 - lambda(i); }

Partition make_partition(std::vector<double> knots) { return Partition(std::move(knots)); }

Histogram::Histogram(Partition partition, std::vector<double> averages)
    : partition_(std::move(partition)), averages_(std::move(averages)) {
  if (averages_.size() != partition_.cells()) {
    throw Error(ErrorCode::LengthMismatch,
                "expected " + std::to_string(partition_.cells()) + " averages, got " +
                    std::to_string(averages_.size()));
  }
  for (std::size_t i = 0; i < averages_.size(); ++i) {
    if (!std::isfinite(averages_[i])) {
      throw Error(ErrorCode::NonFiniteValue, "average I_" + std::to_string(i + 1) + " is not finite");
    }
  }
}

double Histogram::average(std::size_t i) const {
  if (i < 1 || i > cells()) {
    throw Error(ErrorCode::BadCellIndex, "cell index " + std::to_string(i) + " outside 1..k");
  }
  return averages_[i - 1];
}

double Histogram::delta(std::size_t i) const {
  return (average(i + 1) - average(i)) / partition_.half_sum(i);
}

AlphaParam::AlphaParam(double alpha) : alpha_(alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::AlphaOutOfRange, "alpha out of [0,1]: " + std::to_string(alpha));
  }
}

std::vector<double> delta_I(const Histogram& histogram) {
  const std::size_t k = histogram.cells();
  std::vector<double> out(k - 1);
  for (std::size_t i = 1; i < k; ++i) out[i - 1] = histogram.delta(i);
  return out;
}

DataClassification classify_data(const Histogram& histogram, double tolerance) {
  const auto d = delta_I(histogram);
  DataClassification out;
  out.monotone_margin = *std::min_element(d.begin(), d.end());
  out.monotone_increasing = out.monotone_margin >= -tolerance;
  if (d.size() >= 2) {
    double margin = d[1] - d[0];
    for (std::size_t j = 2; j < d.size(); ++j) margin = std::min(margin, d[j] - d[j - 1]);
    out.convex_margin = margin;
    out.convex = margin >= -tolerance;
  }
  return out;
}

}  // namespace histospline
