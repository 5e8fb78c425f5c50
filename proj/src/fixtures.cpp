#include "histospline/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "histospline/error.hpp"

namespace histospline {

namespace {

Histogram semicircle_histogram(std::vector<double> knots) {
  Partition p(std::move(knots));
  std::vector<double> avg(p.cells());
  for (std::size_t i = 1; i <= p.cells(); ++i) {
    avg[i - 1] = (semicircle_antiderivative(p.knot(i)) - semicircle_antiderivative(p.knot(i - 1))) /
                 p.step(i);
  }
  return Histogram(std::move(p), std::move(avg));
}

}  // namespace

double semicircle_function(double x) { return 2.0 - std::sqrt(x * (2.0 - x)); }

double semicircle_antiderivative(double x) {
  // With y = x - 1, the integral of sqrt(1 - y^2) is (y sqrt(1 - y^2) + asin y) / 2.
  const double y = std::clamp(x - 1.0, -1.0, 1.0);
  const double root = std::sqrt(std::max(0.0, 1.0 - y * y));
  const double quarter_disc = (y * root + std::asin(y)) / 2.0;
  return 2.0 * x - (quarter_disc + std::numbers::pi / 4.0);
}

std::vector<std::string> fixture_names() {
  return {"example1", "example2_uniform", "example2_nonuniform", "example3", "akima"};
}

Fixture get_fixture(std::string_view name) {
  if (name == "example1") {
    return {"example1", "histogram {1,2,4} on {0,4,6,7}",
            Histogram(Partition({0, 4, 6, 7}), {1, 2, 4}), true, true};
  }
  if (name == "example2_uniform") {
    std::vector<double> knots(11);
    for (std::size_t i = 0; i <= 10; ++i) knots[i] = 0.2 * static_cast<double>(i);
    knots.back() = 2.0;
    return {"example2_uniform", "exact averages of 2 - sqrt(x(2-x)), uniform k = 10 on [0,2]",
            semicircle_histogram(std::move(knots)), false, true};
  }
  if (name == "example2_nonuniform") {
    return {"example2_nonuniform", "exact averages of 2 - sqrt(x(2-x)) on a graded 10-cell mesh",
            semicircle_histogram({0, 0.05, 0.1, 0.4, 0.7, 1, 1.3, 1.6, 1.9, 1.95, 2}), false,
            true};
  }
  if (name == "example3") {
    return {"example3", "convex histogram {2.86,1,0.5,1,2,2.86} on {0,1,2,4,6,7,8}",
            Histogram(Partition({0, 1, 2, 4, 6, 7, 8}), {2.86, 1, 0.5, 1, 2, 2.86}), false, true};
  }
  if (name == "akima") {
    return {"akima", "Akima's step data on {0,2,3,5,6,8,9,11,12,14}",
            Histogram(Partition({0, 2, 3, 5, 6, 8, 9, 11, 12, 14}),
                      {10, 10, 10, 10, 10, 10, 10.5, 15, 50}),
            true, true};
  }
  throw Error(ErrorCode::UnknownFixture, "no fixture named '" + std::string(name) + "'");
}

}  // namespace histospline
