#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "histospline/mesh.hpp"

namespace histospline {

/// A named reference dataset with the shape facts documented for it.
struct Fixture {
  std::string name;
  std::string description;
  Histogram histogram;
  std::optional<bool> expect_monotone;
  std::optional<bool> expect_convex;
};

/// Names: example1, example2_uniform, example2_nonuniform, example3, akima.
/// Throws UnknownFixture otherwise.
Fixture get_fixture(std::string_view name);

std::vector<std::string> fixture_names();

/// u(x) = 2 - sqrt(x (2 - x)) on [0, 2].
double semicircle_function(double x);
/// Closed-form antiderivative of `semicircle_function`, zero at x = 0.
double semicircle_antiderivative(double x);

}  // namespace histospline
