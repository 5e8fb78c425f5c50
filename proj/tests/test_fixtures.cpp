#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "histospline/error.hpp"
#include "histospline/fixtures.hpp"

using namespace histospline;

TEST_CASE("fixture data") {
  const auto names = fixture_names();
  CHECK(names.size() == 5);
  for (const auto& n : names) CHECK(get_fixture(n).name == n);

  const Fixture ex1 = get_fixture("example1");
  CHECK(ex1.histogram.partition().knots().size() == 4);
  CHECK(ex1.histogram.average(3) == 4.0);

  const Fixture ex3 = get_fixture("example3");
  CHECK(ex3.histogram.cells() == 6);
  CHECK(ex3.histogram.average(1) == 2.86);
  CHECK(ex3.histogram.partition().knot(3) == 4.0);

  const Fixture akima = get_fixture("akima");
  CHECK(akima.histogram.cells() == 9);
  CHECK(akima.histogram.average(9) == 50.0);
  CHECK(akima.histogram.partition().back() == 14.0);

  const Fixture u = get_fixture("example2_uniform");
  CHECK(u.histogram.cells() == 10);
  for (std::size_t i = 1; i <= 10; ++i) CHECK(u.histogram.partition().step(i) == doctest::Approx(0.2));
  CHECK(get_fixture("example2_nonuniform").histogram.partition().step(1) == doctest::Approx(0.05));

  CHECK_THROWS_AS(get_fixture("example4"), Error);
  try {
    get_fixture("nope");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownFixture);
  }
}

TEST_CASE("semicircle antiderivative agrees with adaptive quadrature") {
  boost::math::quadrature::tanh_sinh<double> q;
  for (double x : {0.05, 0.2, 0.7, 1.0, 1.3, 1.95, 2.0}) {
    const double ref = q.integrate([](double t) { return semicircle_function(t); }, 0.0, x);
    CHECK(semicircle_antiderivative(x) == doctest::Approx(ref).epsilon(1e-10));
  }
  CHECK(semicircle_antiderivative(0.0) == 0.0);
}

TEST_CASE("semicircle cell averages") {
  const Fixture u = get_fixture("example2_uniform");
  boost::math::quadrature::tanh_sinh<double> q;
  for (std::size_t i = 1; i <= 10; ++i) {
    const double a = u.histogram.partition().knot(i - 1), b = u.histogram.partition().knot(i);
    const double ref = q.integrate([](double t) { return semicircle_function(t); }, a, b) / (b - a);
    CHECK(u.histogram.average(i) == doctest::Approx(ref).epsilon(1e-10));
  }
  // The data is symmetric about x = 1.
  CHECK(u.histogram.average(1) == doctest::Approx(u.histogram.average(10)).epsilon(1e-12));
}

TEST_CASE("data classification of the fixtures") {
  const auto ex1 = classify_data(get_fixture("example1").histogram);
  CHECK(ex1.monotone_increasing);
  CHECK(ex1.convex.value());

  for (const char* n : {"example2_uniform", "example2_nonuniform", "example3"}) {
    CAPTURE(n);
    const auto c = classify_data(get_fixture(n).histogram);
    CHECK_FALSE(c.monotone_increasing);
    CHECK(c.convex.value());
  }
}
