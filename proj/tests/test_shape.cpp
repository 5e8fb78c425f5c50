#include <doctest.h>

#include <cmath>
#include <random>

#include "generators.hpp"
#include "histospline/error.hpp"
#include "histospline/eval.hpp"
#include "histospline/fixtures.hpp"
#include "histospline/shape.hpp"
#include "oracles.hpp"

using namespace histospline;

namespace {

const Inequality& named(const ConditionResult& r, const std::string& name) {
  for (const auto& q : r.inequalities) {
    if (q.name == name) return q;
  }
  throw std::runtime_error("no inequality " + name);
}

}  // namespace

TEST_CASE("monotonicity conditions") {
  const Fixture ex1 = get_fixture("example1");

  SUBCASE("Example 1 at alpha = 0 satisfies every inequality") {
    const BoundaryValues b = boundary_values(ex1.histogram, AlphaParam(0.0));
    const ConditionResult r = check_monotonicity_conditions(ex1.histogram, AlphaParam(0.0), b.s0, b.sk);
    CHECK(r.holds);
    CHECK(r.reason.empty());
    CHECK(r.min_margin() > 0.0);
    const SplineC1 s = fit(ex1.histogram, AlphaParam(0.0));
    for (double m : s.slopes()) CHECK(m > 0.0);
  }
  SUBCASE("Example 1 at alpha = 1/2 has S(x_0) = I_1, so the left gap is not positive") {
    const BoundaryValues b = boundary_values(ex1.histogram, AlphaParam(0.5));
    const ConditionResult r = check_monotonicity_conditions(ex1.histogram, AlphaParam(0.5), b.s0, b.sk);
    CHECK_FALSE(r.holds);
    CHECK(named(r, "I_1-S(x_0)>0").margin() == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  }
  SUBCASE("constant data with S(x_0) = I_1 fails with zero margin") {
    const Histogram c(make_partition({0, 1, 2, 3, 4}), {2, 2, 2, 2});
    const ConditionResult r = check_monotonicity_conditions(c, AlphaParam(0.5), 2.0, 2.0);
    CHECK_FALSE(r.holds);
    CHECK(r.reason == "I_1-S(x_0)>0");
    CHECK(named(r, "I_1-S(x_0)>0").margin() == 0.0);
  }
  SUBCASE("Akima data fails") {
    const Fixture akima = get_fixture("akima");
    const SplineC1 s = fit(akima.histogram, AlphaParam(0.5));
    CHECK_FALSE(check_monotonicity_conditions(akima.histogram, AlphaParam(0.5), s.value_at_knot(0),
                                              s.value_at_knot(9))
                    .holds);
  }
  SUBCASE("too few cells") {
    const Histogram two(make_partition({0, 1, 2}), {1, 2});
    CHECK_THROWS_AS(check_monotonicity_conditions(two, AlphaParam(0.5), 0, 3), Error);
  }
}

TEST_CASE("convexity conditions on the reference datasets") {
  for (const char* name : {"example1", "example2_uniform", "example2_nonuniform", "example3"}) {
    for (double alpha : {0.5, 1.0}) {
      CAPTURE(name);
      CAPTURE(alpha);
      const Fixture f = get_fixture(name);
      const SplineC1 s = fit(f.histogram, AlphaParam(alpha));
      const ConditionResult r = check_convexity_conditions(s, f.histogram);
      CHECK(r.holds);
    }
  }
  const Fixture akima = get_fixture("akima");
  for (double alpha : {0.0, 0.5, 1.0}) {
    const SplineC1 s = fit(akima.histogram, AlphaParam(alpha));
    CHECK_FALSE(check_convexity_conditions(s, akima.histogram).holds);
  }
}

TEST_CASE("convexity conditions: a-priori m_0 and k = 3 collapse") {
  const Fixture ex1 = get_fixture("example1");
  const SplineC1 s = fit(ex1.histogram, AlphaParam(0.5));
  const ConditionResult post = check_convexity_conditions(s, ex1.histogram);
  const ConditionResult prior = check_convexity_conditions(ex1.histogram, AlphaParam(0.5), s.slope_at_knot(0),
                                                           s.slope_at_knot(2), s.value_at_knot(0), s.value_at_knot(3));
  CHECK(post.inequalities.size() == prior.inequalities.size());
  CHECK(named(post, "left.right").margin() == named(prior, "left.right").margin());
  // A prescribed m_0 far above the secant breaks the left side condition.
  const ConditionResult steep = check_convexity_conditions(ex1.histogram, AlphaParam(0.5), 5.0,
                                                           s.slope_at_knot(2), s.value_at_knot(0), s.value_at_knot(3));
  CHECK_FALSE(steep.holds);
  CHECK(steep.reason == "2(I_1-S(x_0))/h_1-m_0>0");
  CHECK_THROWS_AS(check_convexity_conditions(Histogram(make_partition({0, 1, 2}), {1, 2}), AlphaParam(0.5), 0, 0, 0, 0),
                  Error);
}

TEST_CASE("convexity margins are mirror-symmetric for palindromic data on a uniform mesh") {
  const Histogram h(make_partition({0, 1, 2, 3, 4, 5}), {4, 1.5, 0.5, 1.5, 4});
  const SplineC1 s = fit(h, AlphaParam(0.5));
  const ConditionResult r = check_convexity_conditions(s, h);
  CHECK(named(r, "left").margin() == doctest::Approx(named(r, "right").margin()).epsilon(1e-12));
  CHECK(named(r, "ddeltaI>0[2]").margin() == doctest::Approx(named(r, "ddeltaI>0[4]").margin()).epsilon(1e-12));
  CHECK(r.holds);
}

TEST_CASE("geometric mesh check") {
  const auto uniform = check_geometric_mesh(make_partition({0, 1, 2, 3, 4}));
  CHECK(uniform.geometric);
  CHECK(uniform.max_deviation == 0.0);
  CHECK(uniform.coefficients_equal);

  CHECK(check_geometric_mesh(make_partition({0, 1, 3, 7})).geometric);
  const auto ex1 = check_geometric_mesh(make_partition({0, 4, 6, 7}));
  CHECK(ex1.geometric);
  CHECK(ex1.coefficients_equal);

  const auto ex3 = check_geometric_mesh(make_partition({0, 1, 2, 4, 6, 7, 8}));
  CHECK_FALSE(ex3.geometric);
  CHECK_FALSE(ex3.coefficients_equal);
  CHECK(ex3.max_deviation == doctest::Approx(std::sqrt(2.0) - 1.0));

  CHECK(check_geometric_mesh(make_partition({0, 1, 5})).geometric);
}

TEST_CASE("certify on the reference datasets") {
  SUBCASE("Example 1 at alpha = 1/2 is convex; the left end dips because S(x_0) = I_1") {
    const Fixture f = get_fixture("example1");
    const ShapeReport r = certify(fit(f.histogram, AlphaParam(0.5)), f.histogram);
    CHECK(r.data_monotone);
    CHECK(r.data_convex.value());
    CHECK(r.cond24->holds);
    CHECK(r.mesh_geometric);
    CHECK(r.slopes_increasing);
    CHECK(r.spline_convex_verdict);
    CHECK_FALSE(r.slopes_nonneg);
    CHECK_FALSE(r.spline_monotone_verdict);
    CHECK(r.verdicts_consistent);
    CHECK(r.convex_positions);
    CHECK_FALSE(r.affine);
  }
  SUBCASE("Example 1 at alpha = 0 is monotone and convex") {
    const Fixture f = get_fixture("example1");
    const ShapeReport r = certify(fit(f.histogram, AlphaParam(0.0)), f.histogram);
    CHECK(r.cond20->holds);
    CHECK(r.slopes_nonneg);
    CHECK(r.spline_monotone_verdict);
    CHECK(r.spline_convex_verdict);
  }
  SUBCASE("Example 3 at alpha = 1/2 is convex") {
    const Fixture f = get_fixture("example3");
    const ShapeReport r = certify(fit(f.histogram, AlphaParam(0.5)), f.histogram);
    CHECK(r.spline_convex_verdict);
    CHECK(r.slopes_increasing);
    CHECK_FALSE(r.data_monotone);
    CHECK_FALSE(r.mesh_geometric);
  }
  SUBCASE("Akima: the standard fit is not shape preserving, the fallback is") {
    const Fixture f = get_fixture("akima");
    const ShapeReport standard = certify(fit(f.histogram, AlphaParam(0.5)), f.histogram);
    CHECK(standard.data_monotone);
    CHECK(standard.data_convex.value());
    CHECK_FALSE(standard.cond24->holds);
    CHECK_FALSE(standard.slopes_increasing);
    CHECK_FALSE(standard.spline_convex_verdict);

    const ShapeReport fallback = certify(fit_fallback(f.histogram, AlphaParam(0.5)).spline, f.histogram);
    CHECK(fallback.spline_monotone_verdict);
    CHECK(fallback.spline_convex_verdict);
  }
  SUBCASE("affine data") {
    const Histogram lin(make_partition({0, 1, 2, 3, 4}), {0.5, 1.5, 2.5, 3.5});
    const SplineC1 s = fit(lin, AlphaParam(0.5));
    const ShapeReport r = certify(s, lin);
    CHECK(r.affine);
    CHECK_FALSE(r.convex_positions);
    CHECK_FALSE(convex_positions(s));
  }
}

TEST_CASE("convex_positions") {
  const Fixture ex1 = get_fixture("example1");
  CHECK(convex_positions(fit(ex1.histogram, AlphaParam(0.5))));
  const SplineC1 flat(make_partition({0, 1, 2, 3}), {1, 1, 1, 1}, {0, 0, 0, 0}, 0.5);
  CHECK_FALSE(convex_positions(flat));
}

TEST_CASE("slope_sensitivity") {
  SUBCASE("constant data") {
    const Histogram c(make_partition({0, 1, 2.5, 3, 4}), {2, 2, 2, 2});
    for (double d : slope_sensitivity(fit(c, AlphaParam(0.5)), c)) CHECK(d == 0.0);
  }
  SUBCASE("Example 3: interior slopes decrease in alpha, matching finite differences") {
    const Fixture f = get_fixture("example3");
    const SplineC1 s = fit(f.histogram, AlphaParam(0.5));
    const auto d = slope_sensitivity(s, f.histogram);
    for (std::size_t i = 1; i < 6; ++i) CHECK(d[i] < 0.0);

    const ClampedBoundary ends{s.value_at_knot(0), s.value_at_knot(6)};
    const double eps = 1e-5;
    const SplineC1 up = fit(f.histogram, AlphaParam(0.5 + eps), ends);
    const SplineC1 down = fit(f.histogram, AlphaParam(0.5 - eps), ends);
    for (std::size_t i = 0; i <= 6; ++i) {
      const double fd = (up.slope_at_knot(i) - down.slope_at_knot(i)) / (2 * eps);
      CHECK(fd == doctest::Approx(d[i]).epsilon(1e-6));
    }
  }
}

TEST_CASE("feasible_intervals") {
  SUBCASE("constant data gives degenerate intervals") {
    const Histogram c(make_partition({0, 1, 2.5, 3, 4}), {2, 2, 2, 2});
    const FeasibleIntervals fi = feasible_intervals(c);
    for (const auto& iv : fi.slopes) {
      CHECK(iv.lower == doctest::Approx(0.0).scale(1.0));
      CHECK(iv.upper == doctest::Approx(0.0).scale(1.0));
    }
    for (const auto& iv : fi.values) {
      CHECK(iv.lower == doctest::Approx(2.0));
      CHECK(iv.upper == doctest::Approx(2.0));
    }
  }
  SUBCASE("Example 3 intervals contain the alpha = 1/2 slopes") {
    const Fixture f = get_fixture("example3");
    const FeasibleIntervals fi = feasible_intervals(f.histogram);
    const SplineC1 mid = fit(f.histogram, AlphaParam(0.5), ClampedBoundary{fi.ends.s0, fi.ends.sk});
    for (std::size_t i = 1; i < 6; ++i) {
      CHECK(fi.slopes[i].ordered());
      CHECK(fi.slopes[i].lower < fi.slopes[i].upper);
      CHECK(fi.slopes[i].contains(mid.slope_at_knot(i)));
    }
    CHECK(fi.values.size() == 5);
  }
}

TEST_CASE("property: monotonicity conditions imply positive slopes") {
  const auto cases = gen::monotone_cases(100, 777);
  REQUIRE(cases.size() == 100);
  for (const auto& c : cases) {
    for (double m : c.spline.slopes()) CHECK(m > 0.0);
    const ShapeReport r = certify(c.spline, c.data, {200, 1e-12, 1e-12});
    CHECK(r.slopes_nonneg);
    CHECK(r.spline_monotone_verdict);
  }
}

TEST_CASE("property: convexity conditions on uniform meshes imply increasing slopes") {
  const auto cases = gen::convex_uniform_cases(100, 555);
  REQUIRE(cases.size() == 100);
  for (const auto& c : cases) {
    const auto m = c.spline.slopes();
    for (std::size_t i = 1; i < m.size(); ++i) CHECK(m[i] - m[i - 1] > 0.0);
    const ShapeReport r = certify(c.spline, c.data, {200, 1e-12, 1e-12});
    CHECK(r.min_sampled_deriv2 >= -1e-12);
    CHECK(r.slopes_increasing);
    CHECK(r.mesh_geometric);
  }
}

TEST_CASE("property: report invariants on random data") {
  std::mt19937_64 rng(66);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 3 + rng() % 12;
    const bool uniform = trial % 2 == 0;
    std::vector<double> x = uniform ? std::vector<double>{} : oracle::random_knots(rng, k);
    if (uniform) {
      for (std::size_t i = 0; i <= k; ++i) x.push_back(static_cast<double>(i));
    }
    auto avg = oracle::random_values(rng, k, 0.0, 1.0);
    if (trial % 3 == 0) std::sort(avg.begin(), avg.end());
    const Histogram h(make_partition(x), avg);
    const ShapeReport r = certify(fit(h, AlphaParam(0.5)), h, {50, 1e-12, 1e-12});
    if (r.cond20->holds && r.data_monotone) CHECK(r.slopes_nonneg);
    if (r.cond24->holds && r.mesh_geometric && r.data_convex.value_or(false)) CHECK(r.slopes_increasing);
    CHECK(r.verdicts_consistent);
  }
}
