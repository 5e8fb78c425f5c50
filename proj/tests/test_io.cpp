#include <doctest.h>

#include <random>

#include "histospline/error.hpp"
#include "histospline/fixtures.hpp"
#include "histospline/io.hpp"
#include "oracles.hpp"

using namespace histospline;

namespace {

ErrorCode code_of(std::string_view text) {
  try {
    io::parse_histogram(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

std::string message_of(std::string_view text) {
  try {
    io::parse_histogram(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("parse CSV histogram") {
  const Histogram h = io::parse_histogram("knot,average\n0,1\n4,2\n6,4\n7,\n");
  CHECK(h.cells() == 3);
  CHECK(h.partition().knot(1) == 4.0);
  CHECK(h.average(3) == 4.0);
  // Trailing newline and CRLF are optional.
  CHECK(io::parse_histogram("knot,average\r\n0,1\r\n1,2\r\n2,3\r\n3,").cells() == 3);
}

TEST_CASE("parse JSON histogram") {
  const Histogram h = io::parse_histogram(R"({"knots": [0, 1, 3, 7], "averages": [1, 2, 4]})");
  CHECK(h.cells() == 3);
  CHECK(h.partition().back() == 7.0);
}

TEST_CASE("parse errors carry diagnostics") {
  CHECK(code_of("knot,avg\n0,1\n1,\n") == ErrorCode::ParseError);
  CHECK(code_of("knot,average\n0,1\n1,x\n2,\n") == ErrorCode::ParseError);
  CHECK(message_of("knot,average\n0,1\n1,x\n2,\n").find("line 3") != std::string::npos);
  CHECK(code_of("knot,average\n0,1\n1,2\n2,3\n") == ErrorCode::ParseError);
  CHECK(code_of(R"({"knots": [0, 1, 2]})") == ErrorCode::ParseError);
  CHECK(code_of(R"({"knots": [0, 1, 2], "averages": [1, 2})") == ErrorCode::ParseError);
  CHECK(code_of(R"({"knots": [0, 1, 2], "averages": [1]})") == ErrorCode::LengthMismatch);
  CHECK(code_of(R"({"knots": [0, 2, 1], "averages": [1, 2]})") == ErrorCode::NonIncreasingKnots);
  CHECK(code_of(R"({"knots": [0, 1], "averages": [1]})") == ErrorCode::TooFewKnots);
}

TEST_CASE("format_double round-trips") {
  std::mt19937_64 rng(4);
  for (double v : oracle::random_values(rng, 200, -1e6, 1e6)) {
    CHECK(std::stod(io::format_double(v)) == v);
  }
  CHECK(io::format_double(0.5) == "0.5");
}

TEST_CASE("property: histogram CSV and JSON round-trip exactly") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + rng() % 15;
    const Histogram h(make_partition(oracle::random_knots(rng, k)), oracle::random_values(rng, k));
    for (const std::string& text : {io::histogram_to_csv(h), io::histogram_to_json(h).dump()}) {
      const Histogram back = io::parse_histogram(text);
      REQUIRE(back.cells() == k);
      for (std::size_t i = 0; i <= k; ++i) CHECK(back.partition().knot(i) == h.partition().knot(i));
      for (std::size_t i = 1; i <= k; ++i) CHECK(back.average(i) == h.average(i));
    }
  }
}

TEST_CASE("spline JSON round-trip") {
  const Fixture f = get_fixture("akima");
  const FallbackFit fb = fit_fallback(f.histogram, AlphaParam(0.3));
  io::SplineDocument doc;
  doc.boundary_mode = "fallback";
  doc.discrepancy = fb.report;
  doc.warnings = {"note"};
  const nlohmann::json j = io::spline_to_json(fb.spline, doc);
  CHECK(j["boundary_mode"] == "fallback");
  CHECK(j["discrepancy"]["knot"].size() == 8);
  CHECK(j["warnings"][0] == "note");
  const SplineC1 back = io::parse_spline(j.dump());
  CHECK(back.alpha() == 0.3);
  for (std::size_t i = 0; i <= 9; ++i) {
    CHECK(back.value_at_knot(i) == fb.spline.value_at_knot(i));
    CHECK(back.slope_at_knot(i) == fb.spline.slope_at_knot(i));
  }
  CHECK_THROWS_AS(io::parse_spline(R"({"knots": [0, 1, 2], "values": [0, 1]})"), Error);
}

TEST_CASE("sample and convergence CSV") {
  const SplineC1 s(make_partition({0, 1, 2}), {0, 1, 2}, {1, 1, 1}, 0.5);
  const std::string csv = io::sample_csv(s, 3);
  CHECK(csv == "x,S,S1,S2\n0,0,1,0\n1,1,1,0\n2,2,1,0\n");
  CHECK_THROWS_AS(io::sample_csv(s, 1), Error);

  const std::vector<std::size_t> ks{10, 20, 40};
  const auto study = verify::convergence_study(verify::affine_function(), AlphaParam(0.5),
                                               verify::MeshKind::uniform, ks);
  const std::string conv = io::convergence_to_csv(study);
  CHECK(conv.rfind("k,hbar,err0,err1,jump,order0,order1,orderJump\n", 0) == 0);
  CHECK(conv.find("exact") != std::string::npos);
}

TEST_CASE("report JSON carries the margins") {
  const Fixture f = get_fixture("example1");
  const ShapeReport r = certify(fit(f.histogram, AlphaParam(0.5)), f.histogram);
  const nlohmann::json j = io::report_to_json(r);
  CHECK(j.contains("cond24"));
  CHECK(j["cond24"]["holds"] == true);
  CHECK(j["cond24"]["inequalities"].size() == r.cond24->inequalities.size());
}
