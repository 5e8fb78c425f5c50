#include "histospline/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "histospline/error.hpp"
#include "histospline/eval.hpp"

namespace histospline::io {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

double parse_number(const std::string& field, std::size_t line, const char* column) {
  const std::string t = trim(field);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size()) {
    parse_fail("line " + std::to_string(line) + ": field '" + column + "' is not a number: '" + t +
               "'");
  }
  return v;
}

std::vector<double> number_array(const json& doc, const char* key) {
  if (!doc.contains(key)) parse_fail(std::string("missing field '") + key + "'");
  const json& arr = doc.at(key);
  if (!arr.is_array()) parse_fail(std::string("field '") + key + "' must be an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      parse_fail(std::string("field '") + key + "' element " + std::to_string(i) +
                 " is not a number");
    }
    out.push_back(arr[i].get<double>());
  }
  return out;
}

json parse_json_object(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) parse_fail("top-level JSON value must be an object");
  return doc;
}

Histogram parse_histogram_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  bool closed = false;
  std::vector<double> knots;
  std::vector<double> averages;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string row = trim(line);
    if (row.empty()) continue;
    if (!header_seen) {
      std::string compact;
      for (char c : row) {
        if (c != ' ' && c != '\t') compact += c;
      }
      if (compact != "knot,average") {
        parse_fail("line " + std::to_string(lineno) + ": expected header 'knot,average'");
      }
      header_seen = true;
      continue;
    }
    if (closed) {
      parse_fail("line " + std::to_string(lineno) + ": rows after the final knot row");
    }
    const auto comma = row.find(',');
    if (comma == std::string::npos || row.find(',', comma + 1) != std::string::npos) {
      parse_fail("line " + std::to_string(lineno) + ": expected two comma-separated fields");
    }
    knots.push_back(parse_number(row.substr(0, comma), lineno, "knot"));
    const std::string avg = trim(row.substr(comma + 1));
    if (avg.empty()) {
      closed = true;
    } else {
      averages.push_back(parse_number(avg, lineno, "average"));
    }
  }
  if (!header_seen) parse_fail("empty input");
  if (!closed) parse_fail("missing final knot row with an empty average field");
  return Histogram(Partition(std::move(knots)), std::move(averages));
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Histogram parse_histogram(std::string_view text) {
  const std::string t = trim(text);
  if (!t.empty() && t.front() == '{') {
    const json doc = parse_json_object(t);
    return Histogram(Partition(number_array(doc, "knots")), number_array(doc, "averages"));
  }
  return parse_histogram_csv(t);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Histogram read_histogram_file(const std::string& path) {
  return parse_histogram(read_text_file(path));
}

json histogram_to_json(const Histogram& histogram) {
  const auto knots = histogram.partition().knots();
  const auto avg = histogram.averages();
  return json{{"knots", std::vector<double>(knots.begin(), knots.end())},
              {"averages", std::vector<double>(avg.begin(), avg.end())}};
}

std::string histogram_to_csv(const Histogram& histogram) {
  std::string out = "knot,average\n";
  const auto knots = histogram.partition().knots();
  for (std::size_t i = 0; i < knots.size(); ++i) {
    out += format_double(knots[i]) + ",";
    if (i < histogram.cells()) out += format_double(histogram.averages()[i]);
    out += "\n";
  }
  return out;
}

json spline_to_json(const SplineC1& spline, const SplineDocument& doc) {
  const auto knots = spline.partition().knots();
  json out{{"knots", std::vector<double>(knots.begin(), knots.end())},
           {"values", std::vector<double>(spline.values().begin(), spline.values().end())},
           {"slopes", std::vector<double>(spline.slopes().begin(), spline.slopes().end())},
           {"alpha", spline.alpha()},
           {"boundary_mode", doc.boundary_mode}};
  if (doc.boundary_values) {
    out["boundary_values"] = {doc.boundary_values->s0, doc.boundary_values->sk};
  }
  if (doc.discrepancy) {
    out["discrepancy"] = {{"knot", doc.discrepancy->knot_discrepancy},
                          {"integral", doc.discrepancy->integral_residual},
                          {"max_knot", doc.discrepancy->max_knot_discrepancy()},
                          {"max_integral", doc.discrepancy->max_integral_residual()}};
  }
  if (!doc.warnings.empty()) out["warnings"] = doc.warnings;
  return out;
}

SplineC1 parse_spline(std::string_view text) {
  const json doc = parse_json_object(text);
  double alpha = 0.5;
  if (doc.contains("alpha")) {
    if (!doc.at("alpha").is_number()) parse_fail("field 'alpha' must be a number");
    alpha = doc.at("alpha").get<double>();
  }
  return SplineC1(Partition(number_array(doc, "knots")), number_array(doc, "values"),
                  number_array(doc, "slopes"), alpha);
}

json condition_to_json(const ConditionResult& result) {
  json items = json::array();
  for (const auto& q : result.inequalities) {
    items.push_back({{"name", q.name},
                     {"lhs", q.lhs},
                     {"rhs", q.rhs},
                     {"margin", q.margin()},
                     {"holds", q.holds()}});
  }
  return {{"holds", result.holds},
          {"reason", result.reason},
          {"min_margin", result.min_margin()},
          {"inequalities", items}};
}

json report_to_json(const ShapeReport& r) {
  auto opt_bool = [](const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); };
  auto opt_cond = [](const std::optional<ConditionResult>& c) {
    return c ? condition_to_json(*c) : json(nullptr);
  };
  return {{"data_monotone", r.data_monotone},
          {"data_convex", opt_bool(r.data_convex)},
          {"data_monotone_margin", r.data_monotone_margin},
          {"data_convex_margin", r.data_convex_margin ? json(*r.data_convex_margin) : json(nullptr)},
          {"cond20", opt_cond(r.cond20)},
          {"cond24", opt_cond(r.cond24)},
          {"mesh_geometric", r.mesh_geometric},
          {"mesh_max_deviation", r.mesh_max_deviation},
          {"mesh_coefficients_equal", r.mesh_coefficients_equal},
          {"slopes_nonneg", r.slopes_nonneg},
          {"slopes_increasing", r.slopes_increasing},
          {"spline_monotone_verdict", r.spline_monotone_verdict},
          {"spline_convex_verdict", r.spline_convex_verdict},
          {"min_sampled_deriv1", r.min_sampled_deriv1},
          {"min_sampled_deriv2", r.min_sampled_deriv2},
          {"verdicts_consistent", r.verdicts_consistent},
          {"convex_positions", r.convex_positions},
          {"affine", r.affine}};
}

std::string convergence_to_csv(const verify::ConvergenceStudy& study) {
  auto order = [](const std::optional<double>& o, bool exact) -> std::string {
    if (exact) return "exact";
    return o ? format_double(*o) : std::string();
  };
  std::string out = "k,hbar,err0,err1,jump,order0,order1,orderJump\n";
  for (const auto& r : study.records) {
    out += std::to_string(r.k) + "," + format_double(r.hbar) + "," + format_double(r.err0) + "," +
           format_double(r.err1) + "," + format_double(r.jump) + "," +
           order(r.order0, study.value.exact) + "," + order(r.order1, study.slope.exact) + "," +
           order(r.order_jump, study.jump.exact) + "\n";
  }
  return out;
}

std::string sample_csv(const SplineC1& spline, std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 sample points");
  const double a = spline.partition().front();
  const double b = spline.partition().back();
  std::string out = "x,S,S1,S2\n";
  for (std::size_t j = 0; j < n; ++j) {
    const double x =
        j + 1 == n ? b : a + (b - a) * static_cast<double>(j) / static_cast<double>(n - 1);
    out += format_double(x) + "," + format_double(value(spline, x)) + "," +
           format_double(deriv1(spline, x)) + "," + format_double(deriv2(spline, x)) + "\n";
  }
  return out;
}

}  // namespace histospline::io
