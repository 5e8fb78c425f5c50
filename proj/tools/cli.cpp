#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "histospline/error.hpp"
#include "histospline/eval.hpp"
#include "histospline/fixtures.hpp"
#include "histospline/io.hpp"
#include "histospline/shape.hpp"
#include "histospline/spline.hpp"
#include "histospline/verify.hpp"

namespace histospline::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NeedsMoreCells:
    case ErrorCode::NotDominant:
    case ErrorCode::ZeroPivot:
    case ErrorCode::Singular:
      return kMathError;
    default:
      return kInputError;
  }
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + path + "'");
  file << text;
}

AlphaParam checked_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw UsageError("alpha out of [0,1]");
  return AlphaParam(alpha);
}

BoundaryMode parse_boundary(const std::string& spec) {
  if (spec == "formula") return FormulaBoundary{};
  const std::string prefix = "clamped:";
  if (spec.rfind(prefix, 0) == 0) {
    const std::string rest = spec.substr(prefix.size());
    const auto comma = rest.find(',');
    if (comma != std::string::npos) {
      try {
        std::size_t u0 = 0, u1 = 0;
        const std::string a = rest.substr(0, comma);
        const std::string b = rest.substr(comma + 1);
        const double s0 = std::stod(a, &u0);
        const double sk = std::stod(b, &u1);
        if (u0 == a.size() && u1 == b.size()) return ClampedBoundary{s0, sk};
      } catch (const std::exception&) {
      }
    }
  }
  throw UsageError("--boundary must be 'formula' or 'clamped:S0,Sk', got '" + spec + "'");
}

std::vector<std::string> fit_warnings(const SplineC1& spline, const Histogram& data) {
  std::vector<std::string> w;
  const DataClassification cls = classify_data(data);
  const auto m = spline.slopes();
  const bool increasing = std::is_sorted(m.begin(), m.end());
  const bool nonneg = std::all_of(m.begin(), m.end(), [](double v) { return v >= 0.0; });
  if (cls.convex.value_or(false) && !increasing) {
    w.push_back("slopes not monotone: m_i <= m_{i+1} fails, so convexity is not certified; "
                "consider --fallback");
  }
  if (cls.monotone_increasing && !nonneg) {
    w.push_back("negative slopes on monotone data: the fit is not monotone everywhere");
  }
  return w;
}

int cmd_fit(const std::string& input, double alpha_value, const std::string& boundary,
            bool fallback, const std::string& output, std::ostream& out, std::ostream& err) {
  const AlphaParam alpha = checked_alpha(alpha_value);
  const BoundaryMode mode = parse_boundary(boundary);
  const Histogram data = io::read_histogram_file(input);

  io::SplineDocument doc;
  std::optional<SplineC1> spline;
  if (fallback) {
    FallbackFit result = fit_fallback(data, alpha);
    doc.boundary_mode = "fallback";
    doc.discrepancy = result.report;
    spline.emplace(std::move(result.spline));
  } else {
    spline.emplace(fit(data, alpha, mode));
    if (const auto* c = std::get_if<ClampedBoundary>(&mode)) {
      doc.boundary_mode = "clamped";
      doc.boundary_values = BoundaryValues{c->s0, c->sk};
    }
    doc.warnings = fit_warnings(*spline, data);
  }
  for (const auto& w : doc.warnings) err << "warning: " << w << "\n";
  emit(io::spline_to_json(*spline, doc).dump(2) + "\n", output, out);
  return kOk;
}

int cmd_sample(const std::string& spline_path, std::size_t n, const std::string& output,
               std::ostream& out) {
  if (n < 2) throw UsageError("--n must be at least 2");
  const SplineC1 spline = io::parse_spline(io::read_text_file(spline_path));
  emit(io::sample_csv(spline, n), output, out);
  return kOk;
}

int cmd_report(const std::string& input, double alpha_value, bool fallback,
               const std::string& output, std::ostream& out) {
  const AlphaParam alpha = checked_alpha(alpha_value);
  const Histogram data = io::read_histogram_file(input);
  const SplineC1 spline = fallback ? fit_fallback(data, alpha).spline : fit(data, alpha);
  const ShapeReport report = certify(spline, data);
  emit(io::report_to_json(report).dump(2) + "\n", output, out);
  return kOk;
}

int cmd_convergence(const std::string& function, double alpha_value, const std::string& mesh,
                    const std::vector<std::size_t>& ks, const std::string& output,
                    std::ostream& out, std::ostream& err) {
  const AlphaParam alpha = checked_alpha(alpha_value);
  if (ks.size() < 3) throw UsageError("--ks needs at least 3 values");
  verify::TestFunction f;
  if (function == "exp") {
    f = verify::exp_function();
  } else if (function == "sinlin") {
    f = verify::sinlin_function();
  } else if (function == "affine") {
    f = verify::affine_function();
  } else {
    throw UsageError("unknown --function '" + function + "'");
  }
  const verify::MeshKind kind =
      mesh == "graded" ? verify::MeshKind::smooth_graded : verify::MeshKind::uniform;
  const verify::ConvergenceStudy study = verify::convergence_study(f, alpha, kind, ks);
  emit(io::convergence_to_csv(study), output, out);

  auto summary = [](const verify::OrderEstimate& e) {
    if (e.exact) return std::string("exact");
    return e.order ? io::format_double(*e.order) : std::string("n/a");
  };
  err << "least-squares orders: value " << summary(study.value) << ", slope "
      << summary(study.slope) << ", jump " << summary(study.jump) << "\n";
  return kOk;
}

int cmd_fixture(const std::string& name, const std::string& format, const std::string& output,
                std::ostream& out) {
  const Fixture fixture = get_fixture(name);
  if (format == "csv") {
    emit(io::histogram_to_csv(fixture.histogram), output, out);
  } else {
    emit(io::histogram_to_json(fixture.histogram).dump(2) + "\n", output, out);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shape-preserving C1 cubic splines from cell averages", "histospline"};
  app.require_subcommand(1);

  std::string input, output, boundary = "formula", spline_path, function = "exp",
                             mesh = "uniform", name, format = "json";
  double alpha = 0.5;
  bool fallback = false;
  std::size_t n = 201;
  std::vector<std::size_t> ks;

  auto* fit_cmd = app.add_subcommand("fit", "fit a spline to a histogram file");
  fit_cmd->add_option("--input", input, "histogram file (JSON or CSV)")->required();
  fit_cmd->add_option("--alpha", alpha, "family parameter in [0,1]");
  fit_cmd->add_option("--boundary", boundary, "formula | clamped:S0,Sk");
  fit_cmd->add_flag("--fallback", fallback, "use delta-I slopes instead of solving the system");
  fit_cmd->add_option("--output", output, "output path (default stdout)");

  auto* sample_cmd = app.add_subcommand("sample", "sample a fitted spline as CSV");
  sample_cmd->add_option("--spline", spline_path, "spline JSON from 'fit'")->required();
  sample_cmd->add_option("--n", n, "number of equispaced points (>= 2)");
  sample_cmd->add_option("--output", output, "output path (default stdout)");

  auto* report_cmd = app.add_subcommand("report", "fit and print a shape report as JSON");
  report_cmd->add_option("--input", input, "histogram file (JSON or CSV)")->required();
  report_cmd->add_option("--alpha", alpha, "family parameter in [0,1]");
  report_cmd->add_flag("--fallback", fallback, "certify the fallback fit instead");
  report_cmd->add_option("--output", output, "output path (default stdout)");

  auto* conv_cmd = app.add_subcommand("convergence", "measure convergence orders");
  conv_cmd->add_option("--function", function, "exp | sinlin | affine")
      ->check(CLI::IsMember({"exp", "sinlin", "affine"}));
  conv_cmd->add_option("--alpha", alpha, "family parameter in [0,1]");
  conv_cmd->add_option("--mesh", mesh, "uniform | graded")
      ->check(CLI::IsMember({"uniform", "graded"}));
  conv_cmd->add_option("--ks", ks, "comma-separated cell counts")->delimiter(',')->required();
  conv_cmd->add_option("--output", output, "output path (default stdout)");

  auto* fixture_cmd = app.add_subcommand("fixture", "write a built-in dataset");
  fixture_cmd->add_option("--name", name, "fixture name")->required();
  fixture_cmd->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  fixture_cmd->add_option("--output", output, "output path (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (fit_cmd->parsed()) return cmd_fit(input, alpha, boundary, fallback, output, out, err);
    if (sample_cmd->parsed()) return cmd_sample(spline_path, n, output, out);
    if (report_cmd->parsed()) return cmd_report(input, alpha, fallback, output, out);
    if (conv_cmd->parsed()) return cmd_convergence(function, alpha, mesh, ks, output, out, err);
    if (fixture_cmd->parsed()) return cmd_fixture(name, format, output, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace histospline::cli
