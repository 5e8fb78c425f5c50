#pragma once

// Hypothesis-satisfying datasets for the shape theorems: exact cell
// averages of smooth functions on [0, 1], perturbed by at most
// 1e-3 * hbar^2, then filtered by the condition checkers.

#include <functional>
#include <optional>
#include <random>

#include "histospline/shape.hpp"
#include "histospline/spline.hpp"
#include "histospline/verify.hpp"

namespace gen {

struct Case {
  histospline::Histogram data;
  histospline::SplineC1 spline;
};

inline histospline::Histogram perturbed(const histospline::verify::TestFunction& f,
                                        const histospline::Partition& mesh, std::mt19937_64& rng) {
  const histospline::Histogram clean = f.cell_averages(mesh);
  std::vector<double> avg(clean.averages().begin(), clean.averages().end());
  const double amplitude = 1e-3 * mesh.max_step() * mesh.max_step();
  std::uniform_real_distribution<double> noise(-amplitude, amplitude);
  for (auto& v : avg) v += noise(rng);
  return histospline::Histogram(mesh, std::move(avg));
}

/// Uniform-mesh convex data at alpha = 1/2 whose post-hoc convexity
/// conditions hold. Returns up to `count` cases from at most 50 * count draws.
inline std::vector<Case> convex_uniform_cases(std::size_t count, std::uint64_t seed) {
  using namespace histospline;
  std::mt19937_64 rng(seed);
  const verify::TestFunction functions[] = {verify::exp_function(), verify::quartic_function()};
  std::vector<Case> out;
  for (std::size_t draw = 0; out.size() < count && draw < 50 * count; ++draw) {
    const std::size_t k = 4 + rng() % 37;
    const Histogram data = perturbed(functions[draw % 2], verify::mesh_family(verify::MeshKind::uniform, k), rng);
    SplineC1 s = fit(data, AlphaParam(0.5));
    if (!check_convexity_conditions(s, data).holds) continue;
    out.push_back({data, std::move(s)});
  }
  return out;
}

/// Increasing data on uniform or graded meshes at a random alpha whose
/// monotonicity conditions hold for the default boundary values.
inline std::vector<Case> monotone_cases(std::size_t count, std::uint64_t seed) {
  using namespace histospline;
  std::mt19937_64 rng(seed);
  const verify::TestFunction functions[] = {verify::exp_function(), verify::sinlin_function(),
                                            verify::quartic_function()};
  std::uniform_real_distribution<double> alpha(0.0, 1.0);
  std::vector<Case> out;
  for (std::size_t draw = 0; out.size() < count && draw < 50 * count; ++draw) {
    const std::size_t k = 4 + rng() % 37;
    const auto kind = draw % 2 ? verify::MeshKind::uniform : verify::MeshKind::smooth_graded;
    const Histogram data = perturbed(functions[draw % 3], verify::mesh_family(kind, k), rng);
    const AlphaParam a(alpha(rng));
    const BoundaryValues ends = boundary_values(data, a);
    if (!check_monotonicity_conditions(data, a, ends.s0, ends.sk).holds) continue;
    out.push_back({data, fit(data, a)});
  }
  return out;
}

}  // namespace gen
