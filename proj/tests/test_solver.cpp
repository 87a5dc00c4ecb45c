#include <doctest.h>

#include <cmath>

#include "mwns/errors.hpp"
#include "mwns/fixtures.hpp"
#include "mwns/semigroup.hpp"
#include "mwns/solver.hpp"

using namespace mwns;

namespace {

const AnalysisConfig kSolve{2, 2, 128, 0, 3};

SolveConfig small_config() {
  SolveConfig sc;
  sc.mesh = TimeMesh::for_levels(kSolve);
  return sc;
}

CoeffField fixture(const WaveletTransform& tr, double norm) {
  return normalized(divergence_free(tr, two_wavelet_potential(kSolve)), small_config().params, norm);
}

}  // namespace

TEST_CASE("fixtures") {
  const WaveletTransform tr(FilterBank{}, kSolve);
  const CoeffField u = fixture(tr, 1e-3);
  CHECK(u.components() == 2);
  CHECK(f_norm(u, SpaceParams{}).value == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK(divergence_max(tr, u) <= 1e-12);
  CHECK(normalized(CoeffField(kSolve, 2), SpaceParams{}, 1.0).max_abs() == 0.0);
  CHECK_THROWS(two_wavelet_potential(AnalysisConfig{2, 2, 64, 0, 2}));
  const CoeffField a = random_field(kSolve, 1, 3), b = random_field(kSolve, 1, 3);
  CHECK(a.data() == b.data());
  const CoeffField w = single_wavelet(kSolve, {2, 1, {3, 4, 0}}, 2, 1);
  CHECK(w.at(1, {2, 1, {3, 4, 0}}) == 1.0);
  CHECK(w.max_abs() == 1.0);
}

TEST_CASE("zero initial data") {
  const WaveletTransform tr(FilterBank{}, kSolve);
  const SolveResult r = picard_solve(tr, CoeffField(kSolve, 2), small_config());
  CHECK(r.report.iterations == 1);
  CHECK(r.report.residual == 0.0);
  CHECK(r.report.workspace_norm == 0.0);
  CHECK(r.trajectory.size() == TimeMesh::for_levels(kSolve).times().size());
  for (const auto& s : r.trajectory.states()) CHECK(s.max_abs() == 0.0);
  const GevreyReport g = gevrey_diagnostic(tr, r.trajectory, SpaceParams{}, 0.01);
  CHECK(g.norm == 0.0);
  CHECK(g.profile.size() == std::size_t(kSolve.level_count()));
}

TEST_CASE("rejected initial data") {
  const WaveletTransform tr(FilterBank{}, kSolve);
  const SolveConfig sc = small_config();
  CHECK_THROWS_AS(picard_solve(tr, CoeffField(kSolve, 1), sc), ConfigError);
  CHECK_THROWS_AS(picard_solve(tr, random_field(kSolve, 2, 1, 0.1, 1, 2), sc), ConfigError);
  CHECK_THROWS_AS(picard_solve(tr, fixture(tr, 1.0), sc), ConfigError);  // above smallness
}

TEST_CASE("small data contracts") {
  const WaveletTransform tr(FilterBank{}, kSolve);
  const CoeffField u0 = fixture(tr, 1e-3);
  const SolveConfig sc = small_config();
  const SolveResult r = picard_solve(tr, u0, sc);
  CHECK(r.report.contraction_ratio < 0.5);
  CHECK(r.report.iterations <= sc.max_iter);
  CHECK(r.report.residual <= 1e-8);
  CHECK(r.report.divergence_max <= 1e-10);
  CHECK(r.report.initial_f_norm == doctest::Approx(1e-3));
  CHECK(r.report.difference_norms.size() == std::size_t(r.report.iterations));
  CHECK(r.report.residual == doctest::Approx(residual(tr, r.trajectory, u0, sc.params, sc.quad)));
  // the correction to the heat flow is quadratic in the data
  const Trajectory heat = heat_trajectory(tr, u0, sc.mesh.times());
  Trajectory diff;
  for (std::size_t i = 0; i < heat.size(); ++i) diff.push(r.trajectory[i] - heat[i]);
  const double corr = workspace_norm(diff, sc.params).total, lin = workspace_norm(heat, sc.params).total;
  CHECK(corr < 1e-2 * lin);
  CHECK(corr > 0.0);
}

TEST_CASE("residual of the heat flow is the norm of B") {
  const WaveletTransform tr(FilterBank{}, kSolve);
  const CoeffField u0 = fixture(tr, 1e-2);
  const SolveConfig sc = small_config();
  const Trajectory heat = heat_trajectory(tr, u0, sc.mesh.times());
  const Trajectory b = DuhamelEngine(tr, heat, heat, {}).evaluate_all();
  CHECK(residual(tr, heat, u0, sc.params) == doctest::Approx(workspace_norm(b, sc.params).total).epsilon(1e-12));
}

TEST_CASE("Gevrey diagnostic") {
  const WaveletTransform tr(FilterBank{}, kSolve);
  const CoeffField u0 = fixture(tr, 1e-3);
  SolveConfig sc = small_config();
  const SolveResult r = picard_solve(tr, u0, sc);
  const SpaceParams p{2, 4, 2, 2, 1.0, 0.1, 0.02, {}};
  CHECK(gevrey_diagnostic(tr, r.trajectory, p, 0.0).norm == workspace_norm(r.trajectory, p).total);
  const GevreyReport g = gevrey_diagnostic(tr, r.trajectory, p, 0.02);
  CHECK(g.norm >= workspace_norm(r.trajectory, p).total);
  CHECK(std::isfinite(g.norm));
  CHECK_THROWS_AS(gevrey_diagnostic(tr, r.trajectory, p, 0.5, {}, 1.0), GevreyOverflow);

  sc.params = p;
  const SolveResult rg = picard_solve(tr, u0, sc);
  CHECK(rg.report.contraction_ratio < 0.5);
  CHECK(rg.report.gevrey_norm == doctest::Approx(g.norm).epsilon(1e-6));
  CHECK(rg.report.difference_norms.size() == rg.report.difference_norms_plain.size());
}

TEST_CASE("large data stops with NonContraction") {
  const WaveletTransform tr(FilterBank{}, kSolve);
  SolveConfig sc = small_config();
  sc.smallness = 1e4;
  CHECK_THROWS_AS(picard_solve(tr, fixture(tr, 1e3), sc), NonContraction);
  sc.max_iter = 2;
  CHECK_THROWS_AS(picard_solve(tr, fixture(tr, 1.0), sc), NonContraction);
}
