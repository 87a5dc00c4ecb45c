#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "mwns/cell_grid.hpp"
#include "mwns/errors.hpp"
#include "mwns/fixtures.hpp"
#include "mwns/lorentz.hpp"
#include "mwns/space_params.hpp"

using namespace mwns;

namespace {

const double kInf = std::numeric_limits<double>::infinity();
const double kLn2 = std::numbers::ln2;
const AnalysisConfig kSmall{2, 2, 64, 0, 2};

CellGrid two_step(double h1, int n1, double h2, int n2) {
  CellGrid g(2, 2, 0);  // 16 cells of volume 1
  for (int i = 0; i < n1; ++i) g.values[i] = h1;
  for (int i = 0; i < n2; ++i) g.values[n1 + i] = h2;
  return g;
}

}  // namespace

TEST_CASE("distribution function of a step function") {
  const CellGrid g = two_step(1.0, 3, 4.0, 2);
  CHECK(g.cell_volume() == 1.0);
  CHECK(distribution_measure(g, 0.0) == 5.0);
  CHECK(distribution_measure(g, 0.5) == 5.0);
  CHECK(distribution_measure(g, 1.0) == 2.0);
  CHECK(distribution_measure(g, 3.9) == 2.0);
  CHECK(distribution_measure(g, 4.0) == 0.0);
}

TEST_CASE("Lorentz functional of an indicator") {
  // h chi_E: (1/ln2) int_0^h l^{r-1} |E|^{r/p} dl = h^r |E|^{r/p} / (r ln 2)
  const double h = 3.0, mu = 5.0;
  const CellGrid g = two_step(h, 5, 0.0, 0);
  for (double p : {2.0, 4.0})
    for (double r : {1.5, 2.0, 3.0}) {
      const double expect = h * std::pow(mu, 1 / p) * std::pow(r * kLn2, -1 / r);
      CHECK(lorentz_quasi_norm(g, p, r).value == doctest::Approx(expect).epsilon(1e-12));
    }
  CHECK(lorentz_quasi_norm(g, 4.0, kInf).value == doctest::Approx(h * std::pow(mu, 0.25)).epsilon(1e-12));
  // dyadic sum at h = 2^a: sum_{u < a} 2^{ur} |E|^{r/p} = h^r |E|^{r/p} / (2^r - 1)
  const CellGrid d = two_step(4.0, 5, 0.0, 0);
  const LorentzOptions dy{LevelSum::dyadic};
  CHECK(lorentz_quasi_norm(d, 4.0, 2.0, dy).value ==
        doctest::Approx(4.0 * std::pow(mu, 0.25) / std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("Lorentz functional of a two-step function") {
  const double h1 = 1.0, h2 = 4.0, m1 = 3.0, m2 = 2.0, p = 4.0, r = 2.0;
  const CellGrid g = two_step(h1, 3, h2, 2);
  const double integral =
      (std::pow(m1 + m2, r / p) * std::pow(h1, r) + std::pow(m2, r / p) * (std::pow(h2, r) - std::pow(h1, r))) /
      (r * kLn2);
  CHECK(lorentz_quasi_norm(g, p, r).value == doctest::Approx(std::pow(integral, 1 / r)).epsilon(1e-12));
}

TEST_CASE("Lorentz functional is homogeneous and monotone") {
  CellGrid g(2, 2, 1);
  for (std::size_t i = 0; i < g.values.size(); ++i) g.values[i] = std::abs(std::sin(1.7 * double(i)));
  CellGrid h = g, big = g;
  for (auto& v : h.values) v *= 2.5;
  for (auto& v : big.values) v += 0.1;
  const double a = lorentz_quasi_norm(g, 3.0, 2.0).value;
  CHECK(lorentz_quasi_norm(h, 3.0, 2.0).value == doctest::Approx(2.5 * a).epsilon(1e-12));
  CHECK(lorentz_quasi_norm(big, 3.0, 2.0).value > a);
  // refinement does not change the function
  CHECK(lorentz_quasi_norm(g.refined(3), 3.0, 2.0).value == doctest::Approx(a).epsilon(1e-12));
}

TEST_CASE("f-norm of one wavelet") {
  // one cell of volume 2^{-2j} and height 2^j |a|, weighted by 2^{js}, s = 2/p - 1
  const SpaceParams p{2, 4, 2, 2, 1.0, 0.1, 0.0, {}};
  for (int j = kSmall.j_min; j <= kSmall.j_max; ++j) {
    CoeffField c = single_wavelet(kSmall, {2, j, {1, 1, 0}});
    c *= -1.5;
    CHECK(f_norm(c, p).value == doctest::Approx(1.5 / std::sqrt(2 * kLn2)).epsilon(1e-12));
  }
  const CellGrid m = level_majorant(single_wavelet(kSmall, {1, 1, {3, 0, 0}}), 0, 1);
  CHECK(m.values[3 * m.cells_per_axis()] == 2.0);
  double total = 0.0;
  for (double v : m.values) total += v;
  CHECK(total == 2.0);
}

TEST_CASE("f-norm is critical and homogeneous") {
  const CoeffField c = random_field(kSmall, 1, 31, 0.3);
  for (const SpaceParams& p : {SpaceParams{2, 4, 2, 2, 1.0, 0.1, 0.0, {}}, SpaceParams{2, 3, 1, 3, 1.0, 0.1, 0.0, {}},
                               SpaceParams{2, 4, kInf, 2, 1.0, 0.1, 0.0, {}}}) {
    const double a = f_norm(c, p).value;
    for (int i : {-2, -1, 1, 3}) CHECK(f_norm(scale_map(c, i), p).value == doctest::Approx(a).epsilon(1e-12));
    CoeffField d = c;
    d *= -3.0;
    CHECK(f_norm(d, p).value == doctest::Approx(3.0 * a).epsilon(1e-12));
  }
  // the literal dyadic sum only changes within fixed constants
  const SpaceParams p{2, 4, 2, 2, 1.0, 0.1, 0.0, {}};
  const LorentzOptions dy{LevelSum::dyadic};
  const double a = f_norm(c, p, dy).value, b = f_norm(scale_map(c, 1), p, dy).value;
  CHECK(b / a < 2.0);
  CHECK(b / a > 0.5);
}

TEST_CASE("scale_map moves one wavelet") {
  const WaveletIndex idx{3, 1, {2, 1, 0}};
  CoeffField c = single_wavelet(kSmall, idx);
  c.set_time(1.0);
  const CoeffField s = scale_map(c, 1);
  CHECK(s.config().side_log2 == 1);
  CHECK(s.config().j_min == 1);
  CHECK(s.config().j_max == 3);
  CHECK(s.at(0, {3, 2, {2, 1, 0}}) == 1.0);  // 2^{i(1 - n/2)} = 1 in 2D
  CHECK(*s.time() == 0.25);
  const AnalysisConfig c3{3, 2, 16, 0, 0};
  const CoeffField s3 = scale_map(single_wavelet(c3, {7, 0, {1, 1, 1}}), 2);
  CHECK(s3.at(0, {7, 2, {1, 1, 1}}) == doctest::Approx(0.5));
  CHECK(scale_map(scale_map(c, 2), -2).data() == c.data());
  // fixed window
  const CoeffField w = scale_map(c, 1, 2, 3);
  CHECK(w.config().j_min == 2);
  CHECK(w.at(0, {3, 2, {2, 1, 0}}) == 1.0);
  CHECK_THROWS_AS(scale_map(single_wavelet(kSmall, {1, 2, {0, 0, 0}}), 1, 1, 2), RangeError);
}

TEST_CASE("work-space norm") {
  Trajectory zero;
  for (double t : TimeMesh::for_levels(kSmall).times()) zero.push(CoeffField(kSmall, 1, t));
  const SpaceParams p{2, 4, 2, 2, 1.0, 0.1, 0.0, {}};
  const WorkspaceNorm z = workspace_norm(zero, p);
  CHECK(z.total == 0.0);
  CHECK(z.windows.size() == std::size_t(kSmall.j_max + 3 - (kSmall.j_min - 1) + 1));

  // a constant trajectory: same state in every window
  Trajectory one;
  const CoeffField c = random_field(kSmall, 1, 2, 0.5);
  for (double t : zero.times()) {
    CoeffField s = c;
    s.set_time(t);
    one.push(s);
  }
  const WorkspaceNorm w = workspace_norm(one, p);
  CHECK(w.total == doctest::Approx(w.a_high + w.a_low));
  CHECK(w.a_high > 0.0);
  CoeffField c2 = c;
  c2 *= 2.0;
  Trajectory two = map_states(one, [&](double, const CoeffField&) { return c2; });
  CHECK(workspace_norm(two, p).total == doctest::Approx(2.0 * w.total).epsilon(1e-12));
  CHECK(coefficient_bound_check(one, p).holds());
}

TEST_CASE("admissible parameter tuples") {
  const SpaceParams ok{2, 4, 2, 2, 1.2, 0.1, 0.0, {}};
  CHECK(validate_params(ok, Theorem::well_posedness).empty());
  SpaceParams m_low = ok;
  m_low.m = 1.0;
  CHECK(validate_params(m_low, Theorem::well_posedness).size() == 1);
  SpaceParams qinf = ok;
  qinf.q = kInf;
  qinf.m_prime = 0.0;
  const auto v = validate_params(qinf, Theorem::well_posedness);
  REQUIRE(v.size() == 1);
  CHECK(v[0].find("q = infinity") != std::string::npos);
  SpaceParams r_inf = ok;
  r_inf.r = kInf;
  CHECK_FALSE(validate_params(r_inf, Theorem::well_posedness).empty());

  // n = 3, p = 4, m = 1: gamma below 1/64 and m' below 5/16
  CHECK(gamma_supremum(3, 4, 1) == doctest::Approx(1.0 / 64).epsilon(1e-15));
  CHECK(m_prime_supremum_gevrey(3, 4) == doctest::Approx(5.0 / 16).epsilon(1e-15));
  SpaceParams g{3, 4, 2, 2, 1.0, 0.3, 0.01, {}};
  CHECK(validate_params(g, Theorem::gevrey).empty());
  g.gamma = 1.0 / 64;
  CHECK(validate_params(g, Theorem::gevrey).size() == 1);
  g.gamma = 0.01;
  g.m_prime = 5.0 / 16;
  CHECK(validate_params(g, Theorem::gevrey).size() == 1);
  g.m_prime = 0.1;
  g.p = 3;
  CHECK_FALSE(validate_params(g, Theorem::gevrey).empty());
  g.p = 4;
  g.q = kInf;
  g.m_prime = 0.0;
  CHECK(validate_params(g, Theorem::gevrey).size() == 1);
}
