#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mwns/aligned.hpp"
#include "mwns/kernels.hpp"

using namespace mwns;
namespace k = mwns::kernels;

namespace {

struct Data {
  rvec a, b, w, f;
  cvec x, y, z, acc;
  explicit Data(std::size_t n, unsigned seed) : a(n), b(n), w(n), f(n), x(n), y(n), z(n), acc(n) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(-30.0, 0.5);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = u(rng);
      b[i] = g(rng);
      w[i] = std::abs(g(rng));
      f[i] = g(rng);
      x[i] = {g(rng), g(rng)};
      y[i] = {g(rng), g(rng)};
      z[i] = {g(rng), g(rng)};
      acc[i] = {g(rng), g(rng)};
    }
  }
};

double rel(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::max(std::abs(a), std::abs(b))); }

}  // namespace

TEST_CASE("scalar table against direct formulas") {
  const Data d(37, 1);
  const auto& s = k::scalar_table();
  rvec out(d.a.size());
  s.exp_scaled(out.data(), d.a.data(), 0.7, out.size());
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == doctest::Approx(std::exp(0.7 * d.a[i])).epsilon(1e-15));

  rvec acc(d.a.size(), 1.0);
  s.weighted_power_add(acc.data(), d.f.data(), 0.5, 3.0, acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i)
    CHECK(acc[i] == doctest::Approx(1.0 + 0.5 * std::pow(std::abs(d.f[i]), 3.0)).epsilon(1e-14));

  rvec mx(d.a.size(), 0.25);
  s.weighted_max(mx.data(), d.f.data(), 2.0, mx.size());
  for (std::size_t i = 0; i < mx.size(); ++i) CHECK(mx[i] == std::max(0.25, 2.0 * std::abs(d.f[i])));
}

TEST_CASE("AVX2 variants agree with the scalar reference") {
  const k::Table* v = k::avx2_table();
  if (!v) {
    MESSAGE("AVX2 variant unavailable on this machine");
    return;
  }
  const auto& s = k::scalar_table();
  // odd lengths exercise the scalar tails
  for (std::size_t n : {1u, 3u, 4u, 7u, 64u, 1001u}) {
    const Data d(n, unsigned(n));

    rvec e1(n), e2(n);
    s.exp_scaled(e1.data(), d.a.data(), 1.3, n);
    v->exp_scaled(e2.data(), d.a.data(), 1.3, n);
    for (std::size_t i = 0; i < n; ++i) CHECK(rel(e1[i], e2[i]) <= 1e-14);

    cvec c1(d.x.begin(), d.x.end()), c2 = c1;
    s.scale_complex(c1.data(), d.b.data(), n);
    v->scale_complex(c2.data(), d.b.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(c1[i] - c2[i]) <= 1e-15 * std::abs(c1[i]));

    cvec a1 = d.acc, a2 = d.acc;
    s.accumulate_combination(a1.data(), d.w.data(), 0.3, d.x.data(), -1.1, d.y.data(), 2.0, d.z.data(), n);
    v->accumulate_combination(a2.data(), d.w.data(), 0.3, d.x.data(), -1.1, d.y.data(), 2.0, d.z.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(a1[i] - a2[i]) <= 1e-13 * (1 + std::abs(a1[i])));

    rvec m1(n, 0.5), m2(n, 0.5);
    s.multiply_add(m1.data(), d.a.data(), d.b.data(), n);
    v->multiply_add(m2.data(), d.a.data(), d.b.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(m1[i] - m2[i]) <= 1e-13 * (1 + std::abs(m1[i])));

    for (double q : {1.0, 2.0, 2.5}) {
      rvec p1(n, 0.0), p2(n, 0.0);
      s.weighted_power_add(p1.data(), d.f.data(), 0.7, q, n);
      v->weighted_power_add(p2.data(), d.f.data(), 0.7, q, n);
      for (std::size_t i = 0; i < n; ++i) CHECK(rel(p1[i], p2[i]) <= 1e-13);
    }

    rvec x1(n, 0.1), x2(n, 0.1);
    s.weighted_max(x1.data(), d.f.data(), 1.5, n);
    v->weighted_max(x2.data(), d.f.data(), 1.5, n);
    for (std::size_t i = 0; i < n; ++i) CHECK(x1[i] == x2[i]);
  }
}

TEST_CASE("ISA selection can be pinned") {
  const k::Isa before = k::active_isa();
  k::force_isa(k::Isa::scalar);
  CHECK(k::active_isa() == k::Isa::scalar);
  CHECK(&k::active() == &k::scalar_table());
  CHECK(k::isa_name(k::Isa::scalar) == "scalar");
  CHECK(k::isa_name(k::Isa::avx2) == "avx2");
  k::force_isa(before);
  CHECK(k::active_isa() == before);
}
