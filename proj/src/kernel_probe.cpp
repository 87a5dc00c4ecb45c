#include "mwns/kernel_probe.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "mwns/errors.hpp"
#include "mwns/fft.hpp"
#include "mwns/semigroup.hpp"

namespace mwns {

std::vector<double> kernel_coefficients(const WaveletTransform& tr, const WaveletIndex& first,
                                        const WaveletIndex& second, int j, int eps, double t, double s,
                                        double gamma, int l, int l1, int l2) {
  const auto& cfg = tr.config();
  const int p = cfg.grid_points + cfg.grid_points / 2;
  if (3L * p <= 16L * cfg.lattice(cfg.j_max))
    throw ResolutionError("kernel quadrature grid too coarse for level " + std::to_string(cfg.j_max));
  auto field = [&](const WaveletIndex& idx) {
    CoeffField c(cfg, 1);
    c.at(0, idx) = 1.0;
    Spectrum sp = tr.spectrum(c, {p, idx.j, idx.eps});
    apply_gevrey(sp, cfg, s, gamma, -1);
    return tr.to_grid(sp);
  };
  const SampledField a = field(first), b = field(second);
  const GridShape shape{cfg.dim, cfg.side_log2, p};
  cvec prod(shape.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = a.values()[i] * b.values()[i];
  const auto e = shape.extents();
  fft::forward(prod, std::vector<int>(e.begin(), e.begin() + cfg.dim));
  Spectrum sp(shape, 1);
  const rvec& lam = squared_wavenumbers(shape);
  std::size_t i = 0;
  const double norm = 1.0 / double(shape.size());
  for (int x = 0; x < e[0]; ++x)
    for (int y = 0; y < e[1]; ++y)
      for (int z = 0; z < e[2]; ++z, ++i) {
        if (lam[i] == 0.0) continue;
        const double xi[3] = {wavenumber(x, e[0], cfg.side()), wavenumber(y, e[1], cfg.side()),
                              e[2] == 1 ? 0.0 : wavenumber(z, e[2], cfg.side())};
        // (i xi_l)(i xi_l1)(i xi_l2) / |xi|^2
        sp.data[i] = cplx(0.0, -xi[l] * xi[l1] * xi[l2] / lam[i]) * std::exp(-(t - s) * lam[i]) * norm * prod[i];
      }
  apply_gevrey(sp, cfg, t, gamma, +1);
  CoeffField out(cfg, 1);
  tr.level_coefficients(sp, 0, j, out);
  const auto blk = out.block(0, j, eps);
  return {blk.begin(), blk.end()};
}

namespace {

double wrapped(double d, int m) {
  d = std::fmod(d, double(m));
  if (d < -m / 2.0) d += m;
  if (d >= m / 2.0) d -= m;
  return d;
}

double torus_dist(const double* a, const double* b, int dim, int m) {
  double d2 = 0.0;
  for (int i = 0; i < dim; ++i) {
    const double d = wrapped(a[i] - b[i], m);
    d2 += d * d;
  }
  return std::sqrt(d2);
}

std::size_t flat(const std::array<int, 3>& k, int dim, int m) {
  std::size_t f = std::size_t(wrap(k[0], m)) * m + wrap(k[1], m);
  if (dim == 3) f = f * m + wrap(k[2], m);
  return f;
}

struct Bound {
  double c, c_tilde, gamma, N;
  int dim;
  double operator()(KernelRegime r, int j, int jp, int jpp, double t, double s, double d_in, double d_out) const {
    const double lead = r == KernelRegime::b1 ? std::exp2(dim * j / 2.0 + j) : std::exp2(dim * jpp / 2.0 + j);
    const double tau = (t - s) * std::exp2(2.0 * j);
    const double gev = std::exp(c_tilde * (std::pow(t, gamma) - std::pow(s, gamma)) * std::exp2(2.0 * j * gamma));
    const double dist = std::pow(1.0 + d_in, N) * std::pow(1.0 + d_out, N);
    double growth = std::max(1.0, std::pow(t * std::exp2(2.0 * j), gamma * N));
    if (r == KernelRegime::b1)
      growth *= std::max(1.0, std::pow(s * std::exp2(2.0 * jp), 2.0 * gamma * N));
    else
      growth *= std::max(1.0, std::pow(s * std::exp2(2.0 * jpp), gamma * N));
    return lead * std::exp(-c * tau) * gev * growth / dist;
  }
};

}  // namespace

ProbeSummary kernel_bound_check(const WaveletTransform& tr, const ProbeSpec& spec) {
  const auto& cfg = tr.config();
  if (!(spec.gamma > 0.0 && spec.gamma <= 0.5)) throw ConfigError("kernel.gamma", "kernel bounds need 0 < gamma <= 1/2");
  if (spec.j < cfg.j_min || spec.j > cfg.j_max) throw RangeError("probe level outside the stored window");
  const int n = cfg.dim;
  const int j = spec.j;
  const int mj = cfg.lattice(j);
  const double scale = std::exp2(-2.0 * j);
  const double t = spec.tau_t * scale;
  const int eps_out = 1;

  ProbeSummary sum;
  sum.c_tilde = std::pow(std::sqrt(double(n)) * 8.0 * std::numbers::pi / 3.0, 2.0 * spec.gamma);

  // (t - s) sweep at coincident positions: slope of log|a| in (t - s) 2^{2j}
  const WaveletIndex w0{1, j, {0, 0, 0}};
  {
    std::vector<double> x, y;
    for (double d : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      if (d >= spec.tau_t) continue;
      const double s = t - d * scale;
      const auto a = kernel_coefficients(tr, w0, w0, j, eps_out, t, s, spec.gamma, spec.l, spec.l1, spec.l2);
      double mx = 0.0;
      for (double v : a) mx = std::max(mx, std::abs(v));
      if (mx > 0.0) x.push_back(d), y.push_back(std::log(mx));
    }
    if (x.size() < 2) throw ResolutionError("time sweep produced no usable samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) sx += x[i], sy += y[i], sxx += x[i] * x[i], sxy += x[i] * y[i];
    const double nn = double(x.size());
    sum.fitted_c = -(sxy - sx * sy / nn) / (sxx - sx * sx / nn);
  }
  const Bound bound{std::max(sum.fitted_c, 0.0), sum.c_tilde, spec.gamma, spec.N, n};

  auto record = [&](KernelRegime r, const WaveletIndex& a, const WaveletIndex& b, double s,
                    const std::vector<double>& coef, const std::vector<std::array<int, 3>>& ks) {
    const double inner_pos[3] = {std::ldexp(double(a.k[0]), b.j - a.j), std::ldexp(double(a.k[1]), b.j - a.j),
                                 std::ldexp(double(a.k[2]), b.j - a.j)};
    const double kpp[3] = {double(b.k[0]), double(b.k[1]), double(b.k[2])};
    const double d_in = torus_dist(inner_pos, kpp, n, cfg.lattice(b.j));
    for (const auto& k : ks) {
      const double outer_pos[3] = {std::ldexp(double(a.k[0]), j - a.j), std::ldexp(double(a.k[1]), j - a.j),
                                   std::ldexp(double(a.k[2]), j - a.j)};
      const double kk[3] = {double(k[0]), double(k[1]), double(k[2])};
      const double d_out = torus_dist(kk, outer_pos, n, mj);
      KernelProbe p;
      p.regime = r;
      p.case_tag = d_in <= 2 ? (d_out <= 2 ? 1 : 3) : (d_out <= 2 ? 2 : 4);
      p.out = {eps_out, j, k};
      p.first = a;
      p.second = b;
      p.t = t, p.s = s, p.gamma = spec.gamma, p.N = spec.N;
      p.inner_dist = d_in, p.outer_dist = d_out;
      p.measured = std::abs(coef[flat(k, n, mj)]);
      p.bound = bound(r, j, a.j, b.j, t, s, d_in, d_out);
      p.ratio = p.measured / p.bound;
      (r == KernelRegime::b1 ? sum.max_ratio_b1 : sum.max_ratio_b2) =
          std::max(r == KernelRegime::b1 ? sum.max_ratio_b1 : sum.max_ratio_b2, p.ratio);
      sum.probes.push_back(p);
    }
  };

  // distance sweep: shell maxima over D <= |k|_inf < 2D
  {
    const double s = t - spec.sweep_gap * scale;
    if (!(s > 0)) throw ConfigError("kernel.sweep_gap", "sweep gap must be below t 2^{2j}");
    const auto a = kernel_coefficients(tr, w0, w0, j, eps_out, t, s, spec.gamma, spec.l, spec.l1, spec.l2);
    std::vector<double> lx, ly;
    for (int D : spec.shells) {
      if (4 * D > mj)
        throw ResolutionError("shell " + std::to_string(D) + " needs a lattice of " + std::to_string(4 * D) +
                              " points at the probe level");
      double mx = 0.0;
      std::array<int, 3> arg{D, 0, 0};
      const int r2 = n == 3 ? 2 * D : 1;
      for (int x = -2 * D + 1; x < 2 * D; ++x)
        for (int y = -2 * D + 1; y < 2 * D; ++y)
          for (int z = n == 3 ? -r2 + 1 : 0; z < r2; ++z) {
            const int linf = std::max({std::abs(x), std::abs(y), std::abs(z)});
            if (linf < D || linf >= 2 * D) continue;
            const double v = std::abs(a[flat({x, y, z}, n, mj)]);
            if (v > mx) mx = v, arg = {x, y, z};
          }
      sum.sweep_distance.push_back(D);
      sum.sweep_envelope.push_back(mx);
      lx.push_back(std::log(double(D)));
      ly.push_back(std::log(mx));
      record(KernelRegime::b1, w0, w0, s, a, {arg});
    }
    if (lx.size() < 2) throw ConfigError("kernel.shells", "the distance sweep needs at least two shells");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) sx += lx[i], sy += ly[i], sxx += lx[i] * lx[i], sxy += lx[i] * ly[i];
    const double nn = double(lx.size());
    sum.distance_slope = (sxy - sx * sy / nn) / (sxx - sx * sx / nn);
  }

  // randomized probes in both regimes, all four cases
  std::mt19937_64 rng(spec.seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto random_k = [&](int m) {
    std::array<int, 3> k{pick(0, m - 1), pick(0, m - 1), n == 3 ? pick(0, m - 1) : 0};
    return k;
  };
  for (int i = 0; i < spec.random_probes; ++i) {
    const KernelRegime r = i % 2 == 0 ? KernelRegime::b1 : KernelRegime::b2;
    int jp = 0, jpp = 0;
    if (r == KernelRegime::b1) {
      jp = pick(std::max(cfg.j_min, j - 4), cfg.j_max);
      jpp = pick(std::max(cfg.j_min, jp - 2), std::min(cfg.j_max, jp + 2));
    } else {
      jp = pick(std::max(cfg.j_min, j - 2), std::min(cfg.j_max, j + 2));
      if (jp - 3 < cfg.j_min) jp = std::min(cfg.j_max, cfg.j_min + 3);
      if (jp - 3 < cfg.j_min) continue;
      jpp = pick(cfg.j_min, jp - 3);
    }
    WaveletIndex a{pick(1, cfg.eps_count()), jp, random_k(cfg.lattice(jp))};
    WaveletIndex b{pick(1, cfg.eps_count()), jpp, {0, 0, 0}};
    // inner distance small for even cases, large for odd ones
    const int mpp = cfg.lattice(jpp);
    std::array<int, 3> base{int(std::floor(std::ldexp(double(a.k[0]), jpp - jp))),
                            int(std::floor(std::ldexp(double(a.k[1]), jpp - jp))),
                            int(std::floor(std::ldexp(double(a.k[2]), jpp - jp)))};
    const int off = (i / 2) % 2 == 0 ? 1 : std::min(mpp / 2 - 1, 3 + pick(0, 2));
    b.k = {wrap(base[0] + off, mpp), base[1], n == 3 ? base[2] : 0};
    const double s = t * (0.1 + 0.8 * std::uniform_real_distribution<double>(0.0, 1.0)(rng));
    const auto coef = kernel_coefficients(tr, a, b, j, eps_out, t, s, spec.gamma, spec.l, spec.l1, spec.l2);
    const std::array<int, 3> centre{int(std::floor(std::ldexp(double(a.k[0]), j - jp))),
                                    int(std::floor(std::ldexp(double(a.k[1]), j - jp))),
                                    int(std::floor(std::ldexp(double(a.k[2]), j - jp)))};
    std::vector<std::array<int, 3>> ks{centre, {centre[0] + 1, centre[1], centre[2]},
                                       {centre[0] + 5, centre[1] + 3, centre[2]},
                                       {centre[0] + 11, centre[1] - 7, centre[2]}};
    record(r, a, b, s, coef, ks);
  }
  return sum;
}

AnalysisConfig kernel_probe_config(const AnalysisConfig& base, int min_lattice) {
  AnalysisConfig cfg = base;
  while (cfg.lattice(cfg.j_max) < min_lattice) ++cfg.side_log2;
  cfg.grid_points = 4;
  while (3L * cfg.grid_points < 8L * cfg.lattice(cfg.j_max)) cfg.grid_points *= 2;
  cfg.validate();
  return cfg;
}

}  // namespace mwns
