// Acceptance run: one line per criterion, exit status 0 iff all pass.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mwns/errors.hpp"
#include "mwns/fft.hpp"
#include "mwns/fixtures.hpp"
#include "mwns/kernel_probe.hpp"
#include "mwns/lorentz.hpp"
#include "mwns/maximal.hpp"
#include "mwns/paraproduct.hpp"
#include "mwns/run_config.hpp"
#include "mwns/semigroup.hpp"
#include "mwns/solver.hpp"
#include "mwns/space_params.hpp"
#include "mwns/verify.hpp"

using namespace mwns;
using std::numbers::pi;

namespace {

// pinned tolerances
constexpr double kOrthoTol = 1e-6;
constexpr double kRoundTripTol = 1e-8;
constexpr double kParsevalTol = 1e-6;
constexpr double kBasisSeconds = 120;
constexpr double kFilterTol = 1e-12;
constexpr double kCriticalTol = 1e-12;
constexpr double kRingTol = 1e-10;
constexpr double kSemigroupTol = 1e-10;
constexpr double kGevreyInverseTol = 1e-10;
constexpr double kDecayR2 = 0.99;
constexpr double kDoublingTol = 0.10;
constexpr double kFlowTol = 1e-8;
constexpr double kSlopeTol = 0.5;
constexpr double kKernelSeconds = 300;
constexpr double kContractionRatio = 0.5;
constexpr double kResidualTol = 1e-8;
constexpr int kMaxIter = 15;
constexpr double kDivergenceTol = 1e-6;
constexpr double kQuadraticSlope = 2.0;
constexpr double kQuadraticTol = 0.1;
constexpr double kScalingTol = 1e-8;
constexpr double kSolverSeconds = 600;
constexpr double kGammaZeroTol = 1e-12;
constexpr double kUniformGrowth = 1.25;  // sup over the ensemble may not grow by more under doubling
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (detail.tellp() > 0 ? "; " : "") << (ok ? "" : "FAILED ") << what;
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

RunConfig defaults() { return parse_run_config("{}"); }

// Same coefficients in a configuration with the same torus and a wider level window.
CoeffField embed(const CoeffField& c, const AnalysisConfig& to) {
  CoeffField out(to, c.components(), c.time());
  const auto& from = c.config();
  for (int comp = 0; comp < c.components(); ++comp)
    for (int j = std::max(from.j_min, to.j_min); j <= std::min(from.j_max, to.j_max); ++j)
      for (int e = 1; e <= from.eps_count(); ++e) {
        const auto src = c.block(comp, j, e);
        std::copy(src.begin(), src.end(), out.block(comp, j, e).begin());
      }
  return out;
}

WaveletIndex random_index(const AnalysisConfig& cfg, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> jd(cfg.j_min, cfg.j_max), ed(1, cfg.eps_count());
  WaveletIndex idx{ed(rng), jd(rng), {0, 0, 0}};
  std::uniform_int_distribution<int> kd(0, cfg.lattice(idx.j) - 1);
  for (int i = 0; i < cfg.dim; ++i) idx.k[i] = kd(rng);
  return idx;
}

// <psi_a, psi_b> on the torus from the Fourier transforms alone:
// side^{-n} sum_m psi_a^(xi_m) conj(psi_b^(xi_m)).
double fourier_inner(const FilterBank& bank, const AnalysisConfig& cfg, const WaveletIndex& a,
                     const WaveletIndex& b) {
  const int top = (4 * cfg.lattice(std::max(a.j, b.j))) / 3 + 1;
  const double L = cfg.side();
  std::complex<double> acc = 0.0;
  std::vector<double> xi(cfg.dim);
  const int zr = cfg.dim == 3 ? top : 0;
  for (int m0 = -top; m0 <= top; ++m0)
    for (int m1 = -top; m1 <= top; ++m1)
      for (int m2 = -zr; m2 <= zr; ++m2) {
        xi[0] = 2 * pi * m0 / L;
        xi[1] = 2 * pi * m1 / L;
        if (cfg.dim == 3) xi[2] = 2 * pi * m2 / L;
        const auto pa = wavelet_hat(bank, cfg.dim, a, xi);
        if (pa == 0.0) continue;
        acc += pa * std::conj(wavelet_hat(bank, cfg.dim, b, xi));
      }
  return acc.real() / std::pow(L, cfg.dim);
}

double relative_l2(const std::vector<double>& a, const std::vector<double>& b) {
  double e = 0.0, n = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e += (a[i] - b[i]) * (a[i] - b[i]), n += b[i] * b[i];
  return n > 0 ? std::sqrt(e / n) : std::sqrt(e);
}

std::vector<SpaceParams> gevrey_tuples() {
  const double inf = std::numeric_limits<double>::infinity();
  return {{2, 4, 2, 2, 1.0, 0.1, 0.02, {}}, {2, 4, inf, 3, 1.2, 0.2, 0.03, {}}, {2, 3, 1, 2, 1.0, 0.0, 0.01, {}}};
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) sx += x[i], sy += y[i], sxx += x[i] * x[i], sxy += x[i] * y[i];
  return (sxy - sx * sy / n) / (sxx - sx * sx / n);
}

// ---------------------------------------------------------------------------

Outcome wavelet_basis() {
  Outcome o;
  const auto t0 = Clock::now();
  const RunConfig rc = defaults();
  const auto& cfg = rc.grid;
  const FilterBank bank = rc.filter_bank();
  const WaveletTransform tr(bank, cfg);
  std::mt19937_64 rng(kSeed);
  double worst_oracle = 0.0, worst_transform = 0.0;
  const int pairs = 240;
  for (int i = 0; i < pairs; ++i) {
    const WaveletIndex a = random_index(cfg, rng);
    WaveletIndex b = a;
    switch (i % 4) {
      case 0: break;
      case 1: b.k[i % cfg.dim] = wrap(a.k[i % cfg.dim] + 1, cfg.lattice(a.j)); break;
      case 2:
        b.j = a.j < cfg.j_max ? a.j + 1 : a.j - 1;
        for (int d = 0; d < cfg.dim; ++d) b.k[d] = wrap(b.j > a.j ? 2 * a.k[d] + 1 : a.k[d] / 2, cfg.lattice(b.j));
        b.eps = 1 + (a.eps % cfg.eps_count());
        break;
      default: b = random_index(cfg, rng);
    }
    const double delta = a == b ? 1.0 : 0.0;
    worst_oracle = std::max(worst_oracle, std::abs(fourier_inner(bank, cfg, a, b) - delta));
    const CoeffField back = tr.analyze(tr.synthesize(single_wavelet(cfg, a)));
    worst_transform = std::max(worst_transform, std::abs(back.at(0, b) - delta));
  }
  o.require(worst_oracle <= kOrthoTol, std::to_string(pairs) + " pairs Fourier-side max err " + fmt(worst_oracle));
  o.require(worst_transform <= kOrthoTol, "transform max err " + fmt(worst_transform));

  const CoeffField c = random_field(cfg, 1, kSeed + 1);
  const SampledField f = tr.synthesize(c);
  const double rt = relative_l2(tr.synthesize(tr.analyze(f)).values(), f.values());
  o.require(rt <= kRoundTripTol, "round trip " + fmt(rt));
  double sc = 0.0, sf = 0.0;
  for (double v : c.data()) sc += v * v;
  for (double v : f.values()) sf += v * v;
  sf *= f.shape().cell_volume();
  const double pv = std::abs(sc - sf) / sf;
  o.require(pv <= kParsevalTol, "Parseval " + fmt(pv));
  const double secs = since(t0);
  o.require(secs <= kBasisSeconds, "runtime " + fmt(secs) + " s");
  return o;
}

Outcome filter_identities() {
  Outcome o;
  const FilterBank bank = defaults().filter_bank();
  const double h = bank.table_step();
  double plateau = 0.0, zero = 0.0, range = 0.0, even = 0.0, part = 0.0, def = 0.0, vzero = 0.0;
  const int count = int(std::ceil(8 * pi / 3 / h)) + 2;
  for (int i = 0; i <= count; ++i) {
    const double xi = i * h;
    const double p = bank.phi0_hat(xi);
    if (xi <= 2 * pi / 3) plateau = std::max(plateau, std::abs(p - 1.0));
    if (xi >= 4 * pi / 3) zero = std::max(zero, std::abs(p));
    range = std::max(range, std::max(-p, p - 1.0));
    even = std::max(even, std::abs(p - bank.phi0_hat(-xi)));
    const double v = bank.varphi(xi);
    if (xi <= 2 * pi / 3) vzero = std::max(vzero, std::abs(v));
    const double a = bank.phi0_hat(xi / 2);
    def = std::max(def, std::abs(v * v - (a * a - p * p)));
    if (xi >= 2 * pi / 3 && xi <= 4 * pi / 3) {
      const double w = bank.varphi(2 * pi - xi);
      part = std::max(part, std::abs(v * v + w * w - 1.0));
    }
  }
  const double at_pi = std::abs(bank.varphi(pi) - std::sqrt(0.5));
  o.require(plateau <= kFilterTol && zero <= kFilterTol && range <= kFilterTol && even <= kFilterTol,
            "phi0 support/plateau/range/evenness " + fmt(std::max({plateau, zero, range, even})));
  o.require(def <= kFilterTol && vzero <= kFilterTol, "varphi definition " + fmt(std::max(def, vzero)));
  o.require(part <= kFilterTol, "varphi partition " + fmt(part));
  o.require(at_pi <= kFilterTol, "varphi(pi) - 1/sqrt2 = " + fmt(at_pi));
  return o;
}

Outcome criticality() {
  Outcome o;
  const auto& cfg = defaults().grid;
  const double inf = std::numeric_limits<double>::infinity();
  const std::vector<SpaceParams> tuples{
      {2, 4, 2, 2, 1.0, 0.1, 0.0, {}}, {2, 4, inf, 2, 1.0, 0.1, 0.0, {}}, {2, 3, 1, 3, 1.0, 0.1, 0.0, {}}};
  double worst = 0.0;
  int evaluations = 0;
  for (const auto& p : tuples)
    for (int f = 0; f < 6; ++f) {
      const CoeffField c = random_field(cfg, 1, kSeed + 100 + f, 0.05 + 0.19 * f);
      const double base = f_norm(c, p).value;
      for (int i = -4; i <= 4; ++i) {
        if (i == 0) continue;
        const CoeffField s = scale_map(c, i);
        worst = std::max(worst, std::abs(f_norm(s, p).value - base) / base);
        ++evaluations;
      }
    }
  o.require(worst <= kCriticalTol, std::to_string(evaluations) + " dilations max rel change " + fmt(worst));
  return o;
}

Outcome ring_support() {
  Outcome o;
  const RunConfig rc = defaults();
  const auto& cfg = rc.grid;
  const WaveletTransform tr(rc.filter_bank(), cfg);
  const CoeffField c = random_field(cfg, 1, kSeed + 7);
  const auto e = cfg.grid().extents();
  const std::vector<int> dims(e.begin(), e.begin() + cfg.dim);
  double worst = 0.0;
  for (int j = cfg.j_min; j <= cfg.j_max; ++j)
    for (int eps = 1; eps <= cfg.eps_count(); ++eps) {
      const SampledField q = project_Q(tr, c, j, eps);
      cvec s(q.values().begin(), q.values().end());
      fft::forward(s, dims);
      const double lo = 2 * pi / 3 * std::exp2(j), hi_one = 8 * pi / 3 * std::exp2(j),
                   hi_zero = 4 * pi / 3 * std::exp2(j);
      double in = 0.0, out = 0.0;
      std::size_t i = 0;
      for (int a = 0; a < e[0]; ++a)
        for (int b = 0; b < e[1]; ++b)
          for (int z = 0; z < e[2]; ++z, ++i) {
            const int m[3] = {fft::signed_frequency(a, e[0]), fft::signed_frequency(b, e[1]),
                              e[2] == 1 ? 0 : fft::signed_frequency(z, e[2])};
            bool inside = true;
            for (int d = 0; d < cfg.dim; ++d) {
              const double x = std::abs(2 * pi * m[d] / cfg.side());
              if ((eps >> d) & 1) {
                if (x < lo * (1 - 1e-12) || x > hi_one * (1 + 1e-12)) inside = false;
              } else if (x > hi_zero * (1 + 1e-12)) {
                inside = false;
              }
            }
            (inside ? in : out) += std::norm(s[i]);
          }
      worst = std::max(worst, out / (in + out));
    }
  o.require(worst <= kRingTol, "max relative leakage " + fmt(worst));
  return o;
}

Outcome semigroup_laws() {
  Outcome o;
  const RunConfig rc = defaults();
  const auto& cfg = rc.grid;
  const WaveletTransform tr(rc.filter_bank(), cfg);
  const CoeffField c = random_field(cfg, 1, kSeed + 11);
  double law = 0.0;
  for (auto [t1, t2] : {std::pair{0.01, 0.02}, std::pair{0.1, 0.05}, std::pair{1e-4, 0.3}}) {
    const CoeffField a = heat_flow(tr, heat_flow(tr, c, t1), t2), b = heat_flow(tr, c, t1 + t2);
    law = std::max(law, (a - b).max_abs() / b.max_abs());
  }
  o.require(law <= kSemigroupTol, "semigroup law " + fmt(law));

  // band reproduced exactly by the window: interior levels
  const CoeffField inner = random_field(cfg, 1, kSeed + 12, 1.0, cfg.j_min + 1, cfg.j_max - 1);
  double inv = 0.0;
  for (double gamma : {0.01, 0.05, 0.25})
    for (double t : {0.01, 0.2}) {
      const CoeffField g = gevrey_flow(tr, gevrey_flow(tr, inner, t, gamma, +1), t, gamma, -1);
      const CoeffField h = gevrey_flow(tr, gevrey_flow(tr, inner, t, gamma, -1), t, gamma, +1);
      inv = std::max({inv, (g - inner).max_abs() / inner.max_abs(), (h - inner).max_abs() / inner.max_abs()});
    }
  o.require(inv <= kGevreyInverseTol, "Gevrey inverse " + fmt(inv));

  double min_c = std::numeric_limits<double>::infinity(), min_r2 = 1.0;
  int probes = 0;
  for (int j = cfg.j_min + 1; j <= cfg.j_max - 1; ++j)
    for (int eps : {1, 3}) {
      DecayOptions opt;
      opt.times = geometric_times(std::exp2(-2.0 * j), 256 * std::exp2(-2.0 * j), 33);
      const DecayReport d = decay_check(tr, single_wavelet(cfg, {eps, j, {1, 2, 0}}), opt);
      min_c = std::min(min_c, d.fitted_c_tilde);
      min_r2 = std::min(min_r2, d.r_squared);
      ++probes;
    }
  o.require(min_c > 0, std::to_string(probes) + " probes min fitted c~ " + fmt(min_c));
  o.require(min_r2 >= kDecayR2, "min R^2 " + fmt(min_r2));
  return o;
}

Outcome embedding() {
  Outcome o;
  const RunConfig rc = defaults();
  const AnalysisConfig base = rc.grid, fine = base.doubled();
  const FilterBank bank = rc.filter_bank();
  const WaveletTransform tr0(bank, base), tr1(bank, fine);
  const int ensemble = 20;
  for (const auto& p : gevrey_tuples()) {
    if (!validate_params(p, Theorem::gevrey).empty()) {
      o.require(false, "tuple not admissible");
      continue;
    }
    double r0 = 0.0, r1 = 0.0;
    bool finite = true;
    for (int f = 0; f < ensemble; ++f) {
      const CoeffField c = random_field(base, 1, kSeed + 200 + f, 0.1, base.j_min + 1, base.j_max - 1);
      const double a = embedding_check(tr0, c, p, TimeMesh::for_levels(base), p.gamma).ratio;
      const double b = embedding_check(tr1, embed(c, fine), p, TimeMesh::for_levels(fine), p.gamma).ratio;
      finite = finite && std::isfinite(a) && std::isfinite(b);
      r0 = std::max(r0, a);
      r1 = std::max(r1, b);
    }
    const double change = std::abs(r1 / r0 - 1.0);
    o.require(finite && change <= kDoublingTol, "p=" + fmt(p.p) + " q=" + fmt(p.q) + " r=" + fmt(p.r) + " sup ratio " +
                                                    fmt(r0) + " -> " + fmt(r1));
  }
  return o;
}

Outcome maximal_bounds() {
  Outcome o;
  const RunConfig rc = defaults();
  const auto& cfg = rc.grid;
  const double N = 2 * cfg.dim + 2;
  const double bound = g_weight_constant_bound(cfg.dim, N);
  double translated = 0.0, aligned = 0.0;
  const int ensemble = 50;
  for (int f = 0; f < ensemble; ++f) {
    const CoeffField c = random_field(cfg, 1, kSeed + 300 + f, 0.02 + 0.004 * f);
    translated = std::max(translated, g_weight_check(c, 0, N, CubeFamily::translated).max_ratio());
    if (f < 10) aligned = std::max(aligned, g_weight_check(c, 0, N, CubeFamily::aligned).max_ratio());
  }
  o.require(translated <= bound, std::to_string(ensemble) + " fields g/M " + fmt(translated) + " <= C* " + fmt(bound) +
                                     " (aligned cubes " + fmt(aligned) + ")");

  const SpaceParams p{2, 4, 2, 2, 1.0, 0.1, 0.0, {}};
  double fs0 = 0.0, fs1 = 0.0, worst_change = 0.0;
  for (int f = 0; f < ensemble; ++f) {
    const CoeffField c = random_field(cfg, 1, kSeed + 400 + f, 0.05);
    std::vector<CellGrid> fam, fam2;
    for (int j = cfg.j_min; j <= cfg.j_max; ++j) {
      fam.push_back(level_majorant(c, 0, j));
      fam2.push_back(fam.back().refined(cfg.j_max + 1));
    }
    const double a = fefferman_stein_ratio(fam, p.p, p.q, p.r, CubeFamily::translated);
    const double b = fefferman_stein_ratio(fam2, p.p, p.q, p.r, CubeFamily::translated);
    fs0 = std::max(fs0, a);
    fs1 = std::max(fs1, b);
    worst_change = std::max(worst_change, std::abs(b / a - 1.0));
  }
  o.require(std::isfinite(fs0) && std::abs(fs1 / fs0 - 1.0) <= kDoublingTol,
            "Fefferman-Stein sup " + fmt(fs0) + " -> " + fmt(fs1) + " (per-field change <= " + fmt(worst_change) + ")");
  return o;
}

Outcome flow_decomposition() {
  Outcome o;
  const RunConfig rc = defaults();
  const auto& cfg = rc.grid;
  const WaveletTransform tr(rc.filter_bank(), cfg);
  double worst = 0.0;
  for (int pair = 0; pair < 20; ++pair) {
    const CoeffField u = random_field(cfg, 1, kSeed + 500 + pair, 0.2);
    const CoeffField v = random_field(cfg, 1, kSeed + 600 + pair, 0.2);
    const ProductSplit s = decompose_product(tr, u, v);
    const SampledField a = tr.to_grid(tr.spectrum(u, {s.points}));
    const SampledField b = tr.to_grid(tr.spectrum(v, {s.points}));
    std::vector<double> prod(a.values().size()), sum(a.values().size());
    for (std::size_t i = 0; i < prod.size(); ++i) {
      prod[i] = a.values()[i] * b.values()[i];
      sum[i] = s.low_high.values()[i] + s.diagonal.values()[i] + s.high_low.values()[i];
    }
    worst = std::max(worst, relative_l2(sum, prod));
  }
  o.require(worst <= kFlowTol, "20 pairs max relative error " + fmt(worst));
  return o;
}

Outcome kernel_probes() {
  Outcome o;
  const auto t0 = Clock::now();
  RunConfig rc = defaults();
  rc.verify.kernel_probes = 40;
  const ProbeSummary s = run_kernel_probes(rc);
  const double N = 2 * rc.grid.dim + 2;
  bool finite = true;
  int cases[2][5] = {};
  for (const auto& p : s.probes) {
    finite = finite && std::isfinite(p.ratio) && p.bound > 0;
    ++cases[p.regime == KernelRegime::b1 ? 0 : 1][p.case_tag];
  }
  std::string tags;
  for (int r = 0; r < 2; ++r)
    for (int c = 1; c <= 4; ++c) tags += (r ? "B2." : "B1.") + std::to_string(c) + ":" + std::to_string(cases[r][c]) + " ";
  o.require(finite, std::to_string(s.probes.size()) + " probes finite, max ratio B1 " + fmt(s.max_ratio_b1) + " B2 " +
                        fmt(s.max_ratio_b2) + " [" + tags + "]");
  o.require(std::abs(s.distance_slope + N) <= kSlopeTol, "distance slope " + fmt(s.distance_slope) + " vs " + fmt(-N));
  o.require(s.fitted_c > 0, "fitted c " + fmt(s.fitted_c));
  const double secs = since(t0);
  o.require(secs <= kKernelSeconds, "runtime " + fmt(secs) + " s");
  return o;
}

// sup|div| <= sum_m |xi_m . u^(m)|
double divergence_bound(const WaveletTransform& tr, const CoeffField& c) {
  const Spectrum s = tr.spectrum(c);
  const auto e = s.shape.extents();
  double acc = 0.0;
  std::size_t i = 0;
  const double L = tr.config().side();
  for (int a = 0; a < e[0]; ++a)
    for (int b = 0; b < e[1]; ++b)
      for (int z = 0; z < e[2]; ++z, ++i) {
        const double xi[3] = {2 * pi * fft::signed_frequency(a, e[0]) / L, 2 * pi * fft::signed_frequency(b, e[1]) / L,
                              e[2] == 1 ? 0.0 : 2 * pi * fft::signed_frequency(z, e[2]) / L};
        std::complex<double> d = 0.0;
        for (int comp = 0; comp < c.components(); ++comp) d += xi[comp] * s.component(comp)[i];
        acc += std::abs(d);
      }
  return acc;
}

Outcome solver_run() {
  Outcome o;
  const auto t0 = Clock::now();
  const RunConfig rc = defaults();
  const auto& cfg = rc.grid;
  const WaveletTransform tr(rc.filter_bank(), cfg);
  SolveConfig sc = rc.solve_config();
  sc.max_iter = kMaxIter;
  const CoeffField shape = divergence_free(tr, two_wavelet_potential(cfg));
  const CoeffField u0 = normalized(shape, sc.params, 1e-3);

  const SolveResult r = picard_solve(tr, u0, sc);
  const double res = residual(tr, r.trajectory, u0, sc.params, QuadratureSpec{16, 12});
  double div = divergence_bound(tr, *r.trajectory.initial());
  for (const auto& s : r.trajectory.states()) div = std::max(div, divergence_bound(tr, s));
  o.require(r.report.contraction_ratio < kContractionRatio && r.report.iterations <= kMaxIter,
            "ratio " + fmt(r.report.contraction_ratio) + " in " + std::to_string(r.report.iterations) + " iterations");
  o.require(res <= kResidualTol, "residual (finer quadrature) " + fmt(res));
  o.require(div <= kDivergenceTol, "divergence bound " + fmt(div));

  std::vector<double> lx, ly;
  for (double delta : {1e-2, 1e-3, 1e-4}) {
    const CoeffField d0 = normalized(shape, sc.params, delta);
    const SolveResult rd = picard_solve(tr, d0, sc);
    const Trajectory heat = heat_trajectory(tr, d0, sc.mesh.times());
    Trajectory diff;
    for (std::size_t i = 0; i < heat.size(); ++i) diff.push(rd.trajectory[i] - heat[i]);
    lx.push_back(std::log(delta));
    ly.push_back(std::log(workspace_norm(diff, sc.params).total));
  }
  const double sl = slope(lx, ly);
  o.require(std::abs(sl - kQuadraticSlope) <= kQuadraticTol, "smallness slope " + fmt(sl));

  // u0 -> 2 u0(2 .), t -> t/4
  const CoeffField s0 = scale_map(u0, 1);
  const WaveletTransform trs(rc.filter_bank(), s0.config());
  SolveConfig ss = sc;
  ss.mesh = {sc.mesh.jt_min + 1, sc.mesh.jt_max + 1, sc.mesh.per_window};
  const SolveResult rs = picard_solve(trs, s0, ss);
  const Trajectory expect = scale_map(r.trajectory, 1);
  double mismatch = 0.0, scale = 0.0;
  bool same_mesh = rs.trajectory.size() == expect.size();
  for (std::size_t i = 0; same_mesh && i < expect.size(); ++i) {
    same_mesh = same_mesh && std::abs(rs.trajectory.time(i) - expect.time(i)) <= 1e-15 * expect.time(i);
    const auto& a = rs.trajectory[i].data();
    const auto& b = expect[i].data();
    for (std::size_t k = 0; k < a.size(); ++k) mismatch = std::max(mismatch, std::abs(a[k] - b[k]));
    scale = std::max(scale, expect[i].max_abs());
  }
  o.require(same_mesh && mismatch <= kScalingTol * scale, "scaling symmetry " + fmt(mismatch / scale));
  const double secs = since(t0);
  o.require(secs <= kSolverSeconds, "runtime " + fmt(secs) + " s");
  return o;
}

Outcome gevrey_diagnostic_run() {
  Outcome o;
  const RunConfig rc = defaults();
  const AnalysisConfig base = rc.grid, fine = base.doubled();
  const FilterBank bank = rc.filter_bank();
  const WaveletTransform tr0(bank, base), tr1(bank, fine);
  SpaceParams p{2, 4, 2, 2, 1.0, 0.1, 0.02, {}};
  o.require(validate_params(p, Theorem::gevrey).empty(), "n=2 gamma=" + fmt(p.gamma) + " admissible (sup " +
                                                              fmt(gamma_supremum(2, p.p, p.m)) + ")");
  SolveConfig sc = rc.solve_config();
  sc.params = p;
  const CoeffField u0 = normalized(divergence_free(tr0, two_wavelet_potential(base)), p, 1e-3);
  const SolveResult r0 = picard_solve(tr0, u0, sc);
  SolveConfig sf = sc;
  sf.mesh = TimeMesh::for_levels(fine);
  const SolveResult r1 = picard_solve(tr1, embed(u0, fine), sf);
  const double g0 = gevrey_diagnostic(tr0, r0.trajectory, p, p.gamma).norm;
  const double g1 = gevrey_diagnostic(tr1, r1.trajectory, p, p.gamma).norm;
  o.require(std::isfinite(g0) && std::abs(g1 / g0 - 1.0) <= kDoublingTol,
            "conjugated work-space norm " + fmt(g0) + " -> " + fmt(g1));
  const double plain = workspace_norm(r0.trajectory, p).total;
  const double zero = gevrey_diagnostic(tr0, r0.trajectory, p, 0.0).norm;
  o.require(std::abs(zero - plain) <= kGammaZeroTol * plain, "gamma=0 consistency " + fmt(std::abs(zero - plain) / plain));

  // three-dimensional smoke run
  const AnalysisConfig c3{3, 2, 64, 0, 2};
  const SpaceParams p3{3, 4, 2, 2, 1.0, 0.1, 0.01, {}};
  o.require(validate_params(p3, Theorem::gevrey).empty() && std::abs(gamma_supremum(3, 4, 1) - 1.0 / 64) < 1e-15,
            "n=3 gamma=0.01 < 1/64 admissible");
  const WaveletTransform tr3(bank, c3);
  SolveConfig s3 = sc;
  s3.params = p3;
  s3.mesh = TimeMesh::for_levels(c3);
  const CoeffField v0 = normalized(divergence_free(tr3, random_potential(c3, kSeed + 900, 0.05)), p3, 1e-3);
  const SolveResult r3 = picard_solve(tr3, v0, s3);
  const double g3 = gevrey_diagnostic(tr3, r3.trajectory, p3, p3.gamma).norm;
  o.require(std::isfinite(g3) && g3 > 0, "n=3 64^3 conjugated norm " + fmt(g3));
  return o;
}

Outcome flow_operators() {
  Outcome o;
  const RunConfig rc = defaults();
  const AnalysisConfig base{2, 1, 128, 1, 4}, fine = base.doubled();
  const FilterBank bank = rc.filter_bank();
  const SpaceParams p{2, 4, 2, 2, 1.0, 0.1, 0.02, {}};
  using K = BilinearOperator::Kind;
  const std::vector<BilinearOperator> ops{
      {K::derivative, 0, 0, 0, FlowKind::diagonal}, {K::derivative, 0, 0, 0, FlowKind::high_low},
      {K::derivative, 0, 0, 0, FlowKind::low_high}, {K::riesz, 0, 0, 1, FlowKind::diagonal},
      {K::riesz, 0, 0, 1, FlowKind::high_low},      {K::riesz, 0, 0, 1, FlowKind::low_high}};
  const int ensemble = 6;
  std::vector<double> sup0(ops.size(), 0.0), sup1(ops.size(), 0.0);
  bool finite = true;
  for (int level = 0; level < 2; ++level) {
    const AnalysisConfig cfg = level == 0 ? base : fine;
    const WaveletTransform tr(bank, cfg);
    const std::vector<double> times = TimeMesh::for_levels(cfg).times();
    for (int e = 0; e < ensemble; ++e) {
      auto tilde = [&](std::uint64_t seed) {
        const CoeffField f = embed(random_field(base, 1, seed, 0.3, base.j_min + 1, base.j_max - 1), cfg);
        Trajectory t = heat_trajectory(tr, f, times, p.gamma);
        const double n = workspace_norm(t, p).total;
        return map_states(t, [n](double, const CoeffField& s) { CoeffField r = s; r *= 1.0 / n; return r; });
      };
      const Trajectory u = tilde(kSeed + 700 + e), v = tilde(kSeed + 800 + e);
      for (std::size_t k = 0; k < ops.size(); ++k) {
        const double w = workspace_norm(DuhamelEngine(tr, u, v, ops[k], p.gamma).evaluate_all(), p).total;
        finite = finite && std::isfinite(w);
        (level == 0 ? sup0 : sup1)[k] = std::max((level == 0 ? sup0 : sup1)[k], w);
      }
    }
  }
  double growth = 0.0;
  std::string detail;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    growth = std::max(growth, sup1[k] / sup0[k]);
    detail += " " + fmt(sup0[k]) + "->" + fmt(sup1[k]);
  }
  o.require(finite && growth <= kUniformGrowth, "sup norms" + detail + ", max growth " + fmt(growth));
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {1, "wavelet basis", wavelet_basis},
      {2, "filter identities", filter_identities},
      {3, "criticality of the f-norm", criticality},
      {4, "ring support", ring_support},
      {5, "semigroup and decay", semigroup_laws},
      {6, "heat embedding under doubling", embedding},
      {7, "maximal bounds", maximal_bounds},
      {8, "flow decomposition", flow_decomposition},
      {9, "kernel probes", kernel_probes},
      {10, "Picard solver", solver_run},
      {11, "Gevrey diagnostic", gevrey_diagnostic_run},
      {12, "flow operators on unit balls", flow_operators},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %2d (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.str().c_str(),
                since(t0));
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
