#include "mwns/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>

#include "mwns/errors.hpp"
#include "mwns/fixtures.hpp"
#include "mwns/kernel_probe.hpp"
#include "mwns/lorentz.hpp"
#include "mwns/maximal.hpp"
#include "mwns/paraproduct.hpp"
#include "mwns/semigroup.hpp"
#include "mwns/solver.hpp"

namespace mwns {

bool SuiteReport::passed() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

namespace {

using std::numbers::pi;

Check at_most(std::string name, double measured, double limit, std::string detail = {}) {
  return {std::move(name), measured <= limit, measured, limit, std::move(detail)};
}

double grid_dot(const SampledField& a, const SampledField& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) s += a.values()[i] * b.values()[i];
  return s * a.shape().cell_volume();
}

WaveletIndex random_index(const AnalysisConfig& cfg, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> jd(cfg.j_min, cfg.j_max), ed(1, cfg.eps_count());
  WaveletIndex idx{ed(rng), jd(rng), {0, 0, 0}};
  std::uniform_int_distribution<int> kd(0, cfg.lattice(idx.j) - 1);
  for (int i = 0; i < cfg.dim; ++i) idx.k[i] = kd(rng);
  return idx;
}

std::vector<SpaceParams> critical_tuples(int n) {
  const double inf = std::numeric_limits<double>::infinity();
  return {{n, 4, 2, 2, 1.0, 0.1, 0.0, {}}, {n, 4, inf, 2, 1.0, 0.1, 0.0, {}}, {n, 3, 1, 3, 1.0, 0.1, 0.0, {}}};
}

SuiteReport meyer_suite(const RunConfig& rc) {
  SuiteReport rep;
  const FilterBank bank = rc.filter_bank();
  const WaveletTransform tr(bank, rc.grid);
  const auto& cfg = rc.grid;

  double part0 = 0.0, part1 = 0.0, square = 0.0;
  const double h = 1.0 / rc.profile_resolution;
  for (double xi = 2 * pi / 3; xi <= 4 * pi / 3 + 1e-15; xi += h) {
    const double a = bank.phi0_hat(xi), b = bank.phi0_hat(2 * pi - xi);
    part0 = std::max(part0, std::abs(a * a + b * b - 1.0));
    const double c = bank.varphi(xi), d = bank.varphi(2 * pi - xi);
    part1 = std::max(part1, std::abs(c * c + d * d - 1.0));
  }
  for (double xi = 0; xi <= 8 * pi / 3; xi += h) {
    const double v = bank.varphi(xi), a = bank.phi0_hat(xi / 2), b = bank.phi0_hat(xi);
    square = std::max(square, std::abs(v * v - (a * a - b * b)));
  }
  rep.checks.push_back(at_most("phi0 partition of unity", part0, 1e-12));
  rep.checks.push_back(at_most("varphi partition of unity", part1, 1e-12));
  rep.checks.push_back(at_most("varphi squared difference", square, 1e-12));
  rep.checks.push_back(at_most("varphi(pi) = 1/sqrt 2", std::abs(bank.varphi(pi) - std::sqrt(0.5)), 1e-12));

  std::mt19937_64 rng(rc.verify.seed);
  double ortho = 0.0;
  for (int i = 0; i < rc.verify.orthonormal_pairs; ++i) {
    const WaveletIndex a = random_index(cfg, rng);
    WaveletIndex b = a;
    switch (i % 4) {
      case 0: break;
      case 1: b.k[0] = wrap(a.k[0] + 1, cfg.lattice(a.j)); break;
      case 2: b.j = a.j < cfg.j_max ? a.j + 1 : a.j - 1; b.k[0] = 2 * a.k[0] % cfg.lattice(b.j); break;
      default: b = random_index(cfg, rng);
    }
    const double ip = grid_dot(tr.synthesize(single_wavelet(cfg, a)), tr.synthesize(single_wavelet(cfg, b)));
    ortho = std::max(ortho, std::abs(ip - (a == b ? 1.0 : 0.0)));
  }
  rep.checks.push_back(at_most("orthonormality", ortho, 1e-6, std::to_string(rc.verify.orthonormal_pairs) + " pairs"));

  const CoeffField c = random_field(cfg, 1, rc.verify.seed + 1);
  const SampledField f = tr.synthesize(c);
  const SampledField g = tr.synthesize(tr.analyze(f));
  double err = 0.0, nf = 0.0;
  for (std::size_t i = 0; i < f.values().size(); ++i) {
    err += std::pow(f.values()[i] - g.values()[i], 2);
    nf += f.values()[i] * f.values()[i];
  }
  rep.checks.push_back(at_most("round trip relative L2", std::sqrt(err / nf), 1e-8));
  double sc = 0.0;
  for (double v : c.data()) sc += v * v;
  rep.checks.push_back(at_most("Parseval relative", std::abs(sc - nf * f.shape().cell_volume()) / sc, 1e-6));

  double leak = 0.0;
  for (int j = cfg.j_min; j <= cfg.j_max; ++j)
    for (int e = 1; e <= cfg.eps_count(); ++e) {
      const Spectrum s = tr.spectrum(c, {0, j, e});
      const auto ext = s.shape.extents();
      double in = 0.0, out = 0.0;
      std::size_t i = 0;
      const double lo = 2 * pi / 3 * std::exp2(j), hi = 8 * pi / 3 * std::exp2(j);
      for (int x = 0; x < ext[0]; ++x)
        for (int y = 0; y < ext[1]; ++y)
          for (int z = 0; z < ext[2]; ++z, ++i) {
            const double xi[3] = {wavenumber(x, ext[0], cfg.side()), wavenumber(y, ext[1], cfg.side()),
                                  ext[2] == 1 ? 0.0 : wavenumber(z, ext[2], cfg.side())};
            bool ok = true;
            for (int a = 0; a < cfg.dim; ++a) {
              const double v = std::abs(xi[a]);
              if (v > hi * (1 + 1e-12) || (((e >> a) & 1) && v < lo * (1 - 1e-12))) ok = false;
            }
            (ok ? in : out) += std::norm(s.data[i]);
          }
      if (in + out > 0) leak = std::max(leak, out / (in + out));
    }
  rep.checks.push_back(at_most("ring support leakage", leak, 1e-10));
  return rep;
}

SuiteReport lorentz_suite(const RunConfig& rc) {
  SuiteReport rep;
  const auto& cfg = rc.grid;
  double crit = 0.0;
  for (const auto& p : critical_tuples(cfg.dim))
    for (int f = 0; f < 5; ++f) {
      const CoeffField c = random_field(cfg, 1, rc.verify.seed + 17 * f, 0.3);
      const double base = f_norm(c, p).value;
      for (int i = -2; i <= 2; ++i)
        crit = std::max(crit, std::abs(f_norm(scale_map(c, i), p).value - base) / base);
    }
  rep.checks.push_back(at_most("f-norm criticality under dilation", crit, 1e-12));

  std::mt19937_64 rng(rc.verify.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = -1.0;
  for (int trial = 0; trial < 200; ++trial) {
    const double rho = 0.05 + 0.95 * u(rng);
    double sum = 0.0, sum_pow = 0.0;
    for (int k = 0; k < 16; ++k) {
      const double a = std::pow(u(rng), 3) * 10;
      sum += a;
      sum_pow += std::pow(a, rho);
    }
    worst = std::max(worst, std::pow(sum, rho) - sum_pow);
  }
  rep.checks.push_back(at_most("power subadditivity", worst, 0.0));

  const WaveletTransform tr(rc.filter_bank(), cfg);
  const CoeffField c = random_field(cfg, 1, rc.verify.seed + 5, 0.05);
  const Trajectory traj = heat_trajectory(tr, c, rc.time_mesh().times());
  const CoefficientBound b = coefficient_bound_check(traj, rc.space);
  rep.checks.push_back({"coefficient bound from the work-space norm", b.holds(),
                        std::max(b.high_lhs / b.high_rhs, b.low_lhs / std::max(b.low_rhs, 1e-300)), 1.0, {}});

  CoeffField bigger = c;
  for (double& v : bigger.data()) v *= 1.0 + 0.5 * u(rng);
  const double n0 = f_norm(c, rc.space).value, n1 = f_norm(bigger, rc.space).value;
  rep.checks.push_back({"monotone under coefficient growth", n1 >= n0 * (1 - 1e-12), n1 / n0, 1.0, {}});
  return rep;
}

SuiteReport maximal_suite(const RunConfig& rc) {
  SuiteReport rep;
  const auto& cfg = rc.grid;
  const double N = 2 * cfg.dim + 2;
  const double bound = g_weight_constant_bound(cfg.dim, N);
  double worst = 0.0;
  const int count = std::min(rc.verify.ensemble, 10);
  for (int f = 0; f < count; ++f) {
    const CoeffField c = random_field(cfg, 1, rc.verify.seed + f, 0.1);
    worst = std::max(worst, g_weight_check(c, 0, N, CubeFamily::translated).max_ratio());
  }
  rep.checks.push_back(at_most("g-weight over maximal function", worst, bound, std::to_string(count) + " fields"));

  double fs = 0.0;
  for (int f = 0; f < count; ++f) {
    const CoeffField c = random_field(cfg, 1, rc.verify.seed + 31 * f, 0.1);
    std::vector<CellGrid> fam;
    for (int j = cfg.j_min; j <= cfg.j_max; ++j) fam.push_back(level_majorant(c, 0, j));
    fs = std::max(fs, fefferman_stein_ratio(fam, rc.space.p, rc.space.q, rc.space.r, CubeFamily::translated));
  }
  rep.checks.push_back({"Fefferman-Stein ratio finite", std::isfinite(fs) && fs >= 1.0 - 1e-12, fs, 0.0, {}});
  return rep;
}

SuiteReport semigroup_suite(const RunConfig& rc) {
  SuiteReport rep;
  const auto& cfg = rc.grid;
  const WaveletTransform tr(rc.filter_bank(), cfg);
  const CoeffField c = random_field(cfg, 1, rc.verify.seed);
  const double t1 = 0.01, t2 = 0.03;
  const CoeffField a = heat_flow(tr, heat_flow(tr, c, t1), t2), b = heat_flow(tr, c, t1 + t2);
  rep.checks.push_back(at_most("heat semigroup law", (a - b).max_abs() / b.max_abs(), 1e-10));

  // multipliers act exactly on the band reproduced by the level window
  const CoeffField inner = random_field(cfg, 1, rc.verify.seed + 2, 1.0, cfg.j_min + 1, cfg.j_max - 1);
  const double gamma = rc.space.gamma > 0 ? rc.space.gamma : 0.05;
  const double t = 0.05;
  const CoeffField g = gevrey_flow(tr, gevrey_flow(tr, inner, t, gamma, +1, rc.cap), t, gamma, -1, rc.cap);
  rep.checks.push_back(at_most("Gevrey inverse identity", (g - inner).max_abs() / inner.max_abs(), 1e-10));

  const int jw = cfg.j_min + cfg.level_count() / 2;
  const CoeffField w = single_wavelet(cfg, {1, jw, {0, 0, 0}});
  DecayOptions opt;
  opt.times = geometric_times(std::exp2(-2.0 * jw), 256 * std::exp2(-2.0 * jw), 24);
  const DecayReport d = decay_check(tr, w, opt);
  rep.checks.push_back({"decay rate positive", d.fitted_c_tilde > 0, d.fitted_c_tilde, 0.0, {}});
  rep.checks.push_back({"decay log-linear fit", d.r_squared >= 0.99, d.r_squared, 0.99, {}});

  const EmbeddingReport e = embedding_check(tr, normalized(c, rc.space, 1.0), rc.space, rc.time_mesh());
  rep.checks.push_back({"heat embedding ratio finite", std::isfinite(e.ratio) && e.ratio > 0, e.ratio, 0.0, {}});
  return rep;
}

SuiteReport kernel_suite(const RunConfig& rc) {
  SuiteReport rep;
  const ProbeSummary s = run_kernel_probes(rc);
  const double N = 2 * rc.grid.dim + 2;
  bool finite = true;
  for (const auto& p : s.probes) finite = finite && std::isfinite(p.ratio);
  rep.checks.push_back({"probe ratios finite", finite, std::max(s.max_ratio_b1, s.max_ratio_b2), 0.0,
                        std::to_string(s.probes.size()) + " probes"});
  rep.checks.push_back(at_most("distance slope vs -N", std::abs(s.distance_slope + N), 0.5,
                               "slope " + std::to_string(s.distance_slope)));
  rep.checks.push_back({"fitted heat rate positive", s.fitted_c > 0, s.fitted_c, 0.0, {}});
  return rep;
}

SuiteReport solver_suite(const RunConfig& rc) {
  SuiteReport rep;
  const auto& cfg = rc.grid;
  const WaveletTransform tr(rc.filter_bank(), cfg);
  const CoeffField u0 =
      normalized(divergence_free(tr, two_wavelet_potential(cfg)), rc.space, rc.verify.fixture_norm);
  SolveConfig sc = rc.solve_config();
  sc.smallness = std::max(sc.smallness, rc.verify.fixture_norm);
  const SolveResult r = picard_solve(tr, u0, sc);
  rep.checks.push_back(at_most("contraction ratio", r.report.contraction_ratio, 0.5,
                               std::to_string(r.report.iterations) + " iterations"));
  rep.checks.push_back(at_most("residual", r.report.residual, sc.residual_tol));
  rep.checks.push_back(at_most("divergence", r.report.divergence_max, sc.divergence_tol));
  return rep;
}

}  // namespace

ProbeSummary run_kernel_probes(const RunConfig& rc) {
  const double gamma = rc.space.gamma > 0 ? rc.space.gamma : rc.verify.kernel_gamma;
  if (!(gamma > 0 && gamma <= 0.5)) throw ConfigError("space.gamma", "kernel bounds require 0 < gamma <= 1/2");
  ProbeSpec spec;
  spec.N = 2 * rc.grid.dim + 2;
  spec.gamma = gamma;
  spec.j = rc.grid.j_max;
  spec.random_probes = rc.verify.kernel_probes;
  spec.seed = rc.verify.seed;
  if (rc.grid.dim == 3) spec.shells = {2, 4, 8};
  const AnalysisConfig cfg = kernel_probe_config(rc.grid, 4 * spec.shells.back());
  // wavelets whose spatial decay order matches N
  const Transition profile = Transition::parse("poly" + std::to_string(int(spec.N) - 1));
  const WaveletTransform tr(FilterBank(profile, rc.profile_resolution), cfg);
  return kernel_bound_check(tr, spec);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"meyer", "lorentz", "maximal", "semigroup", "kernel", "solver"};
  return names;
}

SuiteReport run_suite(const std::string& name, const RunConfig& rc) {
  static const std::map<std::string, std::function<SuiteReport(const RunConfig&)>> suites{
      {"meyer", meyer_suite},         {"lorentz", lorentz_suite}, {"maximal", maximal_suite},
      {"semigroup", semigroup_suite}, {"kernel", kernel_suite},   {"solver", solver_suite}};
  auto it = suites.find(name);
  if (it == suites.end()) throw ConfigError("suite", "unknown suite '" + name + "'");
  const auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep = it->second(rc);
  rep.suite = name;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace mwns
