#include "mwns/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "mwns/errors.hpp"
#include "mwns/kernels.hpp"

namespace mwns {
namespace {

// Largest integer u with 2^u < v, for v > 0.
int floor_log2_strict(double v) {
  int e = 0;
  const double f = std::frexp(v, &e);  // v = f 2^e, f in [0.5, 1)
  return f == 0.5 ? e - 2 : e - 1;
}

LorentzValue lorentz_sorted(std::vector<double> v, double vol, double p, double r, LorentzOptions opt) {
  // v: positive values, any order
  LorentzValue out;
  if (v.empty()) return out;
  std::sort(v.begin(), v.end(), std::greater<>());
  const double rp = 1.0 / p;
  const bool r_inf = std::isinf(r);

  if (opt.sum == LevelSum::offset_averaged) {
    out.u_lo = static_cast<int>(std::floor(std::log2(v.back())));
    out.u_hi = static_cast<int>(std::ceil(std::log2(v.front())));
    // distinct values v_i with mu_i = vol #{g >= v_i}
    double acc = 0.0;
    std::size_t i = 0;
    while (i < v.size()) {
      std::size_t k = i;
      while (k < v.size() && v[k] == v[i]) ++k;
      const double mu = vol * static_cast<double>(k);
      const double next = k < v.size() ? v[k] : 0.0;
      if (r_inf)
        acc = std::max(acc, v[i] * std::pow(mu, rp));
      else
        acc += std::pow(mu, r * rp) * (std::pow(v[i], r) - std::pow(next, r));
      i = k;
    }
    out.value = r_inf ? acc : std::pow(acc / (r * std::numbers::ln2), 1.0 / r);
    return out;
  }

  out.u_hi = floor_log2_strict(v.front());
  out.u_lo = floor_log2_strict(v.back());
  const double total = vol * static_cast<double>(v.size());
  // u <= u_lo: |{g > 2^u}| is the full support
  double acc = r_inf ? std::ldexp(1.0, out.u_lo) * std::pow(total, rp)
                     : std::exp2(out.u_lo * r) / (1.0 - std::exp2(-r)) * std::pow(total, r * rp);
  std::size_t count = 0;  // #{v > 2^u}, grows as u decreases
  for (int u = out.u_hi; u > out.u_lo; --u) {
    const double thr = std::ldexp(1.0, u);
    while (count < v.size() && v[count] > thr) ++count;
    const double mu = vol * static_cast<double>(count);
    if (r_inf)
      acc = std::max(acc, thr * std::pow(mu, rp));
    else
      acc += std::exp2(u * r) * std::pow(mu, r * rp);
  }
  out.value = r_inf ? acc : std::pow(acc, 1.0 / r);
  return out;
}

LorentzValue lorentz_of(const std::vector<double>& values, double vol, double p, double r, LorentzOptions opt) {
  std::vector<double> pos;
  pos.reserve(values.size());
  for (double x : values)
    if (x > 0.0) pos.push_back(x);
  return lorentz_sorted(std::move(pos), vol, p, r, opt);
}

// (sum_j w_j^q g_j^q)^{1/q} on the finest level, g_j given per level.
std::vector<double> lq_combine(const std::vector<CellGrid>& levels, const std::vector<double>& weights, double q,
                               int finest) {
  std::vector<double> acc;
  const auto& k = kernels::active();
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (weights[i] == 0.0) continue;
    const CellGrid g = levels[i].refined(finest);
    if (acc.empty()) acc.assign(g.values.size(), 0.0);
    if (std::isinf(q))
      k.weighted_max(acc.data(), g.values.data(), weights[i], acc.size());
    else
      k.weighted_power_add(acc.data(), g.values.data(), std::pow(weights[i], q), q, acc.size());
  }
  if (!std::isinf(q))
    for (double& a : acc) a = std::pow(a, 1.0 / q);
  return acc;
}

void check_space(const SpaceParams& params, int dim) {
  if (params.n != dim) throw ConfigError("space.n", "parameter dimension differs from the field dimension");
  if (!(params.p > 0.0)) throw ConfigError("space.p", "p must be positive");
  if (!(params.q > 0.0)) throw ConfigError("space.q", "q must be positive");
  if (!(params.r > 0.0)) throw ConfigError("space.r", "r must be positive");
}

}  // namespace

double distribution_measure(const CellGrid& g, double lambda) {
  std::size_t n = 0;
  for (double v : g.values) n += v > lambda;
  return g.cell_volume() * static_cast<double>(n);
}

LorentzValue lorentz_quasi_norm(const CellGrid& g, double p, double r, LorentzOptions opt) {
  if (!(p > 0.0) || !(r > 0.0)) throw ConfigError("space", "p and r must be positive");
  return lorentz_of(g.values, g.cell_volume(), p, r, opt);
}

LorentzValue f_norm(const CoeffField& c, const SpaceParams& params, LorentzOptions opt) {
  const auto& cfg = c.config();
  check_space(params, cfg.dim);
  const double s = params.smoothness();
  LorentzValue total;
  bool first = true;
  for (int comp = 0; comp < c.components(); ++comp) {
    std::vector<CellGrid> levels;
    std::vector<double> weights;
    for (int j = cfg.j_min; j <= cfg.j_max; ++j) {
      levels.push_back(level_majorant(c, comp, j));
      weights.push_back(std::exp2(j * s));
    }
    const auto g = lq_combine(levels, weights, params.q, cfg.j_max);
    const LorentzValue v = lorentz_of(g, std::ldexp(1.0, -cfg.dim * cfg.j_max), params.p, params.r, opt);
    total.value += v.value;
    if (v.value > 0.0) {
      total.u_lo = first ? v.u_lo : std::min(total.u_lo, v.u_lo);
      total.u_hi = first ? v.u_hi : std::max(total.u_hi, v.u_hi);
      first = false;
    }
  }
  return total;
}

double besov_lorentz_norm(const CoeffField& c, const SpaceParams& params, LorentzOptions opt) {
  const auto& cfg = c.config();
  check_space(params, cfg.dim);
  const double s = params.smoothness();
  double total = 0.0;
  for (int comp = 0; comp < c.components(); ++comp) {
    double acc = 0.0;
    for (int j = cfg.j_min; j <= cfg.j_max; ++j) {
      const double nj = std::exp2(j * s) * lorentz_quasi_norm(level_majorant(c, comp, j), params.p, params.r, opt).value;
      acc = std::isinf(params.q) ? std::max(acc, nj) : acc + std::pow(nj, params.q);
    }
    total += std::isinf(params.q) ? acc : std::pow(acc, 1.0 / params.q);
  }
  return total;
}

CoeffField scale_map(const CoeffField& c, int i) {
  AnalysisConfig cfg = c.config();
  cfg.side_log2 -= i;
  cfg.j_min += i;
  cfg.j_max += i;
  CoeffField out = c.relabeled(cfg);
  out *= std::exp2(i * (1.0 - cfg.dim / 2.0));
  if (c.time()) out.set_time(*c.time() * std::exp2(-2.0 * i));
  return out;
}

CoeffField scale_map(const CoeffField& c, int i, int window_j_min, int window_j_max) {
  const auto& src = c.config();
  for (int j = src.j_min; j <= src.j_max; ++j) {
    const int jj = j + i;
    if (jj >= window_j_min && jj <= window_j_max) continue;
    for (int comp = 0; comp < c.components(); ++comp)
      for (int eps = 1; eps <= src.eps_count(); ++eps)
        for (double v : c.block(comp, j, eps))
          if (v != 0.0)
            throw RangeError("scaled coefficient at level " + std::to_string(jj) + " leaves the window [" +
                             std::to_string(window_j_min) + ", " + std::to_string(window_j_max) + "]");
  }
  const CoeffField scaled = scale_map(c, i);
  AnalysisConfig cfg = scaled.config();
  cfg.j_min = window_j_min;
  cfg.j_max = window_j_max;
  cfg.validate();
  CoeffField out(cfg, c.components(), scaled.time());
  for (int comp = 0; comp < c.components(); ++comp)
    for (int j = std::max(cfg.j_min, scaled.config().j_min); j <= std::min(cfg.j_max, scaled.config().j_max); ++j)
      for (int eps = 1; eps <= cfg.eps_count(); ++eps) {
        const auto s = scaled.block(comp, j, eps);
        std::copy(s.begin(), s.end(), out.block(comp, j, eps).begin());
      }
  return out;
}

Trajectory scale_map(const Trajectory& traj, int i) {
  Trajectory out;
  if (traj.initial()) {
    CoeffField s = scale_map(*traj.initial(), i);
    out.set_initial(std::move(s));
  }
  for (const auto& s : traj.states()) out.push(scale_map(s, i));
  return out;
}

namespace {

struct WindowSups {
  int jt;
  // per component, per level: window sup of f_j(t, x) on level-j cells
  std::vector<std::vector<CellGrid>> sup;
};

std::vector<WindowSups> window_sups(const Trajectory& traj, int min_samples) {
  if (traj.empty()) throw MeshCoverageError("empty time mesh");
  const auto& cfg = traj[0].config();
  std::map<int, std::vector<std::size_t>, std::greater<>> by_window;
  for (std::size_t i = 0; i < traj.size(); ++i) by_window[time_window(traj.time(i))].push_back(i);
  // every window between the first and last must be populated
  const int jt_hi = by_window.begin()->first, jt_lo = by_window.rbegin()->first;
  std::vector<WindowSups> out;
  for (int jt = jt_hi; jt >= jt_lo; --jt) {
    const auto it = by_window.find(jt);
    const std::size_t count = it == by_window.end() ? 0 : it->second.size();
    if (static_cast<int>(count) < min_samples)
      throw MeshCoverageError("time window " + std::to_string(jt) + " holds " + std::to_string(count) +
                              " samples, need " + std::to_string(min_samples));
    if (count == 0) continue;
    WindowSups w{jt, {}};
    for (int comp = 0; comp < traj[0].components(); ++comp) {
      std::vector<CellGrid> levels;
      for (int j = cfg.j_min; j <= cfg.j_max; ++j) {
        CellGrid g;
        for (std::size_t idx : it->second) {
          CellGrid h = level_majorant(traj[idx], comp, j);
          if (g.values.empty())
            g = std::move(h);
          else
            for (std::size_t q = 0; q < g.values.size(); ++q) g.values[q] = std::max(g.values[q], h.values[q]);
        }
        levels.push_back(std::move(g));
      }
      w.sup.push_back(std::move(levels));
    }
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace

WorkspaceNorm workspace_norm(const Trajectory& traj, const SpaceParams& params, WorkspaceOptions opt) {
  const auto sups = window_sups(traj, opt.min_samples_per_window);
  const auto& cfg = traj[0].config();
  check_space(params, cfg.dim);
  const double s = params.smoothness();
  const double vol = std::ldexp(1.0, -cfg.dim * cfg.j_max);
  WorkspaceNorm out;
  for (const auto& w : sups) {
    double hi = 0.0, lo = 0.0;
    for (std::size_t comp = 0; comp < w.sup.size(); ++comp) {
      std::vector<double> wh, wl;
      for (int j = cfg.j_min; j <= cfg.j_max; ++j) {
        const double base = std::exp2(j * s);
        wh.push_back(j >= w.jt ? std::exp2(2.0 * (j - w.jt) * params.m) * base : 0.0);
        wl.push_back(j < w.jt ? std::exp2(2.0 * (j - w.jt) * params.m_prime) * base : 0.0);
      }
      if (std::any_of(wh.begin(), wh.end(), [](double x) { return x != 0.0; }))
        hi += lorentz_of(lq_combine(w.sup[comp], wh, params.q, cfg.j_max), vol, params.p, params.r, opt.lorentz).value;
      if (std::any_of(wl.begin(), wl.end(), [](double x) { return x != 0.0; }))
        lo += lorentz_of(lq_combine(w.sup[comp], wl, params.q, cfg.j_max), vol, params.p, params.r, opt.lorentz).value;
    }
    out.windows.push_back(w.jt);
    out.high_per_window.push_back(hi);
    out.low_per_window.push_back(lo);
    out.a_high = std::max(out.a_high, hi);
    out.a_low = std::max(out.a_low, lo);
  }
  out.total = out.a_high + out.a_low;
  return out;
}

CoefficientBound coefficient_bound_check(const Trajectory& traj, const SpaceParams& params, WorkspaceOptions opt) {
  const WorkspaceNorm ws = workspace_norm(traj, params, opt);
  const auto& cfg = traj[0].config();
  CoefficientBound b;
  // one cell of value h carries at least c_r h |cell|^{1/p} in the level sum
  double c_r = 0.0;
  const bool dyadic = opt.lorentz.sum == LevelSum::dyadic;
  if (std::isinf(params.r))
    c_r = dyadic ? 2.0 : 1.0;
  else
    c_r = dyadic ? std::pow(std::exp2(params.r) - 1.0, 1.0 / params.r)
                 : std::pow(params.r * std::numbers::ln2, 1.0 / params.r);
  b.high_rhs = std::pow(4.0, params.m) * c_r * ws.a_high;
  b.low_rhs = std::pow(4.0, params.m_prime) * c_r * ws.a_low;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.time(i);
    const int jt = time_window(t);
    for (int comp = 0; comp < traj[i].components(); ++comp)
      for (int j = cfg.j_min; j <= cfg.j_max; ++j) {
        const double w = (j >= jt ? std::pow(t * std::exp2(2.0 * j), params.m)
                                  : std::pow(t * std::exp2(2.0 * j), params.m_prime)) *
                         std::exp2((cfg.dim / 2.0 - 1.0) * j);
        double mx = 0.0;
        for (int eps = 1; eps <= cfg.eps_count(); ++eps)
          for (double v : traj[i].block(comp, j, eps)) mx = std::max(mx, std::abs(v));
        (j >= jt ? b.high_lhs : b.low_lhs) = std::max(j >= jt ? b.high_lhs : b.low_lhs, w * mx);
      }
  }
  return b;
}

}  // namespace mwns
