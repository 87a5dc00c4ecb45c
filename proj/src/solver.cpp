#include "mwns/solver.hpp"

#include <cmath>
#include <string>

#include "mwns/errors.hpp"
#include "mwns/paraproduct.hpp"
#include "mwns/semigroup.hpp"

namespace mwns {

namespace {

Trajectory difference(const Trajectory& a, const Trajectory& b) {
  Trajectory out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push(a[i] - b[i]);
  return out;
}

Trajectory conjugated(const WaveletTransform& tr, const Trajectory& traj, double gamma, double cap) {
  if (gamma == 0.0) return traj;
  return map_states(traj, [&](double t, const CoeffField& c) { return gevrey_flow(tr, c, t, gamma, +1, cap); });
}

Trajectory next_iterate(const WaveletTransform& tr, const Trajectory& heat, const Trajectory& u,
                        const QuadratureSpec& quad) {
  const DuhamelEngine eng(tr, u, u, {}, 0.0, quad);
  const Trajectory b = eng.evaluate_all();
  Trajectory out;
  out.set_initial(*heat.initial());
  for (std::size_t i = 0; i < heat.size(); ++i) out.push(heat[i] - b[i]);
  return out;
}

}  // namespace

SolveResult picard_solve(const WaveletTransform& tr, const CoeffField& u0, const SolveConfig& config) {
  const auto& cfg = tr.config();
  if (u0.components() != cfg.dim) throw ConfigError("u0", "initial data must be a vector field");
  if (!(config.smallness > 0) || !(config.contraction_tol > 0) || !(config.residual_tol > 0))
    throw ConfigError("solver", "smallness and tolerances must be positive");
  const double div0 = divergence_max(tr, u0);
  if (div0 > 1e-8) throw ConfigError("u0", "initial data is not divergence free (max |div| = " + std::to_string(div0) + ")");

  SolveResult res;
  SolveReport& rep = res.report;
  rep.initial_f_norm = f_norm(u0, config.params, config.workspace.lorentz).value;
  if (rep.initial_f_norm > config.smallness)
    throw ConfigError("solver.smallness", "f-norm of u0 exceeds the smallness bound");

  const double gamma = config.params.gamma;
  const Trajectory heat = heat_trajectory(tr, u0, config.mesh.times());
  Trajectory u = heat;
  const double scale = workspace_norm(conjugated(tr, u, gamma, config.cap), config.params, config.workspace).total;

  if (u0.max_abs() > 0.0) {
    double prev = 0.0;
    bool converged = false;
    for (int it = 1; it <= config.max_iter; ++it) {
      Trajectory next = next_iterate(tr, heat, u, config.quad);
      for (std::size_t i = 0; i < next.size(); ++i) {
        const double d = divergence_max(tr, next[i]);
        rep.divergence_max = std::max(rep.divergence_max, d);
        if (!(d <= config.divergence_tol)) throw DivergenceDrift("divergence " + std::to_string(d) + " at t = " + std::to_string(next.time(i)));
      }
      const Trajectory diff = difference(next, u);
      const double d = workspace_norm(conjugated(tr, diff, gamma, config.cap), config.params, config.workspace).total;
      rep.difference_norms.push_back(d);
      rep.difference_norms_plain.push_back(
          gamma == 0.0 ? d : workspace_norm(diff, config.params, config.workspace).total);
      rep.iterations = it;
      u = std::move(next);
      if (!std::isfinite(d)) throw NonContraction("difference norm is not finite at iteration " + std::to_string(it));
      if (it > 1 && prev > 0.0) {
        const double ratio = d / prev;
        rep.contraction_ratio = std::max(rep.contraction_ratio, ratio);
        if (ratio > config.ratio_limit)
          throw NonContraction("difference ratio " + std::to_string(ratio) + " at iteration " + std::to_string(it));
      }
      prev = d;
      if (d <= config.contraction_tol * scale) {
        converged = true;
        break;
      }
    }
    if (!converged) throw NonContraction("no convergence within " + std::to_string(config.max_iter) + " iterations");
  } else {
    rep.iterations = 1;
    rep.difference_norms = {0.0};
    rep.difference_norms_plain = {0.0};
  }

  rep.residual = residual(tr, u, u0, config.params, config.quad, config.workspace);
  rep.workspace_norm = workspace_norm(u, config.params, config.workspace).total;
  rep.gevrey_norm = gamma == 0.0 ? rep.workspace_norm
                                 : gevrey_diagnostic(tr, u, config.params, gamma, config.workspace, config.cap).norm;
  res.trajectory = std::move(u);
  return res;
}

double residual(const WaveletTransform& tr, const Trajectory& traj, const CoeffField& u0, const SpaceParams& params,
                QuadratureSpec quad, WorkspaceOptions opt) {
  const Trajectory heat = heat_trajectory(tr, u0, traj.times());
  const DuhamelEngine eng(tr, traj, traj, {}, 0.0, quad);
  Trajectory r;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    CoeffField s = traj[i] - heat[i];
    s += eng.evaluate(traj.time(i));
    s.set_time(traj.time(i));
    r.push(std::move(s));
  }
  return workspace_norm(r, params, opt).total;
}

GevreyReport gevrey_diagnostic(const WaveletTransform& tr, const Trajectory& traj, const SpaceParams& params,
                               double gamma, WorkspaceOptions opt, double cap) {
  const auto& cfg = tr.config();
  const Trajectory g = conjugated(tr, traj, gamma, cap);
  GevreyReport rep;
  rep.norm = workspace_norm(g, params, opt).total;
  rep.profile.assign(cfg.level_count(), std::vector<double>(g.size(), 0.0));
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double t = g.time(i);
    for (int j = cfg.j_min; j <= cfg.j_max; ++j) {
      double mx = 0.0;
      for (int c = 0; c < g[i].components(); ++c)
        for (int e = 1; e < cfg.eps_count() + 1; ++e)
          for (double v : g[i].block(c, j, e)) mx = std::max(mx, std::abs(v));
      rep.profile[j - cfg.j_min][i] = std::pow(t * std::exp2(2.0 * j), params.m) * mx;
    }
  }
  return rep;
}

}  // namespace mwns
