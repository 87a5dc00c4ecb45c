#pragma once

#include <vector>

#include "mwns/duhamel.hpp"
#include "mwns/lorentz.hpp"
#include "mwns/space_params.hpp"
#include "mwns/trajectory.hpp"

namespace mwns {

struct SolveConfig {
  SpaceParams params;
  double smallness = 1e-2;        // f_norm(u0) must not exceed this
  int max_iter = 15;
  double contraction_tol = 1e-10; // on difference norms relative to the norm of the first iterate
  double residual_tol = 1e-8;
  double divergence_tol = 1e-6;
  double ratio_limit = 0.9;       // successive difference ratio above this is non-contraction
  TimeMesh mesh;
  QuadratureSpec quad;
  WorkspaceOptions workspace;
  double cap = 700.0;
};

struct SolveReport {
  int iterations = 0;
  std::vector<double> difference_norms;        // contraction variable (G_t u when gamma > 0)
  std::vector<double> difference_norms_plain;  // plain u
  double contraction_ratio = 0.0;              // largest successive ratio observed
  double residual = 0.0;
  double workspace_norm = 0.0;
  double gevrey_norm = 0.0;
  double divergence_max = 0.0;
  double initial_f_norm = 0.0;
};

struct SolveResult {
  Trajectory trajectory;
  SolveReport report;
};

// u^0 = e^{t Delta} u0, u^{m+1} = e^{t Delta} u0 - B(u^m, u^m) on the mesh of `config`.
// Throws ConfigError for a divergent or too large u0, NonContraction when the
// difference norms stop decreasing geometrically, DivergenceDrift when an
// iterate leaves the divergence-free class.
SolveResult picard_solve(const WaveletTransform& tr, const CoeffField& u0, const SolveConfig& config);

// Work-space norm of u - e^{t Delta} u0 + B(u, u).
double residual(const WaveletTransform& tr, const Trajectory& traj, const CoeffField& u0,
                const SpaceParams& params, QuadratureSpec quad = {}, WorkspaceOptions opt = {});

struct GevreyReport {
  double norm = 0.0;  // work-space norm of exp(t^gamma (-Delta)^gamma) u
  // profile[j - j_min][i]: max_k (t_i 2^{2j})^m |g_{j,k}(t_i)| over eps and components
  std::vector<std::vector<double>> profile;
};

// Throws GevreyOverflow when the multiplier would leave double range.
GevreyReport gevrey_diagnostic(const WaveletTransform& tr, const Trajectory& traj, const SpaceParams& params,
                               double gamma, WorkspaceOptions opt = {}, double cap = 700.0);

}  // namespace mwns
