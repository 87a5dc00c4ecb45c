#pragma once

#include <vector>

#include "mwns/cell_grid.hpp"
#include "mwns/fields.hpp"
#include "mwns/space_params.hpp"
#include "mwns/trajectory.hpp"

namespace mwns {

// How the level sum over u is formed.
//
// dyadic: sum_u 2^{ur} |{g > 2^u}|^{r/p} over integer u, as written.
// offset_averaged: the same sum averaged over all offsets u -> u + tau,
//   tau in [0,1), which equals (1/ln 2) int lambda^{r-1} |{g > lambda}|^{r/p} d lambda.
//   For r = infinity it is sup_lambda lambda |{g > lambda}|^{1/p}.
//
// Both are comparable within fixed constants; only offset_averaged is exactly
// homogeneous and invariant under u(x) -> 2^i u(2^i x) for every p.
enum class LevelSum { offset_averaged, dyadic };

struct LorentzOptions {
  LevelSum sum = LevelSum::offset_averaged;
};

struct LorentzValue {
  double value = 0.0;  // (level sum)^{1/r}
  int u_lo = 0;        // u-range that carries the sum; below u_lo it is a geometric tail
  int u_hi = 0;
};

double distribution_measure(const CellGrid& g, double lambda);

LorentzValue lorentz_quasi_norm(const CellGrid& g, double p, double r, LorentzOptions opt = {});

// Triebel-Lizorkin-Lorentz norm: the Lorentz functional of
// (sum_j 2^{jsq} f_j^q)^{1/q}. Vector fields add the component norms.
LorentzValue f_norm(const CoeffField& c, const SpaceParams& params, LorentzOptions opt = {});

// Besov-Lorentz norm (sum_j 2^{jqs} |f_j|_{L^{p,r}}^q)^{1/q}.
double besov_lorentz_norm(const CoeffField& c, const SpaceParams& params, LorentzOptions opt = {});

// Exact dilation u -> 2^i u(2^i .): torus side / 2^i, levels + i, values 2^{i(1 - n/2)},
// time / 4^i. With a level window, coefficients that leave it raise RangeError.
CoeffField scale_map(const CoeffField& c, int i);
CoeffField scale_map(const CoeffField& c, int i, int window_j_min, int window_j_max);
Trajectory scale_map(const Trajectory& traj, int i);

struct WorkspaceNorm {
  double a_high = 0.0;
  double a_low = 0.0;
  double total = 0.0;  // a_high + a_low
  std::vector<int> windows;
  std::vector<double> high_per_window, low_per_window;
};

struct WorkspaceOptions {
  LorentzOptions lorentz;
  int min_samples_per_window = 4;
};

// The single-norm work space: sup over covered time windows of the Lorentz
// functionals of the high (j >= jt) and low (j < jt) weighted window sups,
// each raised to 1/r.
WorkspaceNorm workspace_norm(const Trajectory& traj, const SpaceParams& params, WorkspaceOptions opt = {});

// Pointwise coefficient bounds implied by the work-space norms.
struct CoefficientBound {
  double high_lhs = 0.0;  // sup over j >= jt of (t 2^{2j})^m 2^{(n/2-1)j} |f^eps_{j,k}(t)|
  double high_rhs = 0.0;  // C_m A_high
  double low_lhs = 0.0;   // same with m' over j < jt
  double low_rhs = 0.0;
  bool holds() const { return high_lhs <= high_rhs * (1 + 1e-12) && low_lhs <= low_rhs * (1 + 1e-12); }
};
CoefficientBound coefficient_bound_check(const Trajectory& traj, const SpaceParams& params,
                                         WorkspaceOptions opt = {});

}  // namespace mwns
