#pragma once

#include <vector>

#include "mwns/fields.hpp"
#include "mwns/transform.hpp"

namespace mwns {

// a(k) = < e^{(t-s) Delta} d_l d_l1 d_l2 (-Delta)^{-1} (G_s^{-1} phi' G_s^{-1} phi''), G_t phi_{j,k} >
// with G_t = exp(t^gamma (-Delta)^gamma), for every k of level j and one eps.
// phi' and phi'' are single wavelets. Evaluated exactly in Fourier space.
std::vector<double> kernel_coefficients(const WaveletTransform& tr, const WaveletIndex& first,
                                        const WaveletIndex& second, int j, int eps, double t, double s,
                                        double gamma, int l, int l1, int l2);

enum class KernelRegime { b1, b2 };  // b1: j' > j-5, |j'-j''| <= 2;  b2: |j-j'| <= 2, j'' <= j'-3

struct KernelProbe {
  KernelRegime regime = KernelRegime::b1;
  int case_tag = 1;  // 1: both distances <= 2, 2: only the inner one > 2, 3: only the outer one > 2, 4: both
  WaveletIndex out, first, second;
  double t = 0.0, s = 0.0, gamma = 0.0, N = 0.0;
  double inner_dist = 0.0;  // |2^{j''-j'} k' - k''|
  double outer_dist = 0.0;  // |k - 2^{j-j'} k'|
  double measured = 0.0, bound = 0.0, ratio = 0.0;
};

struct ProbeSpec {
  int j = 4;             // output level
  double tau_t = 8.0;    // t 2^{2j}
  double gamma = 0.05;   // 0 < gamma <= 1/2
  double N = 6.0;        // default 2n + 2
  int l = 0, l1 = 0, l2 = 1;
  int random_probes = 24;
  unsigned long long seed = 1;
  // distance sweep: shells D <= |k|_inf < 2D around the coincident position,
  // at (t - s) 2^{2j} = sweep_gap. The power law only emerges past the
  // oscillating near field, so the shells sit in the tail.
  std::vector<int> shells{16, 32, 64};
  double sweep_gap = 0.5;
};

// Configuration for kernel probes derived from `base`: same dimension and
// level window, torus enlarged until the top lattice holds `min_lattice`
// points per axis, finest grid that resolves it.
AnalysisConfig kernel_probe_config(const AnalysisConfig& base, int min_lattice);

struct ProbeSummary {
  std::vector<KernelProbe> probes;
  double fitted_c = 0.0;        // from the (t - s) sweep
  double c_tilde = 0.0;         // top band frequency^{2 gamma}
  double distance_slope = 0.0;  // log-log slope of the shell maxima of |a|
  std::vector<double> sweep_distance, sweep_envelope;
  double max_ratio_b1 = 0.0, max_ratio_b2 = 0.0;
};

// Throws ConfigError unless 0 < gamma <= 1/2, ResolutionError when the level
// lattice is too small for the distance sweep.
ProbeSummary kernel_bound_check(const WaveletTransform& tr, const ProbeSpec& spec);

}  // namespace mwns
