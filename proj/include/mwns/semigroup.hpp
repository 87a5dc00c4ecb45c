#pragma once

#include <vector>

#include "mwns/aligned.hpp"
#include "mwns/lorentz.hpp"
#include "mwns/transform.hpp"
#include "mwns/trajectory.hpp"

namespace mwns {

// |xi_m|^2 for every mode of the grid, FFT order. Cached per shape.
const rvec& squared_wavenumbers(const GridShape& shape);

// s <- e^{t Delta} s
void apply_heat(Spectrum& s, double t);

// s <- exp(sign t^gamma (-Delta)^gamma) s. gamma = 0 is the identity.
// For sign > 0 the largest exponent over the analyzed band of `cfg` must stay
// below `cap`, otherwise GevreyOverflow.
void apply_gevrey(Spectrum& s, const AnalysisConfig& cfg, double t, double gamma, int sign = +1, double cap = 700.0);

// Largest Gevrey exponent t^gamma |xi|^{2 gamma} over the analyzed band.
double gevrey_exponent(const AnalysisConfig& cfg, double t, double gamma);

CoeffField heat_flow(const WaveletTransform& tr, const CoeffField& c, double t);
CoeffField gevrey_flow(const WaveletTransform& tr, const CoeffField& c, double t, double gamma, int sign = +1,
                       double cap = 700.0);

// States exp(t^gamma (-Delta)^gamma) e^{t Delta} c at each time, initial state c.
Trajectory heat_trajectory(const WaveletTransform& tr, const CoeffField& c, const std::vector<double>& times,
                           double gamma = 0.0, double cap = 700.0);

// Times t0 * ratio^i, i = 0..count-1.
std::vector<double> geometric_times(double t0, double t1, int count);

struct DecayOptions {
  std::vector<double> times;  // sample set
  double N = 6.0;             // spatial decay order in the majorant
  double gamma = 0.0;
  double cap = 700.0;
};

struct DecayReport {
  // log of max_k |g_{j,k}(t)| / majorant is fitted against t 2^{2j} over the
  // levels where the input has content (high branch t 2^{2j} >= 1)
  double fitted_c_tilde = 0.0;
  double r_squared = 0.0;
  int fit_points = 0;
  // max_{j,k,t} |g_{j,k}(t)| e^{c t 2^{2j}} / majorant with c = c_tilde_used
  double c_tilde_used = 0.0;
  double max_ratio_high = 0.0;
  double max_ratio_low = 0.0;  // t 2^{2j} < 1, no exponential factor
  // largest |g_{j,k}(t)| on levels two or more away from all input content
  double max_leak = 0.0;
};

DecayReport decay_check(const WaveletTransform& tr, const CoeffField& f, const DecayOptions& opt);

struct EmbeddingReport {
  double workspace = 0.0;
  double f_norm = 0.0;
  double ratio = 0.0;
};

// Work-space norm of the heat (or Gevrey-heat) trajectory of f over its f-norm.
EmbeddingReport embedding_check(const WaveletTransform& tr, const CoeffField& f, const SpaceParams& params,
                                const TimeMesh& mesh, double gamma = 0.0, WorkspaceOptions opt = {});

}  // namespace mwns
