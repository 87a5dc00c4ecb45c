#pragma once

#include <cstdint>
#include <vector>

#include "mwns/fields.hpp"
#include "mwns/space_params.hpp"
#include "mwns/transform.hpp"

namespace mwns {

// Gaussian coefficients on levels [j_lo, j_hi] (defaults: the whole window);
// each coefficient is kept with probability `density`.
CoeffField random_field(const AnalysisConfig& cfg, int comps, std::uint64_t seed, double density = 1.0,
                        int j_lo = INT32_MIN, int j_hi = INT32_MAX);

CoeffField single_wavelet(const AnalysisConfig& cfg, const WaveletIndex& idx, int comps = 1, int comp = 0);

// Divergence-free vector field: the perpendicular gradient of a stream
// function in 2D, the curl of a vector potential in 3D. The potential is
// given by its wavelet coefficients (scalar in 2D, n components in 3D) and must
// stay off the boundary levels so the result is exactly representable.
CoeffField divergence_free(const WaveletTransform& tr, const CoeffField& potential);

// Two-wavelet potential at neighbouring interior levels.
CoeffField two_wavelet_potential(const AnalysisConfig& cfg);
// Random potential on the interior levels.
CoeffField random_potential(const AnalysisConfig& cfg, std::uint64_t seed, double density = 0.25);

// c scaled so that f_norm(c) = target (unchanged when c = 0).
CoeffField normalized(const CoeffField& c, const SpaceParams& params, double target);

}  // namespace mwns
