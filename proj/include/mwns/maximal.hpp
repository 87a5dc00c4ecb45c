#pragma once

#include <array>
#include <vector>

#include "mwns/cell_grid.hpp"
#include "mwns/fields.hpp"
#include "mwns/lorentz.hpp"

namespace mwns {

// Cubes entering the maximal operator. Both use dyadic side lengths.
// aligned: the dyadic cubes of the torus (nested pyramid).
// translated: every periodic cube of dyadic side whose corner lies on the
//   grid's cell lattice. Dominated by the ball maximal function, and the only
//   one of the two whose g-weight constant does not grow with resolution.
enum class CubeFamily { aligned, translated };

CellGrid hl_maximal(const CellGrid& g, CubeFamily family = CubeFamily::aligned);

// g^k_{j,j'}: 2^{n j'/2} sum_{eps',k'} |f^{eps'}_{j',k'}| (1+|k'-2^{j'-j}k|)^{-N} for j >= j',
// and (1+|k-2^{j-j'}k'|)^{-N} for j < j'. Distances use the torus metric.
double g_weight(const CoeffField& c, int comp, int j, int j_prime, std::array<int, 3> k, double N);

struct GWeightReport {
  double ratio_at_or_above = 0.0;  // max g / min_{Q_{j,k}} M(f_{j'}), j >= j'
  double ratio_below = 0.0;        // max g / (2^{n(j'-j)} min_{Q_{j,k}} M(f_{j'})), j < j'
  double max_ratio() const { return std::max(ratio_at_or_above, ratio_below); }
};

// Evaluates both sides on every cell for every level pair of one component.
GWeightReport g_weight_check(const CoeffField& c, int comp, double N, CubeFamily family);

// A constant valid for every field and resolution with the translated family:
// sum over d in Z^n of (2(|d|_inf + 1))^n (1 + dist(d, [0,1]^n))^{-N}.
double g_weight_constant_bound(int dim, double N);

// Lorentz functional of (sum_j M(f_j)^q)^{1/q} over that of (sum_j f_j^q)^{1/q},
// evaluated on the finest level present in the family.
double fefferman_stein_ratio(const std::vector<CellGrid>& family, double p, double q, double r,
                             CubeFamily cubes = CubeFamily::aligned, LorentzOptions opt = {});

}  // namespace mwns
