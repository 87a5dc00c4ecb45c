#pragma once

#include <optional>

#include "mwns/fields.hpp"
#include "mwns/transform.hpp"

namespace mwns {

// Level interactions of a product Q_j u Q_j' v.
enum class FlowKind { low_high, diagonal, high_low };

// j - j' <= -3 low_high, |j - j'| <= 2 diagonal, j - j' >= 3 high_low.
FlowKind classify_flow(int j, int j_prime);
const char* flow_name(FlowKind f);

// Q_j f on the grid of `points` samples (0 = config grid); eps = 0 keeps all eps.
SampledField project_Q(const WaveletTransform& tr, const CoeffField& c, int j, int eps = 0, int points = 0);

// u v split by flow, on the padded product grid. The three parts add up to
// the pointwise product of the synthesized fields. Scalar inputs.
struct ProductSplit {
  SampledField low_high, diagonal, high_low;
  int points = 0;
};
ProductSplit decompose_product(const WaveletTransform& tr, const CoeffField& u, const CoeffField& v);

// Leray projection of a vector field, applied spectrally on its own grid.
SampledField leray_project(const SampledField& f);

// Max over the grid of |div f| for a vector field.
double divergence_max(const SampledField& f);
double divergence_max(const WaveletTransform& tr, const CoeffField& c);

}  // namespace mwns
