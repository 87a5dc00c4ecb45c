#pragma once

#include <vector>

#include "mwns/fields.hpp"

namespace mwns {

// Piecewise-constant function on the dyadic cells of level `level` of the
// torus of side 2^side_log2: 2^(side_log2 + level) cells per axis, row-major.
struct CellGrid {
  int dim = 2;
  int side_log2 = 2;
  int level = 0;
  std::vector<double> values;

  CellGrid() = default;
  CellGrid(int dim, int side_log2, int level);

  int cells_per_axis() const { return 1 << (side_log2 + level); }
  double cell_volume() const;
  // Same function on the finer level (values replicated).
  CellGrid refined(int finer_level) const;
};

// f_j(x) = 2^{n j/2} sum_{eps,k} |f^eps_{j,k}| chi(2^j x - k) for one component.
CellGrid level_majorant(const CoeffField& c, int comp, int j);

}  // namespace mwns
