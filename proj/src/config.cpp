#include "mwns/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "mwns/errors.hpp"

namespace mwns {

double GridShape::side() const { return std::ldexp(1.0, side_log2); }

std::size_t GridShape::size() const {
  const auto e = extents();
  return std::size_t(e[0]) * e[1] * e[2];
}

double GridShape::cell_volume() const { return std::pow(side() / points, dim); }

double AnalysisConfig::side() const { return std::ldexp(1.0, side_log2); }

void AnalysisConfig::validate() const {
  if (dim != 2 && dim != 3) throw ConfigError("grid.n", "dimension must be 2 or 3");
  if (grid_points < 4 || (grid_points & (grid_points - 1)) != 0)
    throw ConfigError("grid.grid_points", "must be a power of two >= 4");
  if (side_log2 < -20 || side_log2 > 20) throw ConfigError("grid.side", "side out of range");
  if (j_max < j_min) throw ConfigError("grid.j_max", "j_max < j_min");
  if (side_log2 + j_min < 2)
    throw ConfigError("grid.j_min", "level lattice 2^(log2 side + j_min) must have at least 4 points");
  if (side_log2 + j_max > 24) throw ConfigError("grid.j_max", "level lattice too large");
  // the top level's band reaches |xi| = (8 pi/3) 2^j_max, i.e. frequency index (4/3) M
  if (3 * static_cast<long>(grid_points) < 8 * static_cast<long>(lattice(j_max)))
    throw ResolutionError("grid of " + std::to_string(grid_points) + " points cannot resolve level " +
                          std::to_string(j_max) + " (need >= " +
                          std::to_string((8 * lattice(j_max) + 2) / 3) + ")");
}

int AnalysisConfig::product_grid_points() const {
  // products reach frequency index (8/3) M; pad to 3/2 N, or further if needed
  int p = grid_points + grid_points / 2;
  while (3 * p <= 16 * lattice(j_max)) p += grid_points / 2;
  return p;
}

bool in_exact_band(const AnalysisConfig& cfg, int m0, int m1, int m2) {
  // level j lives on M_j/3 <= max|m_i| <= 4 M_j/3, so levels j_min - 1 and
  // j_max + 1 are silent exactly between 2 M_{j_min}/3 and 2 M_{j_max}/3
  const int a = std::max({std::abs(m0), std::abs(m1), std::abs(m2)});
  return 3 * a >= 2 * cfg.lattice(cfg.j_min) && 3 * a <= 2 * cfg.lattice(cfg.j_max);
}

}  // namespace mwns
