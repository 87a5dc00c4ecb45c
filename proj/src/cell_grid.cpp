#include "mwns/cell_grid.hpp"

#include <cmath>

#include "mwns/errors.hpp"

namespace mwns {

CellGrid::CellGrid(int dim_, int side_log2_, int level_) : dim(dim_), side_log2(side_log2_), level(level_) {
  const std::size_t m = cells_per_axis();
  values.assign(dim == 3 ? m * m * m : m * m, 0.0);
}

double CellGrid::cell_volume() const { return std::ldexp(1.0, -dim * level); }

CellGrid CellGrid::refined(int finer) const {
  if (finer < level) throw RangeError("cannot refine to a coarser level");
  if (finer == level) return *this;
  CellGrid out(dim, side_log2, finer);
  const int shift = finer - level;
  const int mf = out.cells_per_axis(), mc = cells_per_axis();
  const int m2f = dim == 3 ? mf : 1, m2c = dim == 3 ? mc : 1;
  std::size_t i = 0;
  for (int a = 0; a < mf; ++a)
    for (int b = 0; b < mf; ++b) {
      const std::size_t row = (std::size_t(a >> shift) * mc + (b >> shift)) * m2c;
      for (int z = 0; z < m2f; ++z, ++i) out.values[i] = values[row + (z >> shift)];
    }
  return out;
}

CellGrid level_majorant(const CoeffField& c, int comp, int j) {
  const auto& cfg = c.config();
  CellGrid g(cfg.dim, cfg.side_log2, j);
  const double w = std::pow(2.0, cfg.dim * j / 2.0);
  for (int eps = 1; eps <= cfg.eps_count(); ++eps) {
    const auto b = c.block(comp, j, eps);
    for (std::size_t i = 0; i < b.size(); ++i) g.values[i] += std::abs(b[i]);
  }
  for (double& v : g.values) v *= w;
  return g;
}

}  // namespace mwns
