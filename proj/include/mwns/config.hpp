#pragma once

#include <array>
#include <cstddef>

namespace mwns {

// Shape of a sampled periodic grid on the torus of side 2^side_log2.
// Two-dimensional grids carry extent 1 on the third axis.
struct GridShape {
  int dim = 2;
  int side_log2 = 2;
  int points = 256;

  double side() const;
  std::array<int, 3> extents() const { return {points, points, dim == 3 ? points : 1}; }
  std::size_t size() const;
  double cell_volume() const;  // (side/points)^dim
  bool operator==(const GridShape&) const = default;
};

// Analysis configuration: torus, sampling grid and the stored level window.
// Level j has a lattice of 2^(side_log2 + j) points per axis.
struct AnalysisConfig {
  int dim = 2;
  int side_log2 = 2;
  int grid_points = 256;
  int j_min = 0;
  int j_max = 4;

  double side() const;
  int lattice(int j) const { return 1 << (side_log2 + j); }
  int level_count() const { return j_max - j_min + 1; }
  int eps_count() const { return (1 << dim) - 1; }
  GridShape grid() const { return {dim, side_log2, grid_points}; }

  // Throws ConfigError or ResolutionError.
  void validate() const;
  // Smallest padded grid size that holds products of two band-limited fields.
  int product_grid_points() const;

  AnalysisConfig doubled() const { return {dim, side_log2, 2 * grid_points, j_min, j_max + 1}; }
  bool operator==(const AnalysisConfig&) const = default;
};

// True when frequency index m (per axis, signed) lies in the band that the
// level window reproduces exactly.
bool in_exact_band(const AnalysisConfig& cfg, int m0, int m1, int m2);

}  // namespace mwns
