#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mwns/config.hpp"

namespace mwns {

// eps is a bit mask in 1 .. 2^dim - 1; bit i selects the wavelet factor on axis i.
struct WaveletIndex {
  int eps = 1;
  int j = 0;
  std::array<int, 3> k{0, 0, 0};
  bool operator==(const WaveletIndex&) const = default;
};

// Point values on a periodic grid, one block per component, row-major.
class SampledField {
 public:
  SampledField() = default;
  SampledField(GridShape shape, int components = 1);

  const GridShape& shape() const { return shape_; }
  int components() const { return components_; }
  std::span<double> component(int c);
  std::span<const double> component(int c) const;
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

 private:
  GridShape shape_;
  int components_ = 0;
  std::vector<double> values_;
};

// Real wavelet coefficients on the stored level window. Storage order is
// component, level, eps, then the level lattice in row-major order.
class CoeffField {
 public:
  CoeffField() = default;
  explicit CoeffField(AnalysisConfig cfg, int components = 1, std::optional<double> time = {});

  const AnalysisConfig& config() const { return cfg_; }
  int components() const { return components_; }
  std::optional<double> time() const { return time_; }
  void set_time(std::optional<double> t) { time_ = t; }

  std::size_t level_size(int j) const;  // lattice points at level j
  std::span<double> block(int c, int j, int eps);
  std::span<const double> block(int c, int j, int eps) const;
  double& at(int c, const WaveletIndex& idx);
  double at(int c, const WaveletIndex& idx) const;

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }
  bool compatible(const CoeffField& other) const;

  CoeffField& operator+=(const CoeffField& o);
  CoeffField& operator-=(const CoeffField& o);
  CoeffField& operator*=(double a);
  double max_abs() const;

  // Reinterpret with a new configuration of identical layout (same lattices).
  CoeffField relabeled(const AnalysisConfig& cfg) const;

 private:
  std::size_t offset(int c, int j, int eps) const;

  AnalysisConfig cfg_;
  int components_ = 0;
  std::optional<double> time_;
  std::vector<std::size_t> level_offset_;  // per level, within one component
  std::size_t per_component_ = 0;
  std::vector<double> data_;
};

CoeffField operator-(CoeffField a, const CoeffField& b);
CoeffField operator+(CoeffField a, const CoeffField& b);

// Level-j lattice wrap of a signed index.
inline int wrap(int k, int m) {
  const int r = k % m;
  return r < 0 ? r + m : r;
}

}  // namespace mwns
