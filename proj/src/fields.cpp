#include "mwns/fields.hpp"

#include <algorithm>
#include <cmath>

#include "mwns/errors.hpp"

namespace mwns {

SampledField::SampledField(GridShape shape, int components)
    : shape_(shape), components_(components), values_(shape.size() * components, 0.0) {}

std::span<double> SampledField::component(int c) {
  const std::size_t n = shape_.size();
  return {values_.data() + c * n, n};
}

std::span<const double> SampledField::component(int c) const {
  const std::size_t n = shape_.size();
  return {values_.data() + c * n, n};
}

CoeffField::CoeffField(AnalysisConfig cfg, int components, std::optional<double> time)
    : cfg_(cfg), components_(components), time_(time) {
  if (components < 1) throw ConfigError("components", "need at least one component");
  std::size_t off = 0;
  for (int j = cfg.j_min; j <= cfg.j_max; ++j) {
    level_offset_.push_back(off);
    off += level_size(j) * cfg.eps_count();
  }
  per_component_ = off;
  data_.assign(per_component_ * components, 0.0);
}

std::size_t CoeffField::level_size(int j) const {
  std::size_t m = cfg_.lattice(j);
  return cfg_.dim == 3 ? m * m * m : m * m;
}

std::size_t CoeffField::offset(int c, int j, int eps) const {
  if (c < 0 || c >= components_) throw RangeError("component " + std::to_string(c) + " out of range");
  if (j < cfg_.j_min || j > cfg_.j_max)
    throw RangeError("level " + std::to_string(j) + " outside [" + std::to_string(cfg_.j_min) + ", " +
                     std::to_string(cfg_.j_max) + "]");
  if (eps < 1 || eps > cfg_.eps_count()) throw RangeError("eps " + std::to_string(eps) + " out of range");
  return c * per_component_ + level_offset_[j - cfg_.j_min] + (eps - 1) * level_size(j);
}

std::span<double> CoeffField::block(int c, int j, int eps) {
  return {data_.data() + offset(c, j, eps), level_size(j)};
}

std::span<const double> CoeffField::block(int c, int j, int eps) const {
  return {data_.data() + offset(c, j, eps), level_size(j)};
}

double& CoeffField::at(int c, const WaveletIndex& idx) {
  const int m = cfg_.lattice(idx.j);
  std::size_t flat = std::size_t(wrap(idx.k[0], m)) * m + wrap(idx.k[1], m);
  if (cfg_.dim == 3) flat = flat * m + wrap(idx.k[2], m);
  return block(c, idx.j, idx.eps)[flat];
}

double CoeffField::at(int c, const WaveletIndex& idx) const { return const_cast<CoeffField*>(this)->at(c, idx); }

bool CoeffField::compatible(const CoeffField& o) const {
  return cfg_ == o.cfg_ && components_ == o.components_;
}

CoeffField& CoeffField::operator+=(const CoeffField& o) {
  if (!compatible(o)) throw ConfigError("", "coefficient fields have different layouts");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

CoeffField& CoeffField::operator-=(const CoeffField& o) {
  if (!compatible(o)) throw ConfigError("", "coefficient fields have different layouts");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

CoeffField& CoeffField::operator*=(double a) {
  for (double& v : data_) v *= a;
  return *this;
}

double CoeffField::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

CoeffField CoeffField::relabeled(const AnalysisConfig& cfg) const {
  CoeffField out = *this;
  if (cfg.dim != cfg_.dim || cfg.level_count() != cfg_.level_count() ||
      cfg.lattice(cfg.j_min) != cfg_.lattice(cfg_.j_min))
    throw ConfigError("", "relabeled configuration changes the coefficient layout");
  out.cfg_ = cfg;
  return out;
}

CoeffField operator-(CoeffField a, const CoeffField& b) { return a -= b; }
CoeffField operator+(CoeffField a, const CoeffField& b) { return a += b; }

}  // namespace mwns
