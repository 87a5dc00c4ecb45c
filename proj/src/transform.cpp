#include "mwns/transform.hpp"

#include <cmath>
#include <numbers>

#include "mwns/errors.hpp"
#include "mwns/fft.hpp"

namespace mwns {

using std::numbers::pi;

double wavenumber(int i, int points, double side) { return 2.0 * pi * fft::signed_frequency(i, points) / side; }

void restrict_to_exact_band(Spectrum& s, const AnalysisConfig& cfg) {
  const auto e = s.shape.extents();
  for (int c = 0; c < s.components; ++c) {
    auto d = s.component(c);
    std::size_t i = 0;
    for (int a = 0; a < e[0]; ++a)
      for (int b = 0; b < e[1]; ++b)
        for (int z = 0; z < e[2]; ++z, ++i) {
          const int m2 = e[2] == 1 ? 0 : fft::signed_frequency(z, e[2]);
          if (!in_exact_band(cfg, fft::signed_frequency(a, e[0]), fft::signed_frequency(b, e[1]), m2)) d[i] = 0.0;
        }
  }
}

WaveletTransform::WaveletTransform(FilterBank bank, AnalysisConfig cfg) : bank_(std::move(bank)), cfg_(cfg) {
  cfg_.validate();
}

void WaveletTransform::check_grid(int points) const {
  if (3L * points < 8L * cfg_.lattice(cfg_.j_max))
    throw ResolutionError("grid of " + std::to_string(points) + " points cannot resolve level " +
                          std::to_string(cfg_.j_max));
}

const std::vector<WaveletTransform::LevelTaps>& WaveletTransform::taps(int points) const {
  std::lock_guard lock(mutex_);
  auto& slot = taps_[points];
  if (slot) return *slot;
  check_grid(points);
  auto tables = std::make_unique<std::vector<LevelTaps>>();
  for (int j = cfg_.j_min; j <= cfg_.j_max; ++j) {
    const int m = cfg_.lattice(j);
    LevelTaps lt;
    for (int i = 0; i < points; ++i) {
      const int f = fft::signed_frequency(i, points);
      const double w = 2.0 * pi * f / m;  // 2^{-j} xi_m
      for (int e = 0; e < 2; ++e) {
        const cplx v = bank_.factor(e, w);
        if (v != 0.0) lt[e].push_back({i, wrap(f, m), v});
      }
    }
    tables->push_back(std::move(lt));
  }
  slot = std::move(tables);
  return *slot;
}

namespace {

std::vector<int> lattice_dims(int dim, int m) { return std::vector<int>(dim, m); }

template <class TapVec>
const TapVec* axis_taps(const auto& lt, int dim, int axis, int eps, const TapVec& unit) {
  if (axis >= dim) return &unit;
  return &lt[(eps >> axis) & 1];
}

}  // namespace

Spectrum WaveletTransform::spectrum(const CoeffField& c, Select sel) const {
  if (!(c.config() == cfg_)) throw ConfigError("", "coefficient field does not match the transform configuration");
  const int points = sel.points == 0 ? cfg_.grid_points : sel.points;
  const auto& tables = taps(points);
  const GridShape shape{cfg_.dim, cfg_.side_log2, points};
  Spectrum out(shape, c.components());
  const auto ext = shape.extents();
  const std::vector<Tap> unit{{0, 0, 1.0}};
  const double inv_vol = std::pow(cfg_.side(), -cfg_.dim);

  for (int comp = 0; comp < c.components(); ++comp) {
    auto dst = out.component(comp);
    for (int j = cfg_.j_min; j <= cfg_.j_max; ++j) {
      if (sel.level != INT_MIN && j != sel.level) continue;
      const int m = cfg_.lattice(j);
      const int m2 = cfg_.dim == 3 ? m : 1;
      const auto dims = lattice_dims(cfg_.dim, m);
      const double scale = inv_vol * std::pow(2.0, -cfg_.dim * j / 2.0);
      const auto& lt = tables[j - cfg_.j_min];
      for (int eps = 1; eps <= cfg_.eps_count(); ++eps) {
        if (sel.eps != 0 && eps != sel.eps) continue;
        const auto src = c.block(comp, j, eps);
        bool any = false;
        for (double v : src) any = any || v != 0.0;
        if (!any) continue;
        cvec buf(src.begin(), src.end());
        fft::forward(buf, dims);
        const auto* t0 = axis_taps(lt, cfg_.dim, 0, eps, unit);
        const auto* t1 = axis_taps(lt, cfg_.dim, 1, eps, unit);
        const auto* t2 = axis_taps(lt, cfg_.dim, 2, eps, unit);
        for (const Tap& a : *t0)
          for (const Tap& b : *t1) {
            const cplx ab = scale * a.value * b.value;
            const std::size_t row = (std::size_t(a.index) * ext[1] + b.index) * ext[2];
            const std::size_t frow = (std::size_t(a.fold) * m + b.fold) * m2;
            for (const Tap& z : *t2) dst[row + z.index] += ab * z.value * buf[frow + z.fold];
          }
      }
    }
  }
  return out;
}

void WaveletTransform::level_coefficients(const Spectrum& s, int comp, int j, CoeffField& out) const {
  const int points = s.shape.points;
  const auto& tables = taps(points);
  const auto ext = s.shape.extents();
  const std::vector<Tap> unit{{0, 0, 1.0}};
  const int m = cfg_.lattice(j);
  const int m2 = cfg_.dim == 3 ? m : 1;
  const auto dims = lattice_dims(cfg_.dim, m);
  const double scale = std::pow(2.0, -cfg_.dim * j / 2.0);
  const auto& lt = tables[j - cfg_.j_min];
  const auto src = s.component(comp);
  for (int eps = 1; eps <= cfg_.eps_count(); ++eps) {
    cvec buf(std::size_t(m) * m * m2);
    const auto* t0 = axis_taps(lt, cfg_.dim, 0, eps, unit);
    const auto* t1 = axis_taps(lt, cfg_.dim, 1, eps, unit);
    const auto* t2 = axis_taps(lt, cfg_.dim, 2, eps, unit);
    for (const Tap& a : *t0)
      for (const Tap& b : *t1) {
        const cplx ab = std::conj(a.value * b.value);
        const std::size_t row = (std::size_t(a.index) * ext[1] + b.index) * ext[2];
        const std::size_t frow = (std::size_t(a.fold) * m + b.fold) * m2;
        for (const Tap& z : *t2) buf[frow + z.fold] += ab * std::conj(z.value) * src[row + z.index];
      }
    fft::backward(buf, dims);
    auto dst = out.block(comp, j, eps);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = scale * buf[i].real();
  }
}

CoeffField WaveletTransform::coefficients(const Spectrum& s, std::optional<double> time) const {
  if (s.shape.dim != cfg_.dim || s.shape.side_log2 != cfg_.side_log2)
    throw ConfigError("", "spectrum does not live on the configured torus");
  CoeffField out(cfg_, s.components, time);
  for (int comp = 0; comp < s.components; ++comp)
    for (int j = cfg_.j_min; j <= cfg_.j_max; ++j) level_coefficients(s, comp, j, out);
  return out;
}

SampledField WaveletTransform::to_grid(const Spectrum& s) const {
  SampledField f(s.shape, s.components);
  const auto e = s.shape.extents();
  const std::vector<int> dims(e.begin(), e.begin() + s.shape.dim);
  for (int c = 0; c < s.components; ++c) {
    auto src = s.component(c);
    cvec buf(src.begin(), src.end());
    fft::backward(buf, dims);
    auto dst = f.component(c);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = buf[i].real();
  }
  return f;
}

Spectrum WaveletTransform::from_grid(const SampledField& f) const {
  if (f.shape().dim != cfg_.dim || f.shape().side_log2 != cfg_.side_log2)
    throw ConfigError("", "sampled field does not live on the configured torus");
  Spectrum s(f.shape(), f.components());
  const auto e = f.shape().extents();
  const std::vector<int> dims(e.begin(), e.begin() + cfg_.dim);
  const double norm = 1.0 / static_cast<double>(f.shape().size());
  for (int c = 0; c < f.components(); ++c) {
    auto src = f.component(c);
    cvec buf(src.begin(), src.end());
    fft::forward(buf, dims);
    auto dst = s.component(c);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = norm * buf[i];
  }
  return s;
}

CoeffField WaveletTransform::analyze(const SampledField& f) const {
  check_grid(f.shape().points);
  return coefficients(from_grid(f));
}

std::complex<double> wavelet_hat(const FilterBank& bank, int dim, const WaveletIndex& idx,
                                 std::span<const double> xi) {
  const double s = std::ldexp(1.0, -idx.j);
  cplx v = std::pow(2.0, -dim * idx.j / 2.0);
  double phase = 0.0;
  for (int i = 0; i < dim; ++i) {
    v *= bank.factor((idx.eps >> i) & 1, s * xi[i]);
    phase += s * idx.k[i] * xi[i];
  }
  return v * std::polar(1.0, -phase);
}

}  // namespace mwns
