#include "mwns/paraproduct.hpp"

#include <cmath>

#include "mwns/errors.hpp"
#include "mwns/fft.hpp"
#include "mwns/kernels.hpp"

namespace mwns {

FlowKind classify_flow(int j, int jp) {
  const int d = j - jp;
  if (d <= -3) return FlowKind::low_high;
  if (d >= 3) return FlowKind::high_low;
  return FlowKind::diagonal;
}

const char* flow_name(FlowKind f) {
  switch (f) {
    case FlowKind::low_high: return "low_high";
    case FlowKind::diagonal: return "diagonal";
    case FlowKind::high_low: return "high_low";
  }
  return "?";
}

SampledField project_Q(const WaveletTransform& tr, const CoeffField& c, int j, int eps, int points) {
  const auto& cfg = tr.config();
  if (j < cfg.j_min || j > cfg.j_max) throw RangeError("level " + std::to_string(j) + " outside the stored window");
  return tr.to_grid(tr.spectrum(c, {points, j, eps}));
}

ProductSplit decompose_product(const WaveletTransform& tr, const CoeffField& u, const CoeffField& v) {
  const auto& cfg = tr.config();
  if (u.components() != 1 || v.components() != 1) throw ConfigError("", "decompose_product takes scalar fields");
  const int p = cfg.grid_points + cfg.grid_points / 2;
  // the product reaches frequency index (8/3) M_{j_max}, which must stay below p/2
  if (3L * p <= 16L * cfg.lattice(cfg.j_max))
    throw ResolutionError("product of level " + std::to_string(cfg.j_max) + " fields exceeds the padded grid of " +
                          std::to_string(p) + " points");
  std::vector<SampledField> qu, qv;
  for (int j = cfg.j_min; j <= cfg.j_max; ++j) {
    qu.push_back(project_Q(tr, u, j, 0, p));
    qv.push_back(project_Q(tr, v, j, 0, p));
  }
  const GridShape shape{cfg.dim, cfg.side_log2, p};
  ProductSplit out{SampledField(shape), SampledField(shape), SampledField(shape), p};
  const std::size_t n = shape.size();
  for (int j = cfg.j_min; j <= cfg.j_max; ++j)
    for (int jp = cfg.j_min; jp <= cfg.j_max; ++jp) {
      SampledField* dst = nullptr;
      switch (classify_flow(j, jp)) {
        case FlowKind::low_high: dst = &out.low_high; break;
        case FlowKind::diagonal: dst = &out.diagonal; break;
        case FlowKind::high_low: dst = &out.high_low; break;
      }
      kernels::active().multiply_add(dst->values().data(), qu[j - cfg.j_min].values().data(),
                                     qv[jp - cfg.j_min].values().data(), n);
    }
  return out;
}

namespace {

struct AxisXi {
  std::array<std::vector<double>, 3> xi;
};

AxisXi axis_wavenumbers(const GridShape& s) {
  AxisXi a;
  const auto e = s.extents();
  for (int d = 0; d < 3; ++d) {
    a.xi[d].resize(e[d]);
    for (int i = 0; i < e[d]; ++i) {
      // the unpaired Nyquist mode carries no derivative
      const bool nyquist = e[d] % 2 == 0 && i == e[d] / 2;
      a.xi[d][i] = (e[d] == 1 || nyquist) ? 0.0 : wavenumber(i, e[d], s.side());
    }
  }
  return a;
}

std::vector<cplx*> component_ptrs(Spectrum& s) {
  std::vector<cplx*> p;
  for (int c = 0; c < s.components; ++c) p.push_back(s.component(c).data());
  return p;
}

Spectrum grid_spectrum(const SampledField& f) {
  Spectrum s(f.shape(), f.components());
  const auto e = f.shape().extents();
  const std::vector<int> dims(e.begin(), e.begin() + f.shape().dim);
  for (int c = 0; c < f.components(); ++c) {
    auto src = f.component(c);
    cvec buf(src.begin(), src.end());
    fft::forward(buf, dims);
    const double norm = 1.0 / double(src.size());
    auto dst = s.component(c);
    for (std::size_t i = 0; i < buf.size(); ++i) dst[i] = norm * buf[i];
  }
  return s;
}

SampledField grid_values(const Spectrum& s) {
  SampledField f(s.shape, s.components);
  const auto e = s.shape.extents();
  const std::vector<int> dims(e.begin(), e.begin() + s.shape.dim);
  for (int c = 0; c < s.components; ++c) {
    auto src = s.component(c);
    cvec buf(src.begin(), src.end());
    fft::backward(buf, dims);
    auto dst = f.component(c);
    for (std::size_t i = 0; i < buf.size(); ++i) dst[i] = buf[i].real();
  }
  return f;
}

double spectral_divergence_max(const Spectrum& s) {
  const AxisXi ax = axis_wavenumbers(s.shape);
  const auto e = s.shape.extents();
  Spectrum div(s.shape, 1);
  std::size_t i = 0;
  for (int a = 0; a < e[0]; ++a)
    for (int b = 0; b < e[1]; ++b)
      for (int z = 0; z < e[2]; ++z, ++i) {
        const double xi[3] = {ax.xi[0][a], ax.xi[1][b], ax.xi[2][z]};
        cplx acc = 0.0;
        for (int c = 0; c < s.components; ++c) acc += cplx(0.0, xi[c]) * s.component(c)[i];
        div.data[i] = acc;
      }
  double mx = 0.0;
  const SampledField g = grid_values(div);
  for (double v : g.values()) mx = std::max(mx, std::abs(v));
  return mx;
}

}  // namespace

SampledField leray_project(const SampledField& f) {
  if (f.components() != f.shape().dim) throw ConfigError("", "Leray projection needs a vector field");
  Spectrum s = grid_spectrum(f);
  const AxisXi ax = axis_wavenumbers(f.shape());
  const auto e = f.shape().extents();
  auto comp = component_ptrs(s);
  const int n = f.shape().dim;
  std::size_t i = 0;
  for (int a = 0; a < e[0]; ++a)
    for (int b = 0; b < e[1]; ++b)
      for (int z = 0; z < e[2]; ++z, ++i) {
        const double xi[3] = {ax.xi[0][a], ax.xi[1][b], ax.xi[2][z]};
        const double lam = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        if (lam == 0.0) continue;
        cplx dot = 0.0;
        for (int c = 0; c < n; ++c) dot += xi[c] * comp[c][i];
        for (int c = 0; c < n; ++c) comp[c][i] -= xi[c] * dot / lam;
      }
  return grid_values(s);
}

double divergence_max(const SampledField& f) {
  if (f.components() != f.shape().dim) throw ConfigError("", "divergence needs a vector field");
  return spectral_divergence_max(grid_spectrum(f));
}

double divergence_max(const WaveletTransform& tr, const CoeffField& c) {
  if (c.components() != c.config().dim) throw ConfigError("", "divergence needs a vector field");
  return spectral_divergence_max(tr.spectrum(c));
}

}  // namespace mwns
