#include "mwns/fixtures.hpp"

#include <algorithm>
#include <random>

#include "mwns/errors.hpp"
#include "mwns/fft.hpp"
#include "mwns/lorentz.hpp"

namespace mwns {

CoeffField random_field(const AnalysisConfig& cfg, int comps, std::uint64_t seed, double density, int j_lo,
                        int j_hi) {
  j_lo = std::max(j_lo, cfg.j_min);
  j_hi = std::min(j_hi, cfg.j_max);
  CoeffField c(cfg, comps);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit;
  for (int comp = 0; comp < comps; ++comp)
    for (int j = j_lo; j <= j_hi; ++j)
      for (int e = 1; e <= cfg.eps_count(); ++e)
        for (double& v : c.block(comp, j, e)) {
          const double g = gauss(rng);
          if (density >= 1.0 || unit(rng) < density) v = g;
        }
  return c;
}

CoeffField single_wavelet(const AnalysisConfig& cfg, const WaveletIndex& idx, int comps, int comp) {
  CoeffField c(cfg, comps);
  c.at(comp, idx) = 1.0;
  return c;
}

CoeffField divergence_free(const WaveletTransform& tr, const CoeffField& potential) {
  const auto& cfg = tr.config();
  const int n = cfg.dim;
  if (potential.components() != (n == 2 ? 1 : 3)) throw ConfigError("fixture", "potential has the wrong number of components");
  const Spectrum pot = tr.spectrum(potential);
  const auto e = pot.shape.extents();
  Spectrum out(pot.shape, n);
  std::size_t i = 0;
  const std::size_t size = pot.shape.size();
  for (int x = 0; x < e[0]; ++x)
    for (int y = 0; y < e[1]; ++y)
      for (int z = 0; z < e[2]; ++z, ++i) {
        const cplx I(0.0, 1.0);
        const double xi[3] = {wavenumber(x, e[0], cfg.side()), wavenumber(y, e[1], cfg.side()),
                              e[2] == 1 ? 0.0 : wavenumber(z, e[2], cfg.side())};
        if (n == 2) {
          const cplx p = pot.data[i];
          out.data[i] = -I * xi[1] * p;
          out.data[size + i] = I * xi[0] * p;
        } else {
          const cplx a0 = pot.data[i], a1 = pot.data[size + i], a2 = pot.data[2 * size + i];
          out.data[i] = I * (xi[1] * a2 - xi[2] * a1);
          out.data[size + i] = I * (xi[2] * a0 - xi[0] * a2);
          out.data[2 * size + i] = I * (xi[0] * a1 - xi[1] * a0);
        }
      }
  return tr.coefficients(out);
}

CoeffField two_wavelet_potential(const AnalysisConfig& cfg) {
  const int comps = cfg.dim == 2 ? 1 : 3;
  if (cfg.j_max - cfg.j_min < 3) throw ConfigError("grid", "fixture needs at least two interior levels");
  const int ja = cfg.j_min + (cfg.j_max - cfg.j_min) / 2;
  const int jb = ja + 1;
  CoeffField c(cfg, comps);
  const int ma = cfg.lattice(ja), mb = cfg.lattice(jb);
  for (int comp = 0; comp < comps; ++comp) {
    c.at(comp, {1, ja, {ma / 4, ma / 2, cfg.dim == 3 ? ma / 4 : 0}}) = 1.0;
    c.at(comp, {3, jb, {mb / 2 + 1, mb / 4, cfg.dim == 3 ? mb / 2 : 0}}) = comp == 1 ? -0.5 : 0.5;
  }
  return c;
}

CoeffField random_potential(const AnalysisConfig& cfg, std::uint64_t seed, double density) {
  return random_field(cfg, cfg.dim == 2 ? 1 : 3, seed, density, cfg.j_min + 1, cfg.j_max - 1);
}

CoeffField normalized(const CoeffField& c, const SpaceParams& params, double target) {
  const double v = f_norm(c, params).value;
  CoeffField out = c;
  if (v > 0.0) out *= target / v;
  return out;
}

}  // namespace mwns
