#pragma once

#include <climits>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "mwns/aligned.hpp"
#include "mwns/config.hpp"
#include "mwns/fields.hpp"
#include "mwns/filter_bank.hpp"

namespace mwns {

// Fourier-series coefficients c_m of fields on the torus, f(x) = sum c_m e^{i xi_m x}
// with xi_m = 2 pi m / side, stored FFT-ordered on a grid of `shape.points` per axis.
struct Spectrum {
  GridShape shape;
  int components = 0;
  cvec data;

  Spectrum() = default;
  Spectrum(GridShape s, int comps) : shape(s), components(comps), data(s.size() * comps) {}
  std::span<cplx> component(int c) { return {data.data() + c * shape.size(), shape.size()}; }
  std::span<const cplx> component(int c) const { return {data.data() + c * shape.size(), shape.size()}; }
};

// 2 pi m / side for FFT-ordered index i on an axis of `points` samples.
double wavenumber(int i, int points, double side);

// Zero every mode outside the band reproduced exactly by the level window.
void restrict_to_exact_band(Spectrum& s, const AnalysisConfig& cfg);

// Exact periodized Meyer transform. Coefficients and spectra are related by
// per-level folding onto the level lattice and a lattice DFT, so no grid FFT
// is needed unless point values are requested.
class WaveletTransform {
 public:
  WaveletTransform(FilterBank bank, AnalysisConfig cfg);

  const AnalysisConfig& config() const { return cfg_; }
  const FilterBank& bank() const { return bank_; }

  struct Select {
    int points = 0;       // output grid size, 0 = config grid
    int level = INT_MIN;  // single level, INT_MIN = all
    int eps = 0;          // single eps, 0 = all
  };
  Spectrum spectrum(const CoeffField& c, Select sel) const;
  Spectrum spectrum(const CoeffField& c) const { return spectrum(c, Select{}); }

  // Coefficients of a spectrum on any grid that resolves j_max.
  CoeffField coefficients(const Spectrum& s, std::optional<double> time = {}) const;
  // Only level j of component `comp`; other entries of `out` are untouched.
  void level_coefficients(const Spectrum& s, int comp, int j, CoeffField& out) const;

  SampledField to_grid(const Spectrum& s) const;
  Spectrum from_grid(const SampledField& f) const;

  SampledField synthesize(const CoeffField& c) const { return to_grid(spectrum(c)); }
  CoeffField analyze(const SampledField& f) const;

 private:
  struct Tap {
    int index;  // FFT index on the spectrum grid
    int fold;   // m mod M_j
    cplx value;
  };
  using LevelTaps = std::array<std::vector<Tap>, 2>;  // per eps bit
  const std::vector<LevelTaps>& taps(int points) const;
  void check_grid(int points) const;

  FilterBank bank_;
  AnalysisConfig cfg_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::unique_ptr<std::vector<LevelTaps>>> taps_;
};

// Direct evaluation of the Fourier transform of the wavelet psi_{j,k}^eps:
// 2^{-n j/2} e^{-i 2^{-j} k.xi} prod_i factor(eps_i, 2^{-j} xi_i).
std::complex<double> wavelet_hat(const FilterBank& bank, int dim, const WaveletIndex& idx,
                                 std::span<const double> xi);

}  // namespace mwns
