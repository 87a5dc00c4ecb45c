#include "mwns/semigroup.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "mwns/errors.hpp"
#include "mwns/fft.hpp"
#include "mwns/kernels.hpp"

namespace mwns {

using std::numbers::pi;

const rvec& squared_wavenumbers(const GridShape& shape) {
  static std::mutex mutex;
  static std::map<std::array<int, 3>, std::unique_ptr<rvec>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{shape.dim, shape.side_log2, shape.points}];
  if (!slot) {
    slot = std::make_unique<rvec>(shape.size());
    const auto e = shape.extents();
    const double side = shape.side();
    std::size_t i = 0;
    for (int a = 0; a < e[0]; ++a) {
      const double xa = wavenumber(a, e[0], side);
      for (int b = 0; b < e[1]; ++b) {
        const double xb = wavenumber(b, e[1], side);
        for (int z = 0; z < e[2]; ++z, ++i) {
          const double xz = e[2] == 1 ? 0.0 : wavenumber(z, e[2], side);
          (*slot)[i] = xa * xa + xb * xb + xz * xz;
        }
      }
    }
  }
  return *slot;
}

void apply_heat(Spectrum& s, double t) {
  if (t < 0.0) throw ConfigError("t", "heat flow needs t >= 0");
  if (t == 0.0) return;
  const rvec& lam = squared_wavenumbers(s.shape);
  rvec mult(lam.size());
  const auto& k = kernels::active();
  k.exp_scaled(mult.data(), lam.data(), -t, lam.size());
  for (int c = 0; c < s.components; ++c) k.scale_complex(s.component(c).data(), mult.data(), mult.size());
}

double gevrey_exponent(const AnalysisConfig& cfg, double t, double gamma) {
  if (gamma == 0.0) return 0.0;
  const double top = std::sqrt(double(cfg.dim)) * (8.0 * pi / 3.0) * std::ldexp(1.0, cfg.j_max);
  return std::pow(t, gamma) * std::pow(top, 2.0 * gamma);
}

void apply_gevrey(Spectrum& s, const AnalysisConfig& cfg, double t, double gamma, int sign, double cap) {
  if (gamma == 0.0 || t == 0.0) return;
  if (gamma < 0.0 || t < 0.0) throw ConfigError("gamma", "Gevrey flow needs gamma >= 0 and t >= 0");
  const double top = gevrey_exponent(cfg, t, gamma);
  if (sign > 0 && top > cap) throw GevreyOverflow(t, cfg.j_max, top);
  const rvec& lam = squared_wavenumbers(s.shape);
  rvec mult(lam.size());
  const double tg = (sign > 0 ? 1.0 : -1.0) * std::pow(t, gamma);
  for (std::size_t i = 0; i < lam.size(); ++i) mult[i] = std::pow(lam[i], gamma);
  kernels::active().exp_scaled(mult.data(), mult.data(), tg, mult.size());
  for (int c = 0; c < s.components; ++c) kernels::active().scale_complex(s.component(c).data(), mult.data(), mult.size());
}

CoeffField heat_flow(const WaveletTransform& tr, const CoeffField& c, double t) {
  Spectrum s = tr.spectrum(c);
  apply_heat(s, t);
  auto time = c.time() ? std::optional<double>(*c.time() + t) : std::optional<double>(t);
  return tr.coefficients(s, time);
}

CoeffField gevrey_flow(const WaveletTransform& tr, const CoeffField& c, double t, double gamma, int sign,
                       double cap) {
  if (gamma == 0.0) return c;
  Spectrum s = tr.spectrum(c);
  apply_gevrey(s, tr.config(), t, gamma, sign, cap);
  return tr.coefficients(s, c.time());
}

Trajectory heat_trajectory(const WaveletTransform& tr, const CoeffField& c, const std::vector<double>& times,
                           double gamma, double cap) {
  const Spectrum base = tr.spectrum(c);
  Trajectory traj;
  traj.set_initial(c);
  for (double t : times) {
    Spectrum s = base;
    apply_heat(s, t);
    apply_gevrey(s, tr.config(), t, gamma, +1, cap);
    traj.push(tr.coefficients(s, t));
  }
  return traj;
}

std::vector<double> geometric_times(double t0, double t1, int count) {
  if (count < 2 || !(t0 > 0.0) || !(t1 > t0)) throw ConfigError("times", "need 0 < t0 < t1 and count >= 2");
  std::vector<double> t(count);
  for (int i = 0; i < count; ++i) t[i] = t0 * std::pow(t1 / t0, double(i) / (count - 1));
  return t;
}

namespace {

double wrapped(double d, int m) {
  d = std::fmod(d, double(m));
  if (d < -m / 2.0) d += m;
  if (d >= m / 2.0) d -= m;
  return d;
}

// sum over |j-j'| <= 1, eps', k' of |f_{j',k'}| (1 + |2^{j-j'} k' - k|)^{-N}, for every k of level j
std::vector<double> majorant(const CoeffField& f, int comp, int j, double N) {
  const auto& cfg = f.config();
  const int m = cfg.lattice(j);
  const int m2 = cfg.dim == 3 ? m : 1;
  std::vector<double> out(std::size_t(m) * m * m2, 0.0);
  for (int jp = std::max(cfg.j_min, j - 1); jp <= std::min(cfg.j_max, j + 1); ++jp) {
    const int mp = cfg.lattice(jp);
    const int mp2 = cfg.dim == 3 ? mp : 1;
    struct Entry {
      double pos[3];
      double a;
    };
    std::vector<Entry> nz;
    for (int eps = 1; eps <= cfg.eps_count(); ++eps) {
      const auto b = f.block(comp, jp, eps);
      std::size_t i = 0;
      for (int x = 0; x < mp; ++x)
        for (int y = 0; y < mp; ++y)
          for (int z = 0; z < mp2; ++z, ++i)
            if (b[i] != 0.0)
              nz.push_back({{std::ldexp(double(x), j - jp), std::ldexp(double(y), j - jp), std::ldexp(double(z), j - jp)},
                            std::abs(b[i])});
    }
    std::size_t i = 0;
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y)
        for (int z = 0; z < m2; ++z, ++i) {
          const double k[3] = {double(x), double(y), double(z)};
          double acc = 0.0;
          for (const auto& e : nz) {
            double d2 = 0.0;
            for (int a = 0; a < cfg.dim; ++a) {
              const double d = wrapped(e.pos[a] - k[a], m);
              d2 += d * d;
            }
            acc += e.a * std::pow(1.0 + std::sqrt(d2), -N);
          }
          out[i] += acc;
        }
  }
  return out;
}

bool level_has_content(const CoeffField& f, int comp, int j) {
  for (int eps = 1; eps <= f.config().eps_count(); ++eps)
    for (double v : f.block(comp, j, eps))
      if (v != 0.0) return true;
  return false;
}

}  // namespace

DecayReport decay_check(const WaveletTransform& tr, const CoeffField& f, const DecayOptions& opt) {
  const auto& cfg = tr.config();
  if (opt.times.empty()) throw ConfigError("times", "empty time sample set");
  const double c_ref = (2.0 * pi / 3.0) * (2.0 * pi / 3.0);  // lower edge of each level's band
  const Spectrum base = tr.spectrum(f);
  const rvec& lam = squared_wavenumbers(base.shape);

  struct Point {
    double tau, log_ratio;
  };
  std::vector<Point> fit, high, low;
  DecayReport rep;
  CoeffField out(cfg, f.components());

  for (int comp = 0; comp < f.components(); ++comp) {
    std::vector<bool> content(cfg.level_count());
    for (int j = cfg.j_min; j <= cfg.j_max; ++j) content[j - cfg.j_min] = level_has_content(f, comp, j);
    for (int j = cfg.j_min; j <= cfg.j_max; ++j) {
      bool near = false;
      for (int jp = j - 1; jp <= j + 1; ++jp)
        if (jp >= cfg.j_min && jp <= cfg.j_max && content[jp - cfg.j_min]) near = true;
      const std::vector<double> maj = near ? majorant(f, comp, j, opt.N) : std::vector<double>{};
      const double scale_j = std::ldexp(1.0, 2 * j);
      for (double t : opt.times) {
        const double tau = t * scale_j;
        // multiply by e^{-t |xi|^2 + c_ref tau}; on the level-j band this is <= 1
        Spectrum s(base.shape, 1);
        rvec mult(lam.size());
        for (std::size_t i = 0; i < lam.size(); ++i) mult[i] = -t * lam[i] + (tau >= 1.0 ? c_ref * tau : 0.0);
        kernels::active().exp_scaled(mult.data(), mult.data(), 1.0, mult.size());
        const auto src = base.component(comp);
        for (std::size_t i = 0; i < lam.size(); ++i) s.data[i] = src[i] * mult[i];
        apply_gevrey(s, cfg, t, opt.gamma, +1, opt.cap);
        tr.level_coefficients(s, 0, j, out);
        double best = -std::numeric_limits<double>::infinity();
        double leak = 0.0;
        for (int eps = 1; eps <= cfg.eps_count(); ++eps) {
          const auto b = out.block(0, j, eps);
          for (std::size_t i = 0; i < b.size(); ++i) {
            const double g = std::abs(b[i]);
            if (!near) {
              leak = std::max(leak, g);
            } else if (g > 0.0) {
              best = std::max(best, std::log(g) - std::log(maj[i]));
            }
          }
        }
        if (!near) {
          rep.max_leak = std::max(rep.max_leak, leak * (tau >= 1.0 ? std::exp(-c_ref * tau) : 1.0));
          continue;
        }
        if (!std::isfinite(best)) continue;
        if (tau >= 1.0) {
          best -= c_ref * tau;
          high.push_back({tau, best});
          if (content[j - cfg.j_min] && tau <= 256.0 * (1 + 1e-12)) fit.push_back({tau, best});
        } else {
          low.push_back({tau, best});
        }
      }
    }
  }

  if (fit.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (const auto& p : fit) {
      sx += p.tau, sy += p.log_ratio, sxx += p.tau * p.tau, sxy += p.tau * p.log_ratio,
          syy += p.log_ratio * p.log_ratio;
    }
    const double n = double(fit.size());
    const double cxx = sxx - sx * sx / n, cxy = sxy - sx * sy / n, cyy = syy - sy * sy / n;
    const double slope = cxy / cxx;
    rep.fitted_c_tilde = -slope;
    rep.r_squared = cyy > 0.0 ? cxy * cxy / (cxx * cyy) : 1.0;
    rep.fit_points = static_cast<int>(fit.size());
  }
  rep.c_tilde_used = rep.fitted_c_tilde > 0.0 ? std::min(rep.fitted_c_tilde, c_ref) : c_ref;
  for (const auto& p : high) rep.max_ratio_high = std::max(rep.max_ratio_high, std::exp(p.log_ratio + rep.c_tilde_used * p.tau));
  for (const auto& p : low) rep.max_ratio_low = std::max(rep.max_ratio_low, std::exp(p.log_ratio));
  return rep;
}

EmbeddingReport embedding_check(const WaveletTransform& tr, const CoeffField& f, const SpaceParams& params,
                                const TimeMesh& mesh, double gamma, WorkspaceOptions opt) {
  EmbeddingReport rep;
  rep.f_norm = f_norm(f, params, opt.lorentz).value;
  const Trajectory traj = heat_trajectory(tr, f, mesh.times(), gamma);
  rep.workspace = workspace_norm(traj, params, opt).total;
  rep.ratio = rep.f_norm > 0.0 ? rep.workspace / rep.f_norm : 0.0;
  return rep;
}

}  // namespace mwns
