#include "mwns/duhamel.hpp"

#include <cmath>
#include <numbers>

#include "mwns/errors.hpp"
#include "mwns/fft.hpp"
#include "mwns/kernels.hpp"
#include "mwns/semigroup.hpp"

namespace mwns {

std::vector<std::pair<double, double>> gauss_legendre(int n) {
  if (n < 1) throw ConfigError("quadrature.nodes", "need at least one node");
  std::vector<std::pair<double, double>> out(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    out[n - 1 - i] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
  }
  return out;
}

std::vector<std::pair<double, double>> duhamel_nodes(double t, const QuadratureSpec& q) {
  if (q.sub_intervals < 2 || q.sub_intervals % 2 != 0)
    throw ConfigError("quadrature.sub_intervals", "must be even and at least 2");
  const int half = q.sub_intervals / 2;
  std::vector<double> b{0.0};
  for (int i = half; i >= 1; --i) b.push_back(std::ldexp(t, -i));
  for (int i = 2; i <= half; ++i) b.push_back(t - std::ldexp(t, -i));
  b.push_back(t);
  const auto gl = gauss_legendre(q.nodes);
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    const double mid = 0.5 * (b[i] + b[i + 1]), h = 0.5 * (b[i + 1] - b[i]);
    for (const auto& [x, w] : gl) out.push_back({mid + h * x, h * w});
  }
  return out;
}

DuhamelEngine::DuhamelEngine(const WaveletTransform& tr, const Trajectory& u, const Trajectory& v,
                             BilinearOperator op, double gamma, QuadratureSpec quad)
    : tr_(tr), op_(op), gamma_(gamma), quad_(quad) {
  const auto& cfg = tr.config();
  if (u.empty() || v.empty()) throw MeshCoverageError("empty time mesh");
  if (u.times() != v.times() || u.initial().has_value() != v.initial().has_value())
    throw MeshCoverageError("Duhamel inputs must share one time mesh");
  in_comps_ = u[0].components();
  if (v[0].components() != in_comps_) throw ConfigError("", "Duhamel inputs differ in component count");
  if (op.kind == BilinearOperator::Kind::navier_stokes) {
    if (in_comps_ != cfg.dim) throw ConfigError("", "the Navier-Stokes operator takes vector fields");
    out_comps_ = cfg.dim;
  } else {
    if (in_comps_ != 1) throw ConfigError("", "scalar operators take single-component fields");
    out_comps_ = 1;
  }
  for (int a : {op.l, op.l1, op.l2})
    if (a < 0 || a >= cfg.dim) throw ConfigError("", "derivative index out of range");
  padded_ = cfg.grid_points + cfg.grid_points / 2;
  if (3L * padded_ <= 16L * cfg.lattice(cfg.j_max))
    throw ResolutionError("products of level " + std::to_string(cfg.j_max) + " fields exceed the padded grid");
  same_ = &u == &v;
  build_modes();

  std::vector<const CoeffField*> us, vs;
  if (u.initial()) {
    knots_.push_back(0.0);
    us.push_back(&*u.initial());
    vs.push_back(&*v.initial());
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    knots_.push_back(u.time(i));
    us.push_back(&u[i]);
    vs.push_back(&v[i]);
    out_times_.push_back(u.time(i));
  }

  std::vector<std::vector<double>> pu_prev, pv_prev;
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    auto pu = physical(*us[i], knots_[i]);
    auto pv = same_ ? pu : physical(*vs[i], knots_[i]);
    node_terms_.push_back(apply_symbol(product_fields(pu, pv, nullptr, nullptr)));
    if (i > 0) cross_terms_.push_back(apply_symbol(product_fields(pu_prev, pv, &pu, &pv_prev)));
    pu_prev = std::move(pu);
    pv_prev = std::move(pv);
  }
}

void DuhamelEngine::build_modes() {
  const auto& cfg = tr_.config();
  const GridShape base = cfg.grid();
  const auto e = base.extents();
  const int p = padded_;
  const int p2 = cfg.dim == 3 ? p : 1;
  const double side = cfg.side();
  std::size_t i = 0;
  for (int a = 0; a < e[0]; ++a)
    for (int b = 0; b < e[1]; ++b)
      for (int z = 0; z < e[2]; ++z, ++i) {
        const int m0 = fft::signed_frequency(a, e[0]), m1 = fft::signed_frequency(b, e[1]);
        const int m2 = e[2] == 1 ? 0 : fft::signed_frequency(z, e[2]);
        if (!in_exact_band(cfg, m0, m1, m2)) continue;
        Mode md;
        md.base = i;
        md.padded = (std::size_t(fft::index_of(m0, p)) * p + fft::index_of(m1, p)) * p2 +
                    (cfg.dim == 3 ? fft::index_of(m2, p) : 0);
        md.xi[0] = 2.0 * std::numbers::pi * m0 / side;
        md.xi[1] = 2.0 * std::numbers::pi * m1 / side;
        md.xi[2] = 2.0 * std::numbers::pi * m2 / side;
        md.lam = md.xi[0] * md.xi[0] + md.xi[1] * md.xi[1] + md.xi[2] * md.xi[2];
        modes_.push_back(md);
      }
}

std::vector<std::vector<double>> DuhamelEngine::physical(const CoeffField& state, double t) const {
  const auto& cfg = tr_.config();
  std::vector<std::vector<double>> out;
  auto one = [&](int level) {
    Spectrum s = tr_.spectrum(state, {padded_, level, 0});
    apply_gevrey(s, cfg, t, gamma_, -1);
    const SampledField f = tr_.to_grid(s);
    for (int c = 0; c < f.components(); ++c) {
      auto v = f.component(c);
      out.emplace_back(v.begin(), v.end());
    }
  };
  if (!op_.flow) {
    one(INT_MIN);
    return out;  // indexed by component
  }
  // indexed level-major: [level][component]
  for (int j = cfg.j_min; j <= cfg.j_max; ++j) one(j);
  return out;
}

std::vector<cvec> DuhamelEngine::product_fields(const std::vector<std::vector<double>>& u,
                                                const std::vector<std::vector<double>>& v,
                                                const std::vector<std::vector<double>>* u2,
                                                const std::vector<std::vector<double>>* v2) const {
  const auto& cfg = tr_.config();
  const int nc = in_comps_;
  const std::size_t size = GridShape{cfg.dim, cfg.side_log2, padded_}.size();
  const std::vector<int> dims(cfg.dim, padded_);
  const auto& k = kernels::active();
  const bool symmetric = same_ && nc > 1;
  const int levels = cfg.level_count();

  auto accumulate = [&](std::vector<double>& acc, const std::vector<std::vector<double>>& a,
                        const std::vector<std::vector<double>>& b, int ca, int cb) {
    if (!op_.flow) {
      k.multiply_add(acc.data(), a[ca].data(), b[cb].data(), size);
      return;
    }
    for (int ja = 0; ja < levels; ++ja)
      for (int jb = 0; jb < levels; ++jb)
        if (classify_flow(ja, jb) == *op_.flow)
          k.multiply_add(acc.data(), a[ja * nc + ca].data(), b[jb * nc + cb].data(), size);
  };

  std::vector<cvec> out(nc * nc);
  std::vector<double> acc(size);
  for (int b = 0; b < nc; ++b)
    for (int c = 0; c < nc; ++c) {
      if (symmetric && c < b) {
        out[b * nc + c] = out[c * nc + b];
        continue;
      }
      std::fill(acc.begin(), acc.end(), 0.0);
      accumulate(acc, u, v, b, c);
      if (u2 != nullptr) accumulate(acc, *u2, *v2, b, c);
      cvec buf(acc.begin(), acc.end());
      fft::forward(buf, dims);
      const double norm = 1.0 / double(size);
      cvec sel(modes_.size());
      for (std::size_t m = 0; m < modes_.size(); ++m) sel[m] = norm * buf[modes_[m].padded];
      out[b * nc + c] = std::move(sel);
    }
  return out;
}

cvec DuhamelEngine::apply_symbol(const std::vector<cvec>& t) const {
  const std::size_t nm = modes_.size();
  cvec out(nm * out_comps_);
  const cplx I(0.0, 1.0);
  const int n = in_comps_;
  for (std::size_t m = 0; m < nm; ++m) {
    const Mode& md = modes_[m];
    switch (op_.kind) {
      case BilinearOperator::Kind::navier_stokes: {
        cplx w[3] = {0.0, 0.0, 0.0};
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c) w[b] += I * md.xi[c] * t[b * n + c][m];
        cplx dot = 0.0;
        for (int b = 0; b < n; ++b) dot += md.xi[b] * w[b];
        for (int a = 0; a < n; ++a) out[a * nm + m] = w[a] - md.xi[a] * dot / md.lam;
        break;
      }
      case BilinearOperator::Kind::derivative:
        out[m] = I * md.xi[op_.l] * t[0][m];
        break;
      case BilinearOperator::Kind::riesz:
        out[m] = -I * md.xi[op_.l] * md.xi[op_.l1] * md.xi[op_.l2] / md.lam * t[0][m];
        break;
    }
  }
  return out;
}

CoeffField DuhamelEngine::evaluate(double t) const {
  const auto& cfg = tr_.config();
  if (!(t > 0.0)) throw MeshCoverageError("Duhamel integral needs t > 0");
  if (t > knots_.back() * (1 + 1e-12)) throw MeshCoverageError("t beyond the last sample");
  const std::size_t nm = modes_.size();
  rvec lam(nm), heat(nm);
  for (std::size_t m = 0; m < nm; ++m) lam[m] = modes_[m].lam;
  cvec acc(nm * out_comps_);
  const auto& k = kernels::active();
  std::size_t iv = 0;
  for (const auto& [s, w] : duhamel_nodes(t, quad_)) {
    if (s < knots_.front())
      throw MeshCoverageError("quadrature node " + std::to_string(s) +
                              " precedes the first sample and no initial state is stored");
    while (iv + 2 < knots_.size() && s > knots_[iv + 1]) ++iv;
    const double theta = std::clamp((s - knots_[iv]) / (knots_[iv + 1] - knots_[iv]), 0.0, 1.0);
    k.exp_scaled(heat.data(), lam.data(), -(t - s), nm);
    const double a = w * (1 - theta) * (1 - theta), b = w * theta * (1 - theta), c = w * theta * theta;
    for (int comp = 0; comp < out_comps_; ++comp) {
      const std::size_t off = comp * nm;
      k.accumulate_combination(acc.data() + off, heat.data(), a, node_terms_[iv].data() + off, b,
                               cross_terms_[iv].data() + off, c, node_terms_[iv + 1].data() + off, nm);
    }
  }
  Spectrum out(cfg.grid(), out_comps_);
  for (int comp = 0; comp < out_comps_; ++comp) {
    auto dst = out.component(comp);
    for (std::size_t m = 0; m < nm; ++m) dst[modes_[m].base] = acc[comp * nm + m];
  }
  apply_gevrey(out, cfg, t, gamma_, +1);
  return tr_.coefficients(out, t);
}

Trajectory DuhamelEngine::evaluate_all() const {
  Trajectory out;
  out.set_initial(CoeffField(tr_.config(), out_comps_, 0.0));
  for (double t : out_times_) out.push(evaluate(t));
  return out;
}

CoeffField bilinear_B(const WaveletTransform& tr, const Trajectory& u, const Trajectory& v, double t,
                      QuadratureSpec quad) {
  return DuhamelEngine(tr, u, v, {}, 0.0, quad).evaluate(t);
}

CoeffField bilinear_B_gamma(const WaveletTransform& tr, const Trajectory& u_tilde, const Trajectory& v_tilde,
                            double t, double gamma, QuadratureSpec quad) {
  return DuhamelEngine(tr, u_tilde, v_tilde, {}, gamma, quad).evaluate(t);
}

BilinearComponents bilinear_components(const WaveletTransform& tr, const Trajectory& u_tilde,
                                       const Trajectory& v_tilde, double t, double gamma, int l, int l1, int l2,
                                       QuadratureSpec quad) {
  using K = BilinearOperator::Kind;
  BilinearComponents out;
  const FlowKind order[3] = {FlowKind::diagonal, FlowKind::high_low, FlowKind::low_high};
  for (int i = 0; i < 3; ++i) {
    out.derivative[i] = DuhamelEngine(tr, u_tilde, v_tilde, {K::derivative, l, 0, 0, order[i]}, gamma, quad).evaluate(t);
    out.riesz[i] = DuhamelEngine(tr, u_tilde, v_tilde, {K::riesz, l, l1, l2, order[i]}, gamma, quad).evaluate(t);
  }
  out.derivative_total = DuhamelEngine(tr, u_tilde, v_tilde, {K::derivative, l, 0, 0, {}}, gamma, quad).evaluate(t);
  out.riesz_total = DuhamelEngine(tr, u_tilde, v_tilde, {K::riesz, l, l1, l2, {}}, gamma, quad).evaluate(t);
  return out;
}

Trajectory component_of(const Trajectory& traj, int comp) {
  return map_states(traj, [comp](double, const CoeffField& s) {
    CoeffField out(s.config(), 1, s.time());
    const auto& cfg = s.config();
    for (int j = cfg.j_min; j <= cfg.j_max; ++j)
      for (int eps = 1; eps <= cfg.eps_count(); ++eps) {
        const auto src = s.block(comp, j, eps);
        std::copy(src.begin(), src.end(), out.block(0, j, eps).begin());
      }
    return out;
  });
}

Trajectory constant_trajectory(const CoeffField& state, const std::vector<double>& times) {
  Trajectory traj;
  traj.set_initial(state);
  for (double t : times) {
    CoeffField s = state;
    s.set_time(t);
    traj.push(std::move(s));
  }
  return traj;
}

}  // namespace mwns
