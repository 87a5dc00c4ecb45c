#include "mwns/maximal.hpp"

#include <algorithm>
#include <cmath>

#include "mwns/errors.hpp"

namespace mwns {
namespace {

struct Shape3 {
  int m;   // cells per axis
  int m2;  // extent of the third axis (1 in 2D)
  std::size_t at(int a, int b, int z) const { return (std::size_t(a) * m + b) * m2 + z; }
};

Shape3 shape_of(const CellGrid& g) {
  const int m = g.cells_per_axis();
  return {m, g.dim == 3 ? m : 1};
}

// Apply a periodic 1D window operation along `axis` for every line.
template <class Op>
void along_axis(std::vector<double>& v, const Shape3& s, int axis, Op op) {
  const int len = axis == 2 ? s.m2 : s.m;
  if (len == 1) return;
  std::vector<double> line(len), out(len);
  const int n0 = axis == 0 ? 1 : s.m, n1 = axis == 1 ? 1 : s.m, n2 = axis == 2 ? 1 : s.m2;
  for (int a = 0; a < n0; ++a)
    for (int b = 0; b < n1; ++b)
      for (int z = 0; z < n2; ++z) {
        for (int i = 0; i < len; ++i)
          line[i] = v[s.at(axis == 0 ? i : a, axis == 1 ? i : b, axis == 2 ? i : z)];
        op(line, out);
        for (int i = 0; i < len; ++i) v[s.at(axis == 0 ? i : a, axis == 1 ? i : b, axis == 2 ? i : z)] = out[i];
      }
}

CellGrid maximal_translated(const CellGrid& g) {
  const Shape3 s = shape_of(g);
  CellGrid out = g;
  for (double& v : out.values) v = std::abs(v);
  std::vector<double> absval = out.values;
  for (int side = 2; side <= s.m; side *= 2) {
    // averages over [y, y + side)^n
    std::vector<double> avg = absval;
    for (int axis = 0; axis < g.dim; ++axis)
      along_axis(avg, s, axis, [side](const std::vector<double>& in, std::vector<double>& o) {
        const int len = static_cast<int>(in.size());
        double run = 0.0;
        for (int i = 0; i < side; ++i) run += in[i % len];
        for (int y = 0; y < len; ++y) {
          o[y] = run / side;
          run += in[(y + side) % len] - in[y];
        }
      });
    // sup over corners y in x - [0, side)^n
    for (int axis = 0; axis < g.dim; ++axis)
      along_axis(avg, s, axis, [side](const std::vector<double>& in, std::vector<double>& o) {
        const int len = static_cast<int>(in.size());
        for (int x = 0; x < len; ++x) {
          double mx = 0.0;
          for (int d = 0; d < side; ++d) mx = std::max(mx, in[((x - d) % len + len) % len]);
          o[x] = mx;
        }
      });
    for (std::size_t i = 0; i < avg.size(); ++i) out.values[i] = std::max(out.values[i], avg[i]);
  }
  return out;
}

CellGrid maximal_aligned(const CellGrid& g) {
  const Shape3 s = shape_of(g);
  CellGrid out = g;
  for (double& v : out.values) v = std::abs(v);
  for (int side = 2; side <= s.m; side *= 2) {
    const int nb = s.m / side;
    const int nb2 = g.dim == 3 ? nb : 1;
    const int side2 = g.dim == 3 ? side : 1;
    std::vector<double> sums(std::size_t(nb) * nb * nb2, 0.0);
    for (int a = 0; a < s.m; ++a)
      for (int b = 0; b < s.m; ++b)
        for (int z = 0; z < s.m2; ++z)
          sums[(std::size_t(a / side) * nb + b / side) * nb2 + z / side2] += std::abs(g.values[s.at(a, b, z)]);
    const double vol = std::pow(double(side), g.dim);
    for (int a = 0; a < s.m; ++a)
      for (int b = 0; b < s.m; ++b)
        for (int z = 0; z < s.m2; ++z) {
          double& o = out.values[s.at(a, b, z)];
          o = std::max(o, sums[(std::size_t(a / side) * nb + b / side) * nb2 + z / side2] / vol);
        }
  }
  return out;
}

// Block minima of a fine grid over the cells of a coarser level.
CellGrid block_min(const CellGrid& fine, int level) {
  CellGrid out(fine.dim, fine.side_log2, level);
  std::fill(out.values.begin(), out.values.end(), INFINITY);
  const Shape3 f = shape_of(fine), c = shape_of(out);
  const int shift = fine.level - level;
  for (int a = 0; a < f.m; ++a)
    for (int b = 0; b < f.m; ++b)
      for (int z = 0; z < f.m2; ++z) {
        double& o = out.values[c.at(a >> shift, b >> shift, fine.dim == 3 ? z >> shift : 0)];
        o = std::min(o, fine.values[f.at(a, b, z)]);
      }
  return out;
}

// Torus-wrapped difference into [-m/2, m/2).
double wrapped(double d, int m) {
  d = std::fmod(d, double(m));
  if (d < -m / 2.0) d += m;
  if (d >= m / 2.0) d -= m;
  return d;
}

struct Nonzero {
  std::array<int, 3> k;
  double a;  // 2^{n j'/2} sum_eps |f|
};

std::vector<Nonzero> level_nonzeros(const CoeffField& c, int comp, int j) {
  const CellGrid g = level_majorant(c, comp, j);
  const Shape3 s = shape_of(g);
  std::vector<Nonzero> out;
  for (int a = 0; a < s.m; ++a)
    for (int b = 0; b < s.m; ++b)
      for (int z = 0; z < s.m2; ++z) {
        const double v = g.values[s.at(a, b, z)];
        if (v != 0.0) out.push_back({{a, b, z}, v});
      }
  return out;
}

double weight_sum(const std::vector<Nonzero>& nz, int dim, int j, int jp, const std::array<int, 3>& k, double N,
                  int m_j, int m_jp) {
  double sum = 0.0;
  for (const auto& e : nz) {
    double d2 = 0.0;
    for (int i = 0; i < dim; ++i) {
      const double d = j >= jp ? wrapped(e.k[i] - std::ldexp(double(k[i]), jp - j), m_jp)
                               : wrapped(k[i] - std::ldexp(double(e.k[i]), j - jp), m_j);
      d2 += d * d;
    }
    sum += e.a * std::pow(1.0 + std::sqrt(d2), -N);
  }
  return sum;
}

}  // namespace

CellGrid hl_maximal(const CellGrid& g, CubeFamily family) {
  return family == CubeFamily::aligned ? maximal_aligned(g) : maximal_translated(g);
}

double g_weight(const CoeffField& c, int comp, int j, int jp, std::array<int, 3> k, double N) {
  const auto& cfg = c.config();
  return weight_sum(level_nonzeros(c, comp, jp), cfg.dim, j, jp, k, N, cfg.lattice(j), cfg.lattice(jp));
}

GWeightReport g_weight_check(const CoeffField& c, int comp, double N, CubeFamily family) {
  const auto& cfg = c.config();
  if (!(N > 2 * cfg.dim + 1)) throw ConfigError("N", "the g-weight comparison needs N > 2n + 1");
  GWeightReport rep;
  for (int jp = cfg.j_min; jp <= cfg.j_max; ++jp) {
    const auto nz = level_nonzeros(c, comp, jp);
    if (nz.empty()) continue;
    const CellGrid maxf = hl_maximal(level_majorant(c, comp, jp).refined(cfg.j_max), family);
    for (int j = cfg.j_min; j <= cfg.j_max; ++j) {
      const CellGrid mins = block_min(maxf, j);
      const Shape3 s = shape_of(mins);
      const double factor = j >= jp ? 1.0 : std::ldexp(1.0, cfg.dim * (jp - j));
      double& slot = j >= jp ? rep.ratio_at_or_above : rep.ratio_below;
      for (int a = 0; a < s.m; ++a)
        for (int b = 0; b < s.m; ++b)
          for (int z = 0; z < s.m2; ++z) {
            const double g = weight_sum(nz, cfg.dim, j, jp, {a, b, z}, N, cfg.lattice(j), cfg.lattice(jp));
            slot = std::max(slot, g / (factor * mins.values[s.at(a, b, z)]));
          }
    }
  }
  return rep;
}

double g_weight_constant_bound(int dim, double N) {
  if (!(N > 2 * dim)) throw ConfigError("N", "the constant is finite only for N > 2n");
  // shells |d|_inf = R; beyond R_max the tail is bounded by an integral estimate
  const int r_max = dim == 3 ? 40 : 300;
  double sum = 0.0;
  const int r2 = dim == 3 ? r_max : 0;
  for (int a = -r_max; a <= r_max; ++a)
    for (int b = -r_max; b <= r_max; ++b)
      for (int z = -r2; z <= r2; ++z) {
        const int d[3] = {a, b, z};
        double dist2 = 0.0;
        int linf = 0;
        for (int i = 0; i < dim; ++i) {
          linf = std::max(linf, std::abs(d[i]));
          const double gap = d[i] < 0 ? -d[i] : (d[i] > 1 ? d[i] - 1 : 0);
          dist2 += gap * gap;
        }
        sum += std::pow(2.0 * (linf + 1), dim) * std::pow(1.0 + std::sqrt(dist2), -N);
      }
  // remaining shells: at most (2R+1)^n - (2R-1)^n <= 2n (2R+1)^{n-1} points at
  // distance >= R - 1, each at most (2(R+1))^n R^{-N} after the +1
  double tail = 0.0;
  for (int R = r_max + 1; R < 1000000; ++R)
    tail += 2.0 * dim * std::pow(2.0 * R + 1, dim - 1) * std::pow(2.0 * (R + 1), dim) * std::pow(double(R), -N);
  return sum + tail;
}

double fefferman_stein_ratio(const std::vector<CellGrid>& family, double p, double q, double r, CubeFamily cubes,
                             LorentzOptions opt) {
  if (family.empty()) throw ConfigError("family", "empty family");
  int finest = family.front().level;
  for (const auto& g : family) finest = std::max(finest, g.level);
  const auto& f0 = family.front();
  auto combine = [&](bool maximal) {
    CellGrid acc(f0.dim, f0.side_log2, finest);
    for (const auto& g : family) {
      CellGrid h = g.refined(finest);
      if (maximal) h = hl_maximal(h, cubes);
      for (std::size_t i = 0; i < acc.values.size(); ++i) {
        const double v = std::abs(h.values[i]);
        acc.values[i] = std::isinf(q) ? std::max(acc.values[i], v) : acc.values[i] + std::pow(v, q);
      }
    }
    if (!std::isinf(q))
      for (double& v : acc.values) v = std::pow(v, 1.0 / q);
    return lorentz_quasi_norm(acc, p, r, opt).value;
  };
  const double base = combine(false);
  if (base == 0.0) return 0.0;
  return combine(true) / base;
}

}  // namespace mwns
