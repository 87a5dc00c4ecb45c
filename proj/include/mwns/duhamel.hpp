#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "mwns/paraproduct.hpp"
#include "mwns/trajectory.hpp"
#include "mwns/transform.hpp"

namespace mwns {

// Composite Gauss-Legendre rule on [0, t], split at t 2^{-i} toward 0 and at
// t - t 2^{-i} toward t, sub_intervals/2 pieces on each side.
struct QuadratureSpec {
  int sub_intervals = 12;
  int nodes = 8;
};

std::vector<std::pair<double, double>> gauss_legendre(int n);  // nodes/weights on [-1, 1]
std::vector<std::pair<double, double>> duhamel_nodes(double t, const QuadratureSpec& q);

// Symbol applied to the product spectrum.
//   navier_stokes: vector inputs, (P div (u (x) v))_a = sum_{b,c} P_ab i xi_c (u_b v_c)^
//   derivative:    scalar inputs, i xi_l (u v)^
//   riesz:         scalar inputs, -i xi_l xi_l1 xi_l2 / |xi|^2 (u v)^
struct BilinearOperator {
  enum class Kind { navier_stokes, derivative, riesz } kind = Kind::navier_stokes;
  int l = 0, l1 = 0, l2 = 0;
  std::optional<FlowKind> flow;  // restrict the product to one level interaction
};

// B(u, v)(t) = int_0^t e^{(t-s) Delta} Op(u(s), v(s)) ds over trajectories with
// linear interpolation between samples (and from the initial state on
// [0, t_first]). With gamma > 0 the inputs are the Gevrey variables
// u~ = exp(t^gamma (-Delta)^gamma) u and the output is multiplied by the same
// factor at time t; interpolation is carried out in u = exp(-...) u~.
// Products are formed on the padded grid and the result is restricted to the
// band reproduced exactly by the level window, which keeps divergence-free
// outputs divergence-free.
class DuhamelEngine {
 public:
  DuhamelEngine(const WaveletTransform& tr, const Trajectory& u, const Trajectory& v, BilinearOperator op,
                double gamma = 0.0, QuadratureSpec quad = {});

  CoeffField evaluate(double t) const;
  // at every sample time of u
  Trajectory evaluate_all() const;

 private:
  struct Mode {
    std::size_t padded;
    std::size_t base;
    double lam;
    double xi[3];
  };
  void build_modes();
  std::vector<cvec> product_fields(const std::vector<std::vector<double>>& u_phys,
                                   const std::vector<std::vector<double>>& v_phys,
                                   const std::vector<std::vector<double>>* u2,
                                   const std::vector<std::vector<double>>* v2) const;
  cvec apply_symbol(const std::vector<cvec>& products) const;
  std::vector<std::vector<double>> physical(const CoeffField& state, double t) const;

  const WaveletTransform& tr_;
  BilinearOperator op_;
  double gamma_;
  QuadratureSpec quad_;
  int in_comps_ = 1, out_comps_ = 1;
  int padded_ = 0;
  bool same_ = false;
  std::vector<Mode> modes_;
  std::vector<double> knots_;      // 0 (if initial) then sample times
  std::vector<cvec> node_terms_;   // Op(u_i (x) v_i) per knot, out_comps blocks of modes
  std::vector<cvec> cross_terms_;  // Op(u_i (x) v_{i+1} + u_{i+1} (x) v_i) per interval
  std::vector<double> out_times_;
};

CoeffField bilinear_B(const WaveletTransform& tr, const Trajectory& u, const Trajectory& v, double t,
                      QuadratureSpec quad = {});
CoeffField bilinear_B_gamma(const WaveletTransform& tr, const Trajectory& u_tilde, const Trajectory& v_tilde,
                            double t, double gamma, QuadratureSpec quad = {});

// Scalar operators B_l and B_{l,l',l''} split by flow: index 0 diagonal,
// 1 high_low, 2 low_high. Each triple sums to the unsplit operator.
struct BilinearComponents {
  std::array<CoeffField, 3> derivative;
  std::array<CoeffField, 3> riesz;
  CoeffField derivative_total, riesz_total;
};
BilinearComponents bilinear_components(const WaveletTransform& tr, const Trajectory& u_tilde,
                                       const Trajectory& v_tilde, double t, double gamma, int l, int l1, int l2,
                                       QuadratureSpec quad = {});

// One component of a vector trajectory as a scalar trajectory.
Trajectory component_of(const Trajectory& traj, int comp);
// A trajectory that holds `state` at every time (and as initial state).
Trajectory constant_trajectory(const CoeffField& state, const std::vector<double>& times);

}  // namespace mwns
