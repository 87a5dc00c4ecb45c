#pragma once

#include <complex>
#include <string>
#include <vector>

namespace mwns {

// Transition profile nu on [0,1] with nu(x) + nu(1-x) = 1.
// "polyK" is the regularized incomplete beta I_x(K,K), so nu ~ x^K at 0;
// "poly4" is the default. "bump" is the C-infinity profile s(x)/(s(x)+s(1-x)),
// s(x) = exp(-1/x).
struct Transition {
  std::string name = "poly4";
  double operator()(double x) const;
  // Decay order of the resulting wavelets in space (poly: K+1, bump: infinite).
  double decay_order() const;
  static Transition parse(const std::string& name);  // throws ConfigError
};

// Tabulated Meyer profiles. The transition is sampled on a symmetric grid of
// [0,1] and interpolated by a clamped cubic spline (zero end slopes); the
// interpolant is linear in the data and commutes with x -> 1-x, so the
// partition identities hold to rounding for every argument.
class FilterBank {
 public:
  explicit FilterBank(Transition transition = {}, int profile_resolution = 256);

  // scaling-function profile, supported in |xi| <= 4 pi/3
  double phi0_hat(double xi) const;
  // wavelet profile varphi, supported in 2 pi/3 <= |xi| <= 8 pi/3
  double varphi(double xi) const;
  // phi0_hat for eps = 0, exp(-i xi/2) varphi for eps = 1
  std::complex<double> factor(int eps, double xi) const;

  const Transition& transition() const { return transition_; }
  int profile_resolution() const { return resolution_; }

  // Raw tables at spacing 1/profile_resolution: phi0_hat on [-4pi/3, 4pi/3]
  // and varphi on [-8pi/3, 8pi/3].
  const std::vector<double>& phi0_table() const { return phi0_tab_; }
  const std::vector<double>& varphi_table() const { return varphi_tab_; }
  double table_step() const { return 1.0 / resolution_; }

 private:
  double nu(double x) const;

  Transition transition_;
  int resolution_;
  std::vector<double> nodes_;   // nu at x_i = i/K
  std::vector<double> second_;  // spline second derivatives
  std::vector<double> phi0_tab_;
  std::vector<double> varphi_tab_;
};

}  // namespace mwns
