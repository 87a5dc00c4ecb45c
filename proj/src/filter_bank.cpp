#include "mwns/filter_bank.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mwns/errors.hpp"

namespace mwns {

using std::numbers::pi;

double Transition::operator()(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  if (name == "bump") {
    const double a = std::exp(-1.0 / x), b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
  }
  const int k = std::stoi(name.substr(4));
  // I_x(k,k) = x^k sum_{i<k} C(k-1+i, i) (1-x)^i
  double sum = 0.0, binom = 1.0, pw = 1.0;
  for (int i = 0; i < k; ++i) {
    sum += binom * pw;
    binom = binom * (k + i) / (i + 1);
    pw *= 1.0 - x;
  }
  return std::pow(x, k) * sum;
}

double Transition::decay_order() const {
  if (name == "bump") return INFINITY;
  return std::stoi(name.substr(4)) + 1.0;
}

Transition Transition::parse(const std::string& name) {
  if (name == "bump" || name == "polynomial") return {name == "bump" ? "bump" : "poly4"};
  if (name.size() > 4 && name.compare(0, 4, "poly") == 0) {
    const std::string digits = name.substr(4);
    if (digits.find_first_not_of("0123456789") == std::string::npos && digits.size() <= 2) {
      const int k = std::stoi(digits);
      if (k >= 1 && k <= 12) return {name};
    }
  }
  throw ConfigError("filter.transition", "unknown transition profile '" + name + "'");
}

FilterBank::FilterBank(Transition transition, int profile_resolution)
    : transition_(std::move(transition)), resolution_(profile_resolution) {
  if (profile_resolution < 256)
    throw ConfigError("filter.profile_resolution", "must be at least 256 samples per unit frequency");
  // x = 3|xi|/(2 pi) - 1, so a unit of xi is 3/(2 pi) units of x
  const int k = static_cast<int>(std::ceil(profile_resolution * 2.0 * pi / 3.0));
  nodes_.resize(k + 1);
  for (int i = 0; i <= k; ++i) nodes_[i] = transition_(static_cast<double>(i) / k);
  nodes_.front() = 0.0;
  nodes_.back() = 1.0;

  // clamped spline, zero slopes at both ends; Thomas algorithm on the
  // uniform-grid system h/6 [1 4 1] with end rows [2 1], [1 2]
  const double h = 1.0 / k;
  const int n = k + 1;
  std::vector<double> diag(n, 4.0), rhs(n), upper(n, 1.0);
  diag.front() = diag.back() = 2.0;
  for (int i = 1; i < n - 1; ++i) rhs[i] = 6.0 * (nodes_[i + 1] - 2.0 * nodes_[i] + nodes_[i - 1]) / (h * h);
  rhs.front() = 6.0 * (nodes_[1] - nodes_[0]) / (h * h);
  rhs.back() = -6.0 * (nodes_[n - 1] - nodes_[n - 2]) / (h * h);
  for (int i = 1; i < n; ++i) {
    const double w = 1.0 / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  second_.assign(n, 0.0);
  second_[n - 1] = rhs[n - 1] / diag[n - 1];
  for (int i = n - 2; i >= 0; --i) second_[i] = (rhs[i] - upper[i] * second_[i + 1]) / diag[i];

  const double step = table_step();
  const int n0 = static_cast<int>(std::floor(4.0 * pi / 3.0 / step));
  const int n1 = static_cast<int>(std::floor(8.0 * pi / 3.0 / step));
  phi0_tab_.resize(2 * n0 + 1);
  for (int i = -n0; i <= n0; ++i) phi0_tab_[i + n0] = phi0_hat(i * step);
  varphi_tab_.resize(2 * n1 + 1);
  for (int i = -n1; i <= n1; ++i) varphi_tab_[i + n1] = varphi(i * step);
}

double FilterBank::nu(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const int k = static_cast<int>(nodes_.size()) - 1;
  const double h = 1.0 / k;
  int i = static_cast<int>(x * k);
  if (i >= k) i = k - 1;
  const double a = (i + 1) * h - x, b = x - i * h;
  const double v = (second_[i] * a * a * a + second_[i + 1] * b * b * b) / (6.0 * h) +
                   (nodes_[i] / h - second_[i] * h / 6.0) * a + (nodes_[i + 1] / h - second_[i + 1] * h / 6.0) * b;
  // the spline can overshoot [0,1] by ~1e-11 next to the ends; clamping keeps
  // nu(x) + nu(1-x) = 1 since the bounds are swapped by the symmetry
  return std::clamp(v, 0.0, 1.0);
}

double FilterBank::phi0_hat(double xi) const {
  const double a = std::abs(xi);
  if (a <= 2.0 * pi / 3.0) return 1.0;
  if (a >= 4.0 * pi / 3.0) return 0.0;
  return std::cos(pi / 2.0 * nu(3.0 * a / (2.0 * pi) - 1.0));
}

double FilterBank::varphi(double xi) const {
  const double a = std::abs(xi);
  if (a <= 2.0 * pi / 3.0 || a >= 8.0 * pi / 3.0) return 0.0;
  if (a <= 4.0 * pi / 3.0) return std::sin(pi / 2.0 * nu(3.0 * a / (2.0 * pi) - 1.0));
  return std::cos(pi / 2.0 * nu(3.0 * a / (4.0 * pi) - 1.0));
}

std::complex<double> FilterBank::factor(int eps, double xi) const {
  if (eps == 0) return phi0_hat(xi);
  return std::polar(varphi(xi), -xi / 2.0);
}

}  // namespace mwns
