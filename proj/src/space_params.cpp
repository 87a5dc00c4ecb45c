#include "mwns/space_params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mwns {

double gamma_supremum(int n, double p, double m) {
  const double a = m / (2 * n + 2) - 1.0 / (4 * n + 4) + n / (8 * p * n + 8 * p);
  const double b = 1.0 / (4 * n + 4) - n / (4 * p * n + 4 * p);
  const double c = m / (6 * n + 6);
  return std::min({a, b, c});
}

double m_prime_supremum_gevrey(int n, double p) { return 0.5 - n / (4.0 * p); }

std::vector<std::string> validate_params(const SpaceParams& x, Theorem theorem) {
  std::vector<std::string> bad;
  const bool q_inf = std::isinf(x.q);
  if (x.n != 2 && x.n != 3) bad.push_back("n must be 2 or 3");
  if (!(x.q >= 1.0)) bad.push_back("1 <= q <= infinity");
  if (!(x.r > 1.0 && x.r < INFINITY)) bad.push_back("1 < r < infinity");
  if (theorem == Theorem::well_posedness) {
    if (!(x.p > 1.0 && x.p < INFINITY)) bad.push_back("1 < p < infinity");
    if (!(x.m > 1.0)) bad.push_back("m > 1");
    if (q_inf) {
      if (!(x.m_prime > 0.0 && x.m_prime < 0.5)) bad.push_back("q = infinity requires 0 < m' < 1/2");
    } else if (!(x.m_prime >= 0.0 && x.m_prime < 0.5)) {
      bad.push_back("1 <= q < infinity requires 0 <= m' < 1/2");
    }
    return bad;
  }
  if (!(x.p > x.n && x.p < INFINITY)) bad.push_back("n < p < infinity");
  if (!(x.m > 1.0 - x.n / (2.0 * x.p))) bad.push_back("m > 1 - n/(2p)");
  const double mps = m_prime_supremum_gevrey(x.n, x.p);
  if (q_inf) {
    if (!(x.m_prime > 0.0 && x.m_prime < mps)) bad.push_back("q = infinity requires 0 < m' < 1/2 - n/(4p)");
  } else if (!(x.m_prime >= 0.0 && x.m_prime < mps)) {
    bad.push_back("1 <= q < infinity requires 0 <= m' < 1/2 - n/(4p)");
  }
  const double gs = gamma_supremum(x.n, x.p, x.m);
  if (!(x.gamma > 0.0 && x.gamma < gs)) {
    std::ostringstream os;
    os << "0 < gamma < min{m/(2n+2) - 1/(4n+4) + n/(8pn+8p), 1/(4n+4) - n/(4pn+4p), m/(6n+6)} = " << gs;
    bad.push_back(os.str());
  }
  return bad;
}

}  // namespace mwns
