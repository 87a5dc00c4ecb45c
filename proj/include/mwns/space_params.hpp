#pragma once

#include <optional>
#include <string>
#include <vector>

namespace mwns {

// Function-space parameters. q = r = infinity are stored as +inf.
struct SpaceParams {
  int n = 2;
  double p = 4.0;
  double q = 2.0;
  double r = 2.0;
  double m = 1.2;
  double m_prime = 0.1;
  double gamma = 0.0;
  std::optional<double> s;  // smoothness; defaults to n/p - 1

  double smoothness() const { return s ? *s : n / p - 1.0; }
};

enum class Theorem { well_posedness, gevrey };

// Violated clauses, one string each; empty when the tuple is admissible.
std::vector<std::string> validate_params(const SpaceParams& params, Theorem theorem);

// Supremum of admissible gamma for the Gevrey theorem.
double gamma_supremum(int n, double p, double m);
// Supremum of admissible m' for the Gevrey theorem, 1/2 - n/(4p).
double m_prime_supremum_gevrey(int n, double p);

}  // namespace mwns
