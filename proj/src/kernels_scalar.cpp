#include <algorithm>
#include <cmath>

#include "mwns/kernels.hpp"

namespace mwns::kernels {
namespace {

void exp_scaled(double* out, const double* in, double scale, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(scale * in[i]);
}

void scale_complex(std::complex<double>* data, const double* factor, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) data[i] *= factor[i];
}

void accumulate_combination(std::complex<double>* acc, const double* w, double a,
                            const std::complex<double>* x, double b,
                            const std::complex<double>* y, double c,
                            const std::complex<double>* z, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += w[i] * (a * x[i] + b * y[i] + c * z[i]);
}

void multiply_add(double* out, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] += a[i] * b[i];
}

void weighted_power_add(double* acc, const double* f, double w, double q, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += w * std::pow(std::abs(f[i]), q);
}

void weighted_max(double* acc, const double* f, double w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] = std::max(acc[i], w * std::abs(f[i]));
}

}  // namespace

const Table& scalar_table() {
  static const Table t{exp_scaled,   scale_complex,      accumulate_combination,
                       multiply_add, weighted_power_add, weighted_max};
  return t;
}

}  // namespace mwns::kernels
