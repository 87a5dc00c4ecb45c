#pragma once

// Inner loops with a scalar reference and an AVX2 variant. The variant is
// picked once at startup from CPUID; MWNS_ISA=scalar in the environment or
// force_isa() pins the reference path.

#include <complex>
#include <cstddef>
#include <string_view>

namespace mwns::kernels {

enum class Isa { scalar, avx2 };

struct Table {
  // out[i] = exp(scale * in[i])
  void (*exp_scaled)(double* out, const double* in, double scale, std::size_t n);
  // data[i] *= factor[i]
  void (*scale_complex)(std::complex<double>* data, const double* factor, std::size_t n);
  // acc[i] += w[i] * (a x[i] + b y[i] + c z[i])
  void (*accumulate_combination)(std::complex<double>* acc, const double* w, double a,
                                 const std::complex<double>* x, double b,
                                 const std::complex<double>* y, double c,
                                 const std::complex<double>* z, std::size_t n);
  // out[i] += a[i] * b[i]
  void (*multiply_add)(double* out, const double* a, const double* b, std::size_t n);
  // acc[i] += w * |f[i]|^q
  void (*weighted_power_add)(double* acc, const double* f, double w, double q, std::size_t n);
  // acc[i] = max(acc[i], w * |f[i]|)
  void (*weighted_max)(double* acc, const double* f, double w, std::size_t n);
};

const Table& scalar_table();
// nullptr when the AVX2 variant was not compiled or the CPU lacks AVX2/FMA.
const Table* avx2_table();

const Table& active();
Isa active_isa();
void force_isa(Isa isa);
std::string_view isa_name(Isa isa);

}  // namespace mwns::kernels
