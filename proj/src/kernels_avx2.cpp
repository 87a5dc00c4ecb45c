#include <immintrin.h>

#include <cmath>

#include "mwns/kernels.hpp"

namespace mwns::kernels {
namespace {

// exp on [-745, 709.7]: n = round(x/ln2), r = x - n ln2 split in two parts,
// degree-13 Taylor polynomial on |r| <= ln2/2, then 2^n applied in two halves
// so subnormal results round once.
inline __m256d exp_pd(__m256d x) {
  const __m256d hi = _mm256_set1_pd(709.78);
  const __m256d lo = _mm256_set1_pd(-745.2);
  const __m256d over = _mm256_cmp_pd(x, hi, _CMP_GT_OQ);
  const __m256d under = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
  x = _mm256_min_pd(_mm256_max_pd(x, lo), hi);

  const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
  const __m256d nf = _mm256_round_pd(_mm256_mul_pd(x, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(nf, ln2_hi, x);
  r = _mm256_fnmadd_pd(nf, ln2_lo, r);

  static constexpr double c[14] = {1.0,
                                   1.0,
                                   1.0 / 2,
                                   1.0 / 6,
                                   1.0 / 24,
                                   1.0 / 120,
                                   1.0 / 720,
                                   1.0 / 5040,
                                   1.0 / 40320,
                                   1.0 / 362880,
                                   1.0 / 3628800,
                                   1.0 / 39916800,
                                   1.0 / 479001600,
                                   1.0 / 6227020800.0};
  __m256d p = _mm256_set1_pd(c[13]);
  for (int k = 12; k >= 0; --k) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(c[k]));

  // integer exponent, split as n = n1 + n2 with both halves in the normal range
  const __m128i n32 = _mm256_cvtpd_epi32(nf);
  const __m128i n1 = _mm_srai_epi32(n32, 1);
  const __m128i n2 = _mm_sub_epi32(n32, n1);
  const __m256i bias = _mm256_set1_epi64x(1023);
  const __m256i e1 = _mm256_slli_epi64(_mm256_add_epi64(_mm256_cvtepi32_epi64(n1), bias), 52);
  const __m256i e2 = _mm256_slli_epi64(_mm256_add_epi64(_mm256_cvtepi32_epi64(n2), bias), 52);
  p = _mm256_mul_pd(p, _mm256_castsi256_pd(e1));
  p = _mm256_mul_pd(p, _mm256_castsi256_pd(e2));

  p = _mm256_blendv_pd(p, _mm256_set1_pd(INFINITY), over);
  p = _mm256_blendv_pd(p, _mm256_setzero_pd(), under);
  return p;
}

void exp_scaled(double* out, const double* in, double scale, std::size_t n) {
  const __m256d s = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, exp_pd(_mm256_mul_pd(s, _mm256_loadu_pd(in + i))));
  for (; i < n; ++i) out[i] = std::exp(scale * in[i]);
}

void scale_complex(std::complex<double>* data, const double* factor, std::size_t n) {
  auto* d = reinterpret_cast<double*>(data);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    // {f0, f0, f1, f1}
    const __m128d f = _mm_loadu_pd(factor + i);
    const __m256d ff = _mm256_permute4x64_pd(_mm256_castpd128_pd256(f), 0x50);
    _mm256_storeu_pd(d + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(d + 2 * i), ff));
  }
  for (; i < n; ++i) data[i] *= factor[i];
}

void accumulate_combination(std::complex<double>* acc, const double* w, double a,
                            const std::complex<double>* x, double b,
                            const std::complex<double>* y, double c,
                            const std::complex<double>* z, std::size_t n) {
  auto* pa = reinterpret_cast<double*>(acc);
  const auto* px = reinterpret_cast<const double*>(x);
  const auto* py = reinterpret_cast<const double*>(y);
  const auto* pz = reinterpret_cast<const double*>(z);
  const __m256d va = _mm256_set1_pd(a), vb = _mm256_set1_pd(b), vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m128d f = _mm_loadu_pd(w + i);
    const __m256d ww = _mm256_permute4x64_pd(_mm256_castpd128_pd256(f), 0x50);
    __m256d comb = _mm256_mul_pd(va, _mm256_loadu_pd(px + 2 * i));
    comb = _mm256_fmadd_pd(vb, _mm256_loadu_pd(py + 2 * i), comb);
    comb = _mm256_fmadd_pd(vc, _mm256_loadu_pd(pz + 2 * i), comb);
    _mm256_storeu_pd(pa + 2 * i, _mm256_fmadd_pd(ww, comb, _mm256_loadu_pd(pa + 2 * i)));
  }
  for (; i < n; ++i) acc[i] += w[i] * (a * x[i] + b * y[i] + c * z[i]);
}

void multiply_add(double* out, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i),
                                              _mm256_loadu_pd(out + i)));
  }
  for (; i < n; ++i) out[i] += a[i] * b[i];
}

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

void weighted_power_add(double* acc, const double* f, double w, double q, std::size_t n) {
  std::size_t i = 0;
  if (q == 1.0 || q == 2.0) {
    const __m256d vw = _mm256_set1_pd(w);
    for (; i + 4 <= n; i += 4) {
      __m256d v = abs_pd(_mm256_loadu_pd(f + i));
      if (q == 2.0) v = _mm256_mul_pd(v, v);
      _mm256_storeu_pd(acc + i, _mm256_fmadd_pd(vw, v, _mm256_loadu_pd(acc + i)));
    }
  }
  for (; i < n; ++i) acc[i] += w * std::pow(std::abs(f[i]), q);
}

void weighted_max(double* acc, const double* f, double w, std::size_t n) {
  const __m256d vw = _mm256_set1_pd(w);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_mul_pd(vw, abs_pd(_mm256_loadu_pd(f + i)));
    _mm256_storeu_pd(acc + i, _mm256_max_pd(_mm256_loadu_pd(acc + i), v));
  }
  for (; i < n; ++i) acc[i] = std::max(acc[i], w * std::abs(f[i]));
}

}  // namespace

const Table* avx2_table_impl() {
  static const Table t{exp_scaled,   scale_complex,      accumulate_combination,
                       multiply_add, weighted_power_add, weighted_max};
  return &t;
}

}  // namespace mwns::kernels
