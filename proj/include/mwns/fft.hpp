#pragma once

#include <span>

#include "mwns/aligned.hpp"

namespace mwns::fft {

// Unnormalized in-place n-dimensional DFT over a row-major array.
// forward uses exp(-i...), backward uses exp(+i...). `data` must come from an
// aligned container (cvec); plans are cached per shape.
void forward(cvec& data, std::span<const int> dims);
void backward(cvec& data, std::span<const int> dims);

// Signed frequency of FFT-ordered index i on an axis of length n.
constexpr int signed_frequency(int i, int n) { return i < (n + 1) / 2 ? i : i - n; }
// FFT-ordered index of signed frequency m, assuming |m| <= n/2.
constexpr int index_of(int m, int n) { return m >= 0 ? m : m + n; }

}  // namespace mwns::fft
