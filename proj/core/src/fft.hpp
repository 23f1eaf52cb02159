#pragma once

#include <complex>
#include <cstddef>

namespace gdnls::detail {

// Unnormalized DFTs in FFTW sign convention; in and out must be distinct.
//   forward:  out[k] = sum_j in[j] exp(-2 pi i j k / M)
//   backward: out[j] = sum_k in[k] exp(+2 pi i j k / M)
void fft_forward(std::size_t m, const std::complex<double>* in, std::complex<double>* out);
void fft_backward(std::size_t m, const std::complex<double>* in, std::complex<double>* out);

}  // namespace gdnls::detail
