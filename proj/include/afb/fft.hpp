#pragma once

#include <cstddef>

// Thin wrapper over FFTW's complex transforms, with a plan cache keyed by
// size. Split re/im buffers in and out; any size n >= 1.

namespace afb::fft {

// X_k = sum_t x_t e^{-2pi i k t / n}
void forward(const double* re, const double* im, double* out_re,
             double* out_im, std::size_t n);

// x_t = (1/n) sum_k X_k e^{+2pi i k t / n}
void inverse(const double* re, const double* im, double* out_re,
             double* out_im, std::size_t n);

}  // namespace afb::fft
