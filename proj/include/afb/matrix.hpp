#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace afb {

// Row-major dense real matrix.
struct RealMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  RealMatrix() = default;
  RealMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  double* row(std::size_t r) { return data.data() + r * cols; }
  const double* row(std::size_t r) const { return data.data() + r * cols; }
};

// Split-plane complex matrix (separate re/im arrays, row-major). The split
// layout keeps the SIMD kernels free of interleaved shuffles.
struct ComplexMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> re;
  std::vector<double> im;

  ComplexMatrix() = default;
  ComplexMatrix(std::size_t r, std::size_t c)
      : rows(r), cols(c), re(r * c, 0.0), im(r * c, 0.0) {}

  std::complex<double> at(std::size_t r, std::size_t c) const {
    return {re[r * cols + c], im[r * cols + c]};
  }
  void set(std::size_t r, std::size_t c, std::complex<double> z) {
    re[r * cols + c] = z.real();
    im[r * cols + c] = z.imag();
  }
  double* row_re(std::size_t r) { return re.data() + r * cols; }
  double* row_im(std::size_t r) { return im.data() + r * cols; }
  const double* row_re(std::size_t r) const { return re.data() + r * cols; }
  const double* row_im(std::size_t r) const { return im.data() + r * cols; }
};

}  // namespace afb
