#include "afb/kernels.hpp"

#include <cmath>

namespace afb::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void dot_ri(const double* x, const double* br, const double* bi, std::size_t n,
            double* re, double* im) {
  double sr = 0.0, si = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sr += x[i] * br[i];
    si += x[i] * bi[i];
  }
  *re = sr;
  *im = si;
}

void accum_mixed(double* acc, const double* vr, const double* vi, double wr,
                 double wi, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += wr * vr[i] - wi * vi[i];
}

void cmul(const double* ar, const double* ai, const double* br,
          const double* bi, double* cr, double* ci, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ar[i] * br[i] - ai[i] * bi[i];
    const double m = ar[i] * bi[i] + ai[i] * br[i];
    cr[i] = r;
    ci[i] = m;
  }
}

void mul(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double sum_squares(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
  return s;
}

void magnitude(const double* re, const double* im, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = std::sqrt(re[i] * re[i] + im[i] * im[i]);
}

}  // namespace afb::kernels::scalar
