// AVX2+FMA kernel variants. Compiled with -mavx2 -mfma; only reached after
// the runtime CPU check in kernels_dispatch.cpp.

#include "afb/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

namespace afb::kernels::avx2 {

bool supported() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

namespace {
inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}
}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void dot_ri(const double* x, const double* br, const double* bi, std::size_t n,
            double* re, double* im) {
  __m256d ar = _mm256_setzero_pd();
  __m256d ai = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    ar = _mm256_fmadd_pd(xv, _mm256_loadu_pd(br + i), ar);
    ai = _mm256_fmadd_pd(xv, _mm256_loadu_pd(bi + i), ai);
  }
  double sr = hsum(ar), si = hsum(ai);
  for (; i < n; ++i) {
    sr += x[i] * br[i];
    si += x[i] * bi[i];
  }
  *re = sr;
  *im = si;
}

void accum_mixed(double* acc, const double* vr, const double* vi, double wr,
                 double wi, std::size_t n) {
  const __m256d wrv = _mm256_set1_pd(wr);
  const __m256d wiv = _mm256_set1_pd(wi);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_loadu_pd(acc + i);
    a = _mm256_fmadd_pd(wrv, _mm256_loadu_pd(vr + i), a);
    a = _mm256_fnmadd_pd(wiv, _mm256_loadu_pd(vi + i), a);
    _mm256_storeu_pd(acc + i, a);
  }
  for (; i < n; ++i) acc[i] += wr * vr[i] - wi * vi[i];
}

void cmul(const double* ar, const double* ai, const double* br,
          const double* bi, double* cr, double* ci, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d arv = _mm256_loadu_pd(ar + i);
    const __m256d aiv = _mm256_loadu_pd(ai + i);
    const __m256d brv = _mm256_loadu_pd(br + i);
    const __m256d biv = _mm256_loadu_pd(bi + i);
    _mm256_storeu_pd(cr + i, _mm256_fmsub_pd(arv, brv, _mm256_mul_pd(aiv, biv)));
    _mm256_storeu_pd(ci + i, _mm256_fmadd_pd(arv, biv, _mm256_mul_pd(aiv, brv)));
  }
  for (; i < n; ++i) {
    const double r = ar[i] * br[i] - ai[i] * bi[i];
    const double m = ar[i] * bi[i] + ai[i] * br[i];
    cr[i] = r;
    ci[i] = m;
  }
}

void mul(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d av = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d yv = _mm256_loadu_pd(y + i);
    yv = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), yv);
    _mm256_storeu_pd(y + i, yv);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

double sum_squares(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(a + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i] * a[i];
  return s;
}

void magnitude(const double* re, const double* im, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_loadu_pd(re + i);
    const __m256d m = _mm256_loadu_pd(im + i);
    _mm256_storeu_pd(out + i, _mm256_sqrt_pd(_mm256_fmadd_pd(r, r, _mm256_mul_pd(m, m))));
  }
  for (; i < n; ++i) out[i] = std::sqrt(re[i] * re[i] + im[i] * im[i]);
}

}  // namespace afb::kernels::avx2

#endif  // x86-64
