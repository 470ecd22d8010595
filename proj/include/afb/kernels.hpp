#pragma once

#include <cstddef>

// Data-parallel inner loops shared by the transforms, masking and metrics.
// Every kernel has a scalar reference implementation; on x86-64 an AVX2+FMA
// variant is selected at runtime when the CPU supports it. The dispatched
// entry points below agree with the scalar reference to tight relative
// tolerance (equivalence-tested; reduction order differs, so not bit-equal).

namespace afb::kernels {

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
// re = sum x*br, im = sum x*bi  (real signal against a split-complex filter)
void dot_ri(const double* x, const double* br, const double* bi, std::size_t n,
            double* re, double* im);
// acc[t] += wr*vr[t] - wi*vi[t]   (real part of a complex-weighted row)
void accum_mixed(double* acc, const double* vr, const double* vi, double wr,
                 double wi, std::size_t n);
// split-complex elementwise product: c = a * b
void cmul(const double* ar, const double* ai, const double* br,
          const double* bi, double* cr, double* ci, std::size_t n);
void mul(const double* a, const double* b, double* out, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double sum_squares(const double* a, std::size_t n);
void magnitude(const double* re, const double* im, double* out, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
bool supported();  // runtime CPU check (AVX2 and FMA)
double dot(const double* a, const double* b, std::size_t n);
void dot_ri(const double* x, const double* br, const double* bi, std::size_t n,
            double* re, double* im);
void accum_mixed(double* acc, const double* vr, const double* vi, double wr,
                 double wi, std::size_t n);
void cmul(const double* ar, const double* ai, const double* br,
          const double* bi, double* cr, double* ci, std::size_t n);
void mul(const double* a, const double* b, double* out, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double sum_squares(const double* a, std::size_t n);
void magnitude(const double* re, const double* im, double* out, std::size_t n);
}  // namespace avx2
#endif

// Dispatched entry points. Selection happens once, before main().
double dot(const double* a, const double* b, std::size_t n);
void dot_ri(const double* x, const double* br, const double* bi, std::size_t n,
            double* re, double* im);
void accum_mixed(double* acc, const double* vr, const double* vi, double wr,
                 double wi, std::size_t n);
void cmul(const double* ar, const double* ai, const double* br,
          const double* bi, double* cr, double* ci, std::size_t n);
void mul(const double* a, const double* b, double* out, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double sum_squares(const double* a, std::size_t n);
void magnitude(const double* re, const double* im, double* out, std::size_t n);

const char* active_backend();  // "avx2" or "scalar"

}  // namespace afb::kernels
