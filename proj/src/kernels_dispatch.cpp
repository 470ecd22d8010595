#include "afb/kernels.hpp"

namespace afb::kernels {

namespace {

struct Backend {
  double (*dot)(const double*, const double*, std::size_t);
  void (*dot_ri)(const double*, const double*, const double*, std::size_t,
                 double*, double*);
  void (*accum_mixed)(double*, const double*, const double*, double, double,
                      std::size_t);
  void (*cmul)(const double*, const double*, const double*, const double*,
               double*, double*, std::size_t);
  void (*mul)(const double*, const double*, double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  double (*sum_squares)(const double*, std::size_t);
  void (*magnitude)(const double*, const double*, double*, std::size_t);
  const char* name;
};

constexpr Backend kScalar = {
    scalar::dot,  scalar::dot_ri, scalar::accum_mixed, scalar::cmul,
    scalar::mul,  scalar::axpy,   scalar::sum_squares, scalar::magnitude,
    "scalar"};

#if defined(__x86_64__) || defined(_M_X64)
constexpr Backend kAvx2 = {
    avx2::dot,  avx2::dot_ri, avx2::accum_mixed, avx2::cmul,
    avx2::mul,  avx2::axpy,   avx2::sum_squares, avx2::magnitude,
    "avx2"};
#endif

Backend select() {
#if defined(__x86_64__) || defined(_M_X64)
  if (avx2::supported()) return kAvx2;
#endif
  return kScalar;
}

const Backend g_backend = select();

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  return g_backend.dot(a, b, n);
}
void dot_ri(const double* x, const double* br, const double* bi, std::size_t n,
            double* re, double* im) {
  g_backend.dot_ri(x, br, bi, n, re, im);
}
void accum_mixed(double* acc, const double* vr, const double* vi, double wr,
                 double wi, std::size_t n) {
  g_backend.accum_mixed(acc, vr, vi, wr, wi, n);
}
void cmul(const double* ar, const double* ai, const double* br,
          const double* bi, double* cr, double* ci, std::size_t n) {
  g_backend.cmul(ar, ai, br, bi, cr, ci, n);
}
void mul(const double* a, const double* b, double* out, std::size_t n) {
  g_backend.mul(a, b, out, n);
}
void axpy(double alpha, const double* x, double* y, std::size_t n) {
  g_backend.axpy(alpha, x, y, n);
}
double sum_squares(const double* a, std::size_t n) {
  return g_backend.sum_squares(a, n);
}
void magnitude(const double* re, const double* im, double* out, std::size_t n) {
  g_backend.magnitude(re, im, out, n);
}

const char* active_backend() { return g_backend.name; }

}  // namespace afb::kernels
