#include "afb/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

#include "afb/common.hpp"

namespace afb::fft {

namespace {

// One cached plan per (size, direction). Plans are created against
// fftw_malloc'd scratch and re-executed on per-call buffers of identical
// layout via the new-array interface.
struct PlanCache {
  std::mutex mu;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans;

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, sign);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    fftw_complex* buf = fftw_alloc_complex(n);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    if (!p) throw Error(ErrorCategory::numeric, "fftw plan creation failed");
    plans.emplace(key, p);
    return p;
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void run(const double* re, const double* im, double* out_re, double* out_im,
         std::size_t n, int sign, bool normalize) {
  if (n == 0) throw Error(ErrorCategory::config, "fft size must be >= 1");
  fftw_plan p = cache().get(n, sign);
  fftw_complex* buf = fftw_alloc_complex(n);
  for (std::size_t i = 0; i < n; ++i) {
    buf[i][0] = re[i];
    buf[i][1] = im ? im[i] : 0.0;
  }
  fftw_execute_dft(p, buf, buf);
  const double scale = normalize ? 1.0 / static_cast<double>(n) : 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    out_re[i] = buf[i][0] * scale;
    out_im[i] = buf[i][1] * scale;
  }
  fftw_free(buf);
}

}  // namespace

void forward(const double* re, const double* im, double* out_re,
             double* out_im, std::size_t n) {
  run(re, im, out_re, out_im, n, FFTW_FORWARD, false);
}

void inverse(const double* re, const double* im, double* out_re,
             double* out_im, std::size_t n) {
  run(re, im, out_re, out_im, n, FFTW_BACKWARD, true);
}

}  // namespace afb::fft
