#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "afb/kernels.hpp"
#include "afb/synth.hpp"

using namespace afb;

namespace {

std::vector<double> random_vec(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(-1.0, 1.0);
  return v;
}

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1.0});
}

}  // namespace

TEST_CASE("scalar kernels against plain formulas") {
  Rng rng(1);
  const auto a = random_vec(rng, 37);
  const auto b = random_vec(rng, 37);
  double expect = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) expect += a[i] * b[i];
  CHECK(kernels::scalar::dot(a.data(), b.data(), a.size()) ==
        doctest::Approx(expect).epsilon(1e-14));

  double ss = 0.0;
  for (double v : a) ss += v * v;
  CHECK(kernels::scalar::sum_squares(a.data(), a.size()) ==
        doctest::Approx(ss).epsilon(1e-14));
}

#if defined(__x86_64__) || defined(_M_X64)
TEST_CASE("avx2 variants agree with scalar reference") {
  if (!kernels::avx2::supported()) return;  // nothing to compare on this CPU
  Rng rng(2);
  // cover remainders around the vector width
  for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 33u, 64u, 67u,
                        255u, 1024u}) {
    const auto x = random_vec(rng, n);
    const auto y = random_vec(rng, n);
    const auto z = random_vec(rng, n);
    const auto w = random_vec(rng, n);

    CHECK(close_rel(kernels::avx2::dot(x.data(), y.data(), n),
                    kernels::scalar::dot(x.data(), y.data(), n), 1e-12));
    CHECK(close_rel(kernels::avx2::sum_squares(x.data(), n),
                    kernels::scalar::sum_squares(x.data(), n), 1e-12));

    double r1, i1, r2, i2;
    kernels::avx2::dot_ri(x.data(), y.data(), z.data(), n, &r1, &i1);
    kernels::scalar::dot_ri(x.data(), y.data(), z.data(), n, &r2, &i2);
    CHECK(close_rel(r1, r2, 1e-12));
    CHECK(close_rel(i1, i2, 1e-12));

    std::vector<double> acc_a(n, 0.5), acc_b(n, 0.5);
    kernels::avx2::accum_mixed(acc_a.data(), x.data(), y.data(), 1.7, -0.3, n);
    kernels::scalar::accum_mixed(acc_b.data(), x.data(), y.data(), 1.7, -0.3, n);
    for (std::size_t i = 0; i < n; ++i) CHECK(close_rel(acc_a[i], acc_b[i], 1e-13));

    std::vector<double> cr_a(n), ci_a(n), cr_b(n), ci_b(n);
    kernels::avx2::cmul(x.data(), y.data(), z.data(), w.data(), cr_a.data(),
                        ci_a.data(), n);
    kernels::scalar::cmul(x.data(), y.data(), z.data(), w.data(), cr_b.data(),
                          ci_b.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(close_rel(cr_a[i], cr_b[i], 1e-13));
      CHECK(close_rel(ci_a[i], ci_b[i], 1e-13));
    }

    std::vector<double> m_a(n), m_b(n);
    kernels::avx2::magnitude(x.data(), y.data(), m_a.data(), n);
    kernels::scalar::magnitude(x.data(), y.data(), m_b.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(close_rel(m_a[i], m_b[i], 1e-13));

    std::vector<double> y_a = y, y_b = y;
    kernels::avx2::axpy(0.77, x.data(), y_a.data(), n);
    kernels::scalar::axpy(0.77, x.data(), y_b.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(close_rel(y_a[i], y_b[i], 1e-13));

    std::vector<double> p_a(n), p_b(n);
    kernels::avx2::mul(x.data(), y.data(), p_a.data(), n);
    kernels::scalar::mul(x.data(), y.data(), p_b.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(p_a[i] == p_b[i]);
  }
}
#endif

TEST_CASE("dispatched entry points agree with scalar") {
  Rng rng(3);
  const std::size_t n = 101;
  const auto x = random_vec(rng, n);
  const auto y = random_vec(rng, n);
  CHECK(close_rel(kernels::dot(x.data(), y.data(), n),
                  kernels::scalar::dot(x.data(), y.data(), n), 1e-12));
  INFO("active backend: ", kernels::active_backend());
  CHECK((std::string(kernels::active_backend()) == "avx2" ||
         std::string(kernels::active_backend()) == "scalar"));
}
