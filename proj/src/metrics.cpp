#include "afb/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "afb/common.hpp"
#include "afb/kernels.hpp"

namespace afb {

namespace {

std::vector<double> zero_mean(const std::vector<double>& x) {
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - mean;
  return out;
}

}  // namespace

double si_sdr(const Waveform& est, const Waveform& ref) {
  validate_waveform(est, "estimate");
  validate_waveform(ref, "reference");
  if (est.size() != ref.size())
    throw Error(ErrorCategory::shape, "estimate/reference length mismatch");

  const std::vector<double> e = zero_mean(est.samples);
  const std::vector<double> r = zero_mean(ref.samples);
  const std::size_t n = e.size();

  const double rr = kernels::sum_squares(r.data(), n);
  if (rr <= 0.0)
    throw Error(ErrorCategory::numeric, "zero-power reference");
  const double er = kernels::dot(e.data(), r.data(), n);
  const double alpha = er / rr;

  const double target = alpha * alpha * rr;  // |alpha r|^2
  // residual = |e|^2 - |alpha r|^2 computed stably as an explicit difference
  double resid = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = e[i] - alpha * r[i];
    resid += d * d;
  }
  if (target <= 0.0) return -kSiSdrMax;  // orthogonal estimate
  if (resid < 1e-30 * target) return kSiSdrMax;
  return 10.0 * std::log10(target / resid);
}

double si_sdr_improvement(const Waveform& est, const Waveform& ref,
                          const Waveform& mixture) {
  return si_sdr(est, ref) - si_sdr(mixture, ref);
}

ScoreReport pit_score(const std::vector<Waveform>& estimates,
                      const std::vector<Waveform>& references,
                      const Waveform& mixture) {
  const std::size_t c = references.size();
  if (estimates.size() != c)
    throw Error(ErrorCategory::shape, "estimate/reference count mismatch");
  if (c == 0) throw Error(ErrorCategory::config, "no sources to score");
  if (c > 6)
    throw Error(ErrorCategory::config,
                "permutation search limited to 6 sources");

  // pairwise[i][j] = si_sdr(estimate j, reference i)
  std::vector<std::vector<double>> pairwise(c, std::vector<double>(c));
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < c; ++j)
      pairwise[i][j] = si_sdr(estimates[j], references[i]);

  std::vector<std::size_t> perm(c), best(c);
  std::iota(perm.begin(), perm.end(), 0);
  double best_sum = -std::numeric_limits<double>::infinity();
  do {
    double sum = 0.0;
    for (std::size_t i = 0; i < c; ++i) sum += pairwise[i][perm[i]];
    if (sum > best_sum) {
      best_sum = sum;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  ScoreReport rep;
  rep.permutation = best;
  rep.per_source_si_sdr.resize(c);
  rep.per_source_si_sdri.resize(c);
  double mean = 0.0;
  for (std::size_t i = 0; i < c; ++i) {
    rep.per_source_si_sdr[i] = pairwise[i][best[i]];
    rep.per_source_si_sdri[i] =
        rep.per_source_si_sdr[i] - si_sdr(mixture, references[i]);
    mean += rep.per_source_si_sdri[i];
  }
  rep.mean_si_sdri = mean / static_cast<double>(c);
  return rep;
}

}  // namespace afb
