#pragma once

#include <vector>

#include "afb/waveform.hpp"

namespace afb {

// Sentinel returned when the residual energy drops below 1e-30 relative;
// also the natural ceiling of the formula at that threshold. Comparisons
// treat it as maximal and it serializes as-is.
inline constexpr double kSiSdrMax = 300.0;

// Scale-invariant source-to-distortion ratio in dB. Both signals are
// mean-subtracted before the projection.
//   s_t = (<est,ref>/<ref,ref>) ref;  SI-SDR = 10 log10(|s_t|^2/|est-s_t|^2)
double si_sdr(const Waveform& est, const Waveform& ref);

// si_sdr(est, ref) - si_sdr(mixture, ref)
double si_sdr_improvement(const Waveform& est, const Waveform& ref,
                          const Waveform& mixture);

struct ScoreReport {
  std::vector<double> per_source_si_sdr;   // indexed by reference
  std::vector<double> per_source_si_sdri;
  std::vector<std::size_t> permutation;    // permutation[i] = estimate used for reference i
  double mean_si_sdri = 0.0;
};

// Exhaustive permutation-invariant scoring: evaluates all C! assignments of
// estimates to references, keeps the one with the best mean SI-SDR. C <= 6.
ScoreReport pit_score(const std::vector<Waveform>& estimates,
                      const std::vector<Waveform>& references,
                      const Waveform& mixture);

}  // namespace afb
