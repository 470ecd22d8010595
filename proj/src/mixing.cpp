#include "afb/mixing.hpp"

#include <algorithm>
#include <cmath>

#include "afb/common.hpp"
#include "afb/kernels.hpp"

namespace afb {

namespace {

double mean_power(const std::vector<double>& x) {
  return kernels::sum_squares(x.data(), x.size()) /
         static_cast<double>(x.size());
}

}  // namespace

MixResult mix_sources(const Waveform& s1, const Waveform& s2,
                      double speaker_snr_db, const Waveform* noise,
                      std::optional<double> noise_snr_db) {
  validate_waveform(s1, "source 1");
  validate_waveform(s2, "source 2");
  if (s1.sample_rate != s2.sample_rate)
    throw Error(ErrorCategory::config, "source sample rates differ");
  if (noise) {
    validate_waveform(*noise, "noise");
    if (noise->sample_rate != s1.sample_rate)
      throw Error(ErrorCategory::config, "noise sample rate differs");
    if (!noise_snr_db)
      throw Error(ErrorCategory::config,
                  "noise given without a noise SNR");
  }

  std::size_t len = std::min(s1.size(), s2.size());
  if (noise) len = std::min(len, noise->size());

  MixResult r;
  r.scaled_refs.resize(2);
  r.scaled_refs[0].sample_rate = s1.sample_rate;
  r.scaled_refs[0].samples.assign(s1.samples.begin(), s1.samples.begin() + len);
  r.scaled_refs[1].sample_rate = s1.sample_rate;
  r.scaled_refs[1].samples.assign(s2.samples.begin(), s2.samples.begin() + len);

  const double p1 = mean_power(r.scaled_refs[0].samples);
  const double p2 = mean_power(r.scaled_refs[1].samples);
  if (p1 <= 0.0 || p2 <= 0.0)
    throw Error(ErrorCategory::numeric, "degenerate zero-power source");

  // P(s1)/P(g*s2) = 10^(snr/10)  =>  g = sqrt(p1 / (p2 * 10^(snr/10)))
  const double g2 = std::sqrt(p1 / (p2 * std::pow(10.0, speaker_snr_db / 10.0)));
  for (double& v : r.scaled_refs[1].samples) v *= g2;

  r.mixture.sample_rate = s1.sample_rate;
  r.mixture.samples = r.scaled_refs[0].samples;
  kernels::axpy(1.0, r.scaled_refs[1].samples.data(),
                r.mixture.samples.data(), len);

  if (noise) {
    Waveform n;
    n.sample_rate = s1.sample_rate;
    n.samples.assign(noise->samples.begin(), noise->samples.begin() + len);
    const double pn = mean_power(n.samples);
    if (pn <= 0.0)
      throw Error(ErrorCategory::numeric, "degenerate zero-power noise");
    const double p_loud = std::max(p1, mean_power(r.scaled_refs[1].samples));
    const double gn =
        std::sqrt(p_loud / (pn * std::pow(10.0, *noise_snr_db / 10.0)));
    for (double& v : n.samples) v *= gn;
    kernels::axpy(1.0, n.samples.data(), r.mixture.samples.data(), len);
    r.scaled_noise = std::move(n);
  }
  return r;
}

}  // namespace afb
