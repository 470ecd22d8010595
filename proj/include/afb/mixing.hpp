#pragma once

#include <optional>
#include <vector>

#include "afb/waveform.hpp"

namespace afb {

struct MixtureSpec {
  int num_sources = 2;
  double speaker_snr_db = 0.0;              // level of source 1 vs source 2
  std::optional<double> noise_snr_db;       // loudest speaker vs noise
};

struct MixResult {
  Waveform mixture;
  std::vector<Waveform> scaled_refs;        // sources after gain, for SI-SDRi
  std::optional<Waveform> scaled_noise;
};

// s1 stays at unit gain; s2 is rescaled so that
// 10*log10(P(s1)/P(s2')) == speaker_snr_db. If noise is given it is rescaled
// so its SNR against the loudest scaled speaker equals noise_snr_db. All
// signals are truncated to the common length first; powers are full-length
// mean squares.
MixResult mix_sources(const Waveform& s1, const Waveform& s2,
                      double speaker_snr_db, const Waveform* noise = nullptr,
                      std::optional<double> noise_snr_db = std::nullopt);

}  // namespace afb
