#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "afb/waveform.hpp"

namespace afb {

// Deterministic random stream. mt19937_64 is bit-exact across platforms by
// the standard; the float mappings below avoid the implementation-defined
// library distributions so the same seed always produces the same bytes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  double uniform() {  // [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t uniform_index(std::uint64_t n) {  // [0, n)
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
  }

  double gaussian() {  // Box-Muller
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  std::mt19937_64 engine_;
};

// Harmonic complex with slow amplitude modulation: a voiced-speech stand-in.
Waveform synth_harmonic_source(Rng& rng, double seconds, int sample_rate);

// White noise through a seeded biquad bandpass: a fricative-like stand-in.
Waveform synth_noise_band_source(Rng& rng, double seconds, int sample_rate);

// Low-passed white noise used as the additive noise track.
Waveform synth_ambient_noise(Rng& rng, double seconds, int sample_rate);

// Seeded white noise, used for gain calibration.
Waveform synth_white_noise(Rng& rng, double seconds, int sample_rate);

struct SyntheticMixture {
  Waveform mixture;
  std::vector<Waveform> refs;
  std::optional<Waveform> noise;
  double speaker_snr_db = 0.0;
  std::optional<double> noise_snr_db;
};

SyntheticMixture make_synthetic_mixture(
    Rng& rng, double seconds, int sample_rate,
    std::pair<double, double> speaker_snr_range_db,
    std::optional<std::pair<double, double>> noise_snr_range_db);

}  // namespace afb
