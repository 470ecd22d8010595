#include "afb/synth.hpp"

#include <cmath>
#include <numbers>

#include "afb/common.hpp"
#include "afb/mixing.hpp"

namespace afb {

namespace {

constexpr double kPi = std::numbers::pi;

// RBJ bandpass biquad (constant skirt gain).
std::vector<double> biquad_bandpass(const std::vector<double>& x,
                                    double center_hz, double q, int rate) {
  const double w0 = 2.0 * kPi * center_hz / static_cast<double>(rate);
  const double alpha = std::sin(w0) / (2.0 * q);
  const double b0 = alpha, b2 = -alpha;
  const double a0 = 1.0 + alpha, a1 = -2.0 * std::cos(w0), a2 = 1.0 - alpha;
  std::vector<double> y(x.size(), 0.0);
  double x1 = 0.0, x2 = 0.0, y1 = 0.0, y2 = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    const double out = (b0 * x[n] + b2 * x2 - a1 * y1 - a2 * y2) / a0;
    x2 = x1;
    x1 = x[n];
    y2 = y1;
    y1 = out;
    y[n] = out;
  }
  return y;
}

std::size_t sample_count(double seconds, int rate) {
  if (seconds <= 0.0 || rate <= 0)
    throw Error(ErrorCategory::config, "duration and rate must be positive");
  return static_cast<std::size_t>(seconds * rate + 0.5);
}

}  // namespace

Waveform synth_harmonic_source(Rng& rng, double seconds, int sample_rate) {
  const std::size_t n = sample_count(seconds, sample_rate);
  const double f0 = rng.uniform(90.0, 250.0);
  const int harmonics = 4 + static_cast<int>(rng.uniform_index(5));
  const double am_rate = rng.uniform(2.0, 5.0);
  const double am_phase = rng.uniform(0.0, 2.0 * kPi);
  std::vector<double> phases(static_cast<std::size_t>(harmonics));
  for (auto& p : phases) p = rng.uniform(0.0, 2.0 * kPi);

  Waveform w;
  w.sample_rate = sample_rate;
  w.samples.resize(n);
  const double nyquist = 0.45 * sample_rate;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / sample_rate;
    double v = 0.0;
    for (int h = 1; h <= harmonics; ++h) {
      const double f = f0 * h;
      if (f >= nyquist) break;
      v += std::cos(2.0 * kPi * f * t + phases[static_cast<std::size_t>(h - 1)]) / h;
    }
    const double am = 0.6 + 0.4 * std::cos(2.0 * kPi * am_rate * t + am_phase);
    w.samples[i] = 0.3 * v * am;
  }
  return w;
}

Waveform synth_noise_band_source(Rng& rng, double seconds, int sample_rate) {
  const std::size_t n = sample_count(seconds, sample_rate);
  std::vector<double> white(n);
  for (auto& v : white) v = rng.gaussian();
  const double center = rng.uniform(300.0, 2000.0);
  Waveform w;
  w.sample_rate = sample_rate;
  w.samples = biquad_bandpass(white, center, 1.5, sample_rate);
  for (auto& v : w.samples) v *= 0.3;
  return w;
}

Waveform synth_ambient_noise(Rng& rng, double seconds, int sample_rate) {
  const std::size_t n = sample_count(seconds, sample_rate);
  Waveform w;
  w.sample_rate = sample_rate;
  w.samples.resize(n);
  double state = 0.0;
  const double a = 0.95;  // one-pole lowpass
  for (std::size_t i = 0; i < n; ++i) {
    state = a * state + (1.0 - a) * rng.gaussian();
    w.samples[i] = 2.0 * state;
  }
  return w;
}

Waveform synth_white_noise(Rng& rng, double seconds, int sample_rate) {
  const std::size_t n = sample_count(seconds, sample_rate);
  Waveform w;
  w.sample_rate = sample_rate;
  w.samples.resize(n);
  for (auto& v : w.samples) v = rng.gaussian();
  return w;
}

SyntheticMixture make_synthetic_mixture(
    Rng& rng, double seconds, int sample_rate,
    std::pair<double, double> speaker_snr_range_db,
    std::optional<std::pair<double, double>> noise_snr_range_db) {
  SyntheticMixture out;
  const Waveform s1 = synth_harmonic_source(rng, seconds, sample_rate);
  const Waveform s2 = synth_noise_band_source(rng, seconds, sample_rate);
  out.speaker_snr_db =
      rng.uniform(speaker_snr_range_db.first, speaker_snr_range_db.second);

  std::optional<Waveform> noise;
  if (noise_snr_range_db) {
    out.noise_snr_db =
        rng.uniform(noise_snr_range_db->first, noise_snr_range_db->second);
    noise = synth_ambient_noise(rng, seconds, sample_rate);
  }

  MixResult mixed = mix_sources(s1, s2, out.speaker_snr_db,
                                noise ? &*noise : nullptr, out.noise_snr_db);
  out.mixture = std::move(mixed.mixture);
  out.refs = std::move(mixed.scaled_refs);
  out.noise = std::move(mixed.scaled_noise);
  return out;
}

}  // namespace afb
