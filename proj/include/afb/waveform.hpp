#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace afb {

// A mono sample sequence with its rate. Samples are dimensionless amplitudes;
// PCM-16 reads are normalized by 1/32768.
struct Waveform {
  std::vector<double> samples;
  int sample_rate = 0;

  std::size_t size() const { return samples.size(); }
};

// Throws ErrorCategory::numeric on NaN/Inf, empty samples, or rate <= 0.
void validate_waveform(const Waveform& w, const char* what = "waveform");

enum class WavEncoding { pcm16, float32 };

struct WavWriteStats {
  std::size_t clipped_samples = 0;  // pcm16 values outside [-1, 1)
};

// Mono RIFF/WAVE, PCM-16 or IEEE float32. Anything else is a format error
// naming the offending field.
Waveform read_wav(const std::string& path);
WavWriteStats write_wav(const std::string& path, const Waveform& w,
                        WavEncoding encoding);

}  // namespace afb
