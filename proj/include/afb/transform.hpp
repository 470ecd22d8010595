#pragma once

#include "afb/filterbank.hpp"
#include "afb/framing.hpp"
#include "afb/matrix.hpp"
#include "afb/waveform.hpp"

namespace afb {

struct TFRepresentation {
  ComplexMatrix coeffs;         // K x N, X(k,n)
  FrameGrid grid;
  FilterbankConfig bank_config; // the bank this was computed with
};

enum class AnalysisPath {
  direct,     // per-frame correlations; the reference route
  fft,        // full-signal FFT correlation per filter, sampled at the hops
  automatic,  // currently the direct route
};

// X(k,n) = sum_t x_padded(t + kH) * u_n(t). Correlation, not convolution.
TFRepresentation analyze(const Waveform& x, const Filterbank& bank,
                         AnalysisPath path = AnalysisPath::automatic);

// s(t) = Re( sum_k sum_n w_n Y(k,n) v_n(t - kH) ), overlap-added, optionally
// divided by the window envelope (STFT), trimmed to the original length.
Waveform synthesize(const TFRepresentation& rep, const Filterbank& bank);

enum class InputKind { mag, re_im, mag_re_im };

struct InputRep {
  InputKind kind;
  RealMatrix data;  // K x N, K x 2N, or K x 3N
};

InputRep input_representation(const TFRepresentation& rep, InputKind kind);

}  // namespace afb
