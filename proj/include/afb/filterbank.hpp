#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "afb/matrix.hpp"

namespace afb {

enum class FilterFamily {
  stft,
  param_sinc,
  param_sinc_analytic,
  free,
  free_analytic,
};

const char* family_name(FilterFamily f);
FilterFamily family_from_name(const std::string& name);  // config error if unknown

struct FilterbankConfig {
  FilterFamily family = FilterFamily::stft;
  std::size_t n_filters = 0;   // N; for stft the builder sets this to L/2+1
  std::size_t kernel_len = 0;  // L
  std::size_t hop = 0;         // H; 0 means the default L/2
  int sample_rate = 0;

  std::size_t effective_hop() const { return hop ? hop : kernel_len / 2; }
  void validate() const;
};

// Normalized cutoffs in cycles/sample: 0 < f1[n] < f2[n] <= 0.5, with
// bandwidth f2-f1 >= kMinBandwidth. Center fc=(f1+f2)/2, width fw=f2-f1.
struct ParamSincParams {
  std::vector<double> f1;
  std::vector<double> f2;
  std::vector<double> gains;  // synthesis gains g_n (unconstrained real)

  std::size_t size() const { return f1.size(); }
  double fw(std::size_t n) const { return f2[n] - f1[n]; }
  double fc(std::size_t n) const { return 0.5 * (f1[n] + f2[n]); }
  void validate() const;
};

inline constexpr double kMinBandwidth = 1e-3;  // normalized

enum class FilterWindow { hamming, none };
enum class StftWindow { sqrt_hann, rect };

struct Filterbank {
  FilterbankConfig config;
  ComplexMatrix analysis;   // U, N x L
  ComplexMatrix synthesis;  // V, N x L
  std::optional<ParamSincParams> params;
  std::vector<double> analysis_window;    // h_a (empty when not applicable)
  std::vector<double> synthesis_window;   // h_s
  std::vector<double> synthesis_weights;  // per-filter weight in the decoder
  bool normalize_envelope = false;        // divide by the OLA window envelope
};

// Discrete analytic signal u + j*H[u]: DFT, keep bin 0 (and bin L/2 for even
// L) at weight 1, double bins below Nyquist, zero the rest, inverse DFT.
// The real part of the result equals u to roundoff.
std::vector<std::complex<double>> discrete_hilbert(std::span<const double> u);

// Row-wise discrete_hilbert over a real bank.
ComplexMatrix make_analytic_bank(const RealMatrix& real_bank);

// Symmetric Hamming window, w[l] = 0.54 - 0.46 cos(2*pi*l/(L-1)).
std::vector<double> hamming_window(std::size_t len);

// The real bandpass filter of the sinc family on the zero-centered grid
// t = l - (L-1)/2: 2*f2*sinc(2*pi*f2*t) - 2*f1*sinc(2*pi*f1*t), which equals
// 2*fw*sinc(pi*fw*t)*cos(2*pi*fc*t). Unwindowed.
std::vector<double> sinc_bandpass(double f1, double f2, std::size_t len);

// Mel-spaced initialization: centers equally spaced on the mel scale between
// f_min_hz and Nyquist, bandwidths from neighbor spacing, unit gains.
ParamSincParams init_param_frequencies(std::size_t n_filters, int sample_rate,
                                       double f_min_hz = 30.0);

// Map unconstrained raw values onto valid cutoffs: f1 = |raw_low| clamped
// into (0, 0.5 - min bandwidth], f_w = kMinBandwidth + |raw_bw|, f2 capped
// at 0.5. Keeps the invariants under arbitrary parameter updates.
ParamSincParams reparameterize_cutoffs(std::span<const double> raw_low,
                                       std::span<const double> raw_bw);

// The parametric families. Analytic filters are built by discrete-Hilbert
// extension of the real bandpass, then windowed; synthesis rows are the
// conjugates scaled by gains.
Filterbank build_param_sinc(const ParamSincParams& params, bool analytic,
                            const FilterbankConfig& config,
                            FilterWindow window = FilterWindow::hamming);

// One-sided STFT bank: L/2+1 filters h(t), e^{+-2j*pi*n*t/L}, plus the
// conjugate-symmetry decoder weights {1,2,...,2,1} and envelope
// normalization that make an identity mask reconstruct exactly.
Filterbank build_stft_filterbank(FilterbankConfig config,
                                 StftWindow window = StftWindow::sqrt_hann);

// Externally supplied weights, optionally Hilbert-extended on both sides.
Filterbank build_free_filterbank(const RealMatrix& analysis,
                                 const RealMatrix& synthesis, bool analytic,
                                 FilterbankConfig config);

// Zero-padded DFT magnitude over n_fft bins (bin m ~ frequency m/n_fft).
std::vector<double> filter_frequency_response(const double* re,
                                              const double* im,
                                              std::size_t len,
                                              std::size_t n_fft);
std::vector<double> filter_frequency_response(const ComplexMatrix& bank,
                                              std::size_t row,
                                              std::size_t n_fft);

// Rescale synthesis rows (and params.gains when present) by per-filter gains.
void set_synthesis_gains(Filterbank& bank, std::span<const double> gains);

}  // namespace afb
