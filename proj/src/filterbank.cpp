#include "afb/filterbank.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "afb/common.hpp"
#include "afb/fft.hpp"
#include "afb/kernels.hpp"

namespace afb {

namespace {
constexpr double kPi = std::numbers::pi;

double unnormalized_sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

double mel_of_hz(double f) { return 2595.0 * std::log10(1.0 + f / 700.0); }
double hz_of_mel(double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); }
}  // namespace

const char* family_name(FilterFamily f) {
  switch (f) {
    case FilterFamily::stft: return "stft";
    case FilterFamily::param_sinc: return "param-sinc";
    case FilterFamily::param_sinc_analytic: return "param-sinc-analytic";
    case FilterFamily::free: return "free";
    case FilterFamily::free_analytic: return "free-analytic";
  }
  return "unknown";
}

FilterFamily family_from_name(const std::string& name) {
  if (name == "stft") return FilterFamily::stft;
  if (name == "param-sinc") return FilterFamily::param_sinc;
  if (name == "param-sinc-analytic") return FilterFamily::param_sinc_analytic;
  if (name == "free") return FilterFamily::free;
  if (name == "free-analytic") return FilterFamily::free_analytic;
  throw Error(ErrorCategory::config, "unknown filter family: " + name);
}

void FilterbankConfig::validate() const {
  if (kernel_len < 1)
    throw Error(ErrorCategory::config, "kernel_len must be >= 1");
  if (n_filters < 1)
    throw Error(ErrorCategory::config, "n_filters must be >= 1");
  const std::size_t h = effective_hop();
  if (h < 1 || h > kernel_len)
    throw Error(ErrorCategory::config, "hop must satisfy 1 <= H <= L");
  if (sample_rate <= 0)
    throw Error(ErrorCategory::config, "sample_rate must be positive");
  if (family == FilterFamily::stft && kernel_len % 2 != 0)
    throw Error(ErrorCategory::config, "stft kernel_len must be even");
}

void ParamSincParams::validate() const {
  if (f1.size() != f2.size() || f1.size() != gains.size() || f1.empty())
    throw Error(ErrorCategory::config, "param arrays empty or of unequal size");
  for (std::size_t n = 0; n < f1.size(); ++n) {
    if (!(f1[n] > 0.0 && f1[n] < f2[n] && f2[n] <= 0.5))
      throw Error(ErrorCategory::config,
                  "cutoffs must satisfy 0 < f1 < f2 <= 0.5 (filter " +
                      std::to_string(n) + ")");
    if (f2[n] - f1[n] < kMinBandwidth - 1e-15)
      throw Error(ErrorCategory::config,
                  "bandwidth below minimum (filter " + std::to_string(n) + ")");
    if (!std::isfinite(gains[n]))
      throw Error(ErrorCategory::config, "non-finite gain");
  }
}

std::vector<std::complex<double>> discrete_hilbert(std::span<const double> u) {
  const std::size_t n = u.size();
  if (n < 2)
    throw Error(ErrorCategory::config, "discrete_hilbert needs length >= 2");

  std::vector<double> re(n), im(n, 0.0), fr(n), fi(n);
  std::copy(u.begin(), u.end(), re.begin());
  fft::forward(re.data(), im.data(), fr.data(), fi.data(), n);

  // bin 0 kept; bins below Nyquist doubled; Nyquist (even n) kept; rest zero
  const std::size_t half = n / 2;
  for (std::size_t k = 1; k < n; ++k) {
    double w;
    if (n % 2 == 0)
      w = (k < half) ? 2.0 : (k == half ? 1.0 : 0.0);
    else
      w = (k <= half) ? 2.0 : 0.0;
    fr[k] *= w;
    fi[k] *= w;
  }
  fft::inverse(fr.data(), fi.data(), re.data(), im.data(), n);

  std::vector<std::complex<double>> out(n);
  for (std::size_t t = 0; t < n; ++t) out[t] = {u[t], im[t]};  // Re exact
  return out;
}

ComplexMatrix make_analytic_bank(const RealMatrix& real_bank) {
  ComplexMatrix out(real_bank.rows, real_bank.cols);
  for (std::size_t r = 0; r < real_bank.rows; ++r) {
    auto a = discrete_hilbert(
        std::span<const double>(real_bank.row(r), real_bank.cols));
    for (std::size_t c = 0; c < real_bank.cols; ++c) {
      out.row_re(r)[c] = a[c].real();
      out.row_im(r)[c] = a[c].imag();
    }
  }
  return out;
}

std::vector<double> hamming_window(std::size_t len) {
  std::vector<double> w(len, 1.0);
  if (len < 2) return w;
  for (std::size_t l = 0; l < len; ++l)
    w[l] = 0.54 - 0.46 * std::cos(2.0 * kPi * static_cast<double>(l) /
                                  static_cast<double>(len - 1));
  return w;
}

std::vector<double> sinc_bandpass(double f1, double f2, std::size_t len) {
  const double fw = f2 - f1;
  const double fc = 0.5 * (f1 + f2);
  const double center = 0.5 * static_cast<double>(len - 1);
  std::vector<double> r(len);
  for (std::size_t l = 0; l < len; ++l) {
    const double t = static_cast<double>(l) - center;
    r[l] = 2.0 * fw * unnormalized_sinc(kPi * fw * t) * std::cos(2.0 * kPi * fc * t);
  }
  return r;
}

ParamSincParams init_param_frequencies(std::size_t n_filters, int sample_rate,
                                       double f_min_hz) {
  if (n_filters < 1)
    throw Error(ErrorCategory::config, "n_filters must be >= 1");
  if (sample_rate <= 0)
    throw Error(ErrorCategory::config, "sample_rate must be positive");
  if (f_min_hz < 0.0)
    throw Error(ErrorCategory::config, "f_min_hz must be >= 0");
  const double rate = static_cast<double>(sample_rate);
  const double nyquist = rate / 2.0;
  if (f_min_hz >= nyquist)
    throw Error(ErrorCategory::config, "f_min_hz must lie below Nyquist");
  const double mel_lo = mel_of_hz(f_min_hz);
  const double mel_hi = mel_of_hz(nyquist);
  const double step = (mel_hi - mel_lo) / static_cast<double>(n_filters + 1);
  // centers must stay meaningfully distinct; the tightest spacing sits at
  // the low end of the mel grid
  if (hz_of_mel(mel_lo + step) - f_min_hz < 0.1)
    throw Error(ErrorCategory::config,
                "n_filters exceeds the distinct representable bands at " +
                    std::to_string(sample_rate) + " Hz");

  std::vector<double> centers(n_filters);
  for (std::size_t n = 0; n < n_filters; ++n)
    centers[n] = hz_of_mel(mel_lo + step * static_cast<double>(n + 1));

  ParamSincParams p;
  p.f1.resize(n_filters);
  p.f2.resize(n_filters);
  p.gains.assign(n_filters, 1.0);
  for (std::size_t n = 0; n < n_filters; ++n) {
    const double left = (n == 0) ? f_min_hz : centers[n - 1];
    const double right = (n + 1 == n_filters) ? nyquist : centers[n + 1];
    const double half_bw = 0.25 * (right - left);  // half of the mean spacing
    double lo = (centers[n] - half_bw) / rate;
    double hi = (centers[n] + half_bw) / rate;
    lo = std::max(lo, kMinBandwidth / 10.0);
    hi = std::min(hi, 0.5);
    if (hi - lo < kMinBandwidth) {
      if (lo + kMinBandwidth <= 0.5)
        hi = lo + kMinBandwidth;
      else
        lo = hi - kMinBandwidth;
    }
    p.f1[n] = lo;
    p.f2[n] = hi;
  }
  p.validate();
  return p;
}

ParamSincParams reparameterize_cutoffs(std::span<const double> raw_low,
                                       std::span<const double> raw_bw) {
  if (raw_low.size() != raw_bw.size() || raw_low.empty())
    throw Error(ErrorCategory::config, "raw parameter arrays empty or unequal");
  ParamSincParams p;
  const std::size_t n = raw_low.size();
  p.f1.resize(n);
  p.f2.resize(n);
  p.gains.assign(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(raw_low[i]) || !std::isfinite(raw_bw[i]))
      throw Error(ErrorCategory::config, "non-finite raw parameter");
    const double lo = std::clamp(std::abs(raw_low[i]), kMinBandwidth / 10.0,
                                 0.5 - kMinBandwidth);
    const double bw = kMinBandwidth + std::abs(raw_bw[i]);
    p.f1[i] = lo;
    p.f2[i] = std::min(lo + bw, 0.5);
  }
  p.validate();
  return p;
}

Filterbank build_param_sinc(const ParamSincParams& params, bool analytic,
                            const FilterbankConfig& config,
                            FilterWindow window) {
  params.validate();
  FilterbankConfig cfg = config;
  cfg.family = analytic ? FilterFamily::param_sinc_analytic
                        : FilterFamily::param_sinc;
  cfg.n_filters = params.size();
  cfg.validate();
  const std::size_t len = cfg.kernel_len;
  if (analytic && len < 2)
    throw Error(ErrorCategory::config, "analytic filters need kernel_len >= 2");

  const std::vector<double> w = window == FilterWindow::hamming
                                    ? hamming_window(len)
                                    : std::vector<double>(len, 1.0);

  Filterbank fb;
  fb.config = cfg;
  fb.params = params;
  fb.analysis = ComplexMatrix(params.size(), len);
  fb.synthesis = ComplexMatrix(params.size(), len);
  fb.analysis_window = w;
  fb.synthesis_window = w;
  fb.synthesis_weights.assign(params.size(), 1.0);

  for (std::size_t n = 0; n < params.size(); ++n) {
    const std::vector<double> r = sinc_bandpass(params.f1[n], params.f2[n], len);
    const double g = params.gains[n];
    if (analytic) {
      auto a = discrete_hilbert(r);
      for (std::size_t l = 0; l < len; ++l) {
        fb.analysis.row_re(n)[l] = a[l].real() * w[l];
        fb.analysis.row_im(n)[l] = a[l].imag() * w[l];
        fb.synthesis.row_re(n)[l] = g * a[l].real() * w[l];
        fb.synthesis.row_im(n)[l] = -g * a[l].imag() * w[l];
      }
    } else {
      for (std::size_t l = 0; l < len; ++l) {
        fb.analysis.row_re(n)[l] = r[l] * w[l];
        fb.synthesis.row_re(n)[l] = g * r[l] * w[l];
      }
    }
  }
  return fb;
}

Filterbank build_stft_filterbank(FilterbankConfig config, StftWindow window) {
  config.family = FilterFamily::stft;
  const std::size_t len = config.kernel_len;
  if (len < 2 || len % 2 != 0)
    throw Error(ErrorCategory::config, "stft kernel_len must be even and >= 2");
  const std::size_t n_bins = len / 2 + 1;
  config.n_filters = n_bins;
  config.validate();
  const std::size_t hop = config.effective_hop();
  if (window == StftWindow::sqrt_hann && hop > len / 2)
    throw Error(ErrorCategory::config,
                "sqrt-Hann needs H <= L/2 for overlap-add coverage");

  std::vector<double> h(len, 1.0);
  if (window == StftWindow::sqrt_hann) {
    // periodic Hann; shifted squares sum to a constant at H = L/2
    for (std::size_t l = 0; l < len; ++l)
      h[l] = std::sqrt(0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(l) /
                                            static_cast<double>(len)));
  }

  Filterbank fb;
  fb.config = config;
  fb.analysis = ComplexMatrix(n_bins, len);
  fb.synthesis = ComplexMatrix(n_bins, len);
  fb.analysis_window = h;
  fb.synthesis_window = h;
  fb.synthesis_weights.assign(n_bins, 2.0);
  fb.synthesis_weights.front() = 1.0;
  fb.synthesis_weights.back() = 1.0;
  fb.normalize_envelope = true;

  for (std::size_t n = 0; n < n_bins; ++n) {
    for (std::size_t l = 0; l < len; ++l) {
      const double phase = 2.0 * kPi * static_cast<double>(n) *
                           static_cast<double>(l) / static_cast<double>(len);
      fb.analysis.row_re(n)[l] = h[l] * std::cos(phase);
      fb.analysis.row_im(n)[l] = h[l] * std::sin(phase);
      fb.synthesis.row_re(n)[l] = h[l] * std::cos(phase);
      fb.synthesis.row_im(n)[l] = -h[l] * std::sin(phase);
    }
  }
  return fb;
}

Filterbank build_free_filterbank(const RealMatrix& analysis,
                                 const RealMatrix& synthesis, bool analytic,
                                 FilterbankConfig config) {
  if (analysis.rows == 0 || analysis.cols == 0)
    throw Error(ErrorCategory::config, "empty free filter bank");
  if (synthesis.rows != analysis.rows || synthesis.cols != analysis.cols)
    throw Error(ErrorCategory::shape,
                "free analysis/synthesis banks must have equal shapes");
  config.family = analytic ? FilterFamily::free_analytic : FilterFamily::free;
  config.n_filters = analysis.rows;
  config.kernel_len = analysis.cols;
  config.validate();

  Filterbank fb;
  fb.config = config;
  fb.synthesis_weights.assign(analysis.rows, 1.0);
  if (analytic) {
    fb.analysis = make_analytic_bank(analysis);
    fb.synthesis = make_analytic_bank(synthesis);
  } else {
    fb.analysis = ComplexMatrix(analysis.rows, analysis.cols);
    fb.synthesis = ComplexMatrix(analysis.rows, analysis.cols);
    for (std::size_t r = 0; r < analysis.rows; ++r)
      for (std::size_t c = 0; c < analysis.cols; ++c) {
        fb.analysis.row_re(r)[c] = analysis.at(r, c);
        fb.synthesis.row_re(r)[c] = synthesis.at(r, c);
      }
  }
  return fb;
}

std::vector<double> filter_frequency_response(const double* re,
                                              const double* im,
                                              std::size_t len,
                                              std::size_t n_fft) {
  if (n_fft < len)
    throw Error(ErrorCategory::config, "n_fft must be >= filter length");
  std::vector<double> zr(n_fft, 0.0), zi(n_fft, 0.0), fr(n_fft), fi(n_fft);
  std::copy(re, re + len, zr.begin());
  if (im) std::copy(im, im + len, zi.begin());
  fft::forward(zr.data(), zi.data(), fr.data(), fi.data(), n_fft);
  std::vector<double> mag(n_fft);
  kernels::magnitude(fr.data(), fi.data(), mag.data(), n_fft);
  return mag;
}

std::vector<double> filter_frequency_response(const ComplexMatrix& bank,
                                              std::size_t row,
                                              std::size_t n_fft) {
  return filter_frequency_response(bank.row_re(row), bank.row_im(row),
                                   bank.cols, n_fft);
}

void set_synthesis_gains(Filterbank& bank, std::span<const double> gains) {
  if (gains.size() != bank.synthesis.rows)
    throw Error(ErrorCategory::shape, "gain count does not match filter count");
  for (std::size_t n = 0; n < gains.size(); ++n) {
    if (!std::isfinite(gains[n]))
      throw Error(ErrorCategory::numeric, "non-finite gain");
    for (std::size_t l = 0; l < bank.synthesis.cols; ++l) {
      bank.synthesis.row_re(n)[l] *= gains[n];
      bank.synthesis.row_im(n)[l] *= gains[n];
    }
  }
  if (bank.params) {
    for (std::size_t n = 0; n < gains.size(); ++n)
      bank.params->gains[n] *= gains[n];
  }
}

}  // namespace afb
