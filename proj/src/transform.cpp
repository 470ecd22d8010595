#include "afb/transform.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "afb/common.hpp"
#include "afb/fft.hpp"
#include "afb/kernels.hpp"

namespace afb {

namespace {

void check_bank(const Filterbank& bank) {
  if (bank.analysis.rows != bank.config.n_filters ||
      bank.analysis.cols != bank.config.kernel_len ||
      bank.synthesis.rows != bank.analysis.rows ||
      bank.synthesis.cols != bank.analysis.cols)
    throw Error(ErrorCategory::shape, "filterbank matrices out of shape");
}

TFRepresentation analyze_direct(const std::vector<double>& padded,
                                const FrameGrid& grid, const Filterbank& bank) {
  const std::size_t n_filters = bank.config.n_filters;
  const std::size_t len = bank.config.kernel_len;
  TFRepresentation rep;
  rep.grid = grid;
  rep.bank_config = bank.config;
  rep.coeffs = ComplexMatrix(grid.num_frames, n_filters);
  for (std::size_t k = 0; k < grid.num_frames; ++k) {
    const double* frame = padded.data() + k * grid.hop;
    double* xr = rep.coeffs.row_re(k);
    double* xi = rep.coeffs.row_im(k);
    for (std::size_t n = 0; n < n_filters; ++n)
      kernels::dot_ri(frame, bank.analysis.row_re(n), bank.analysis.row_im(n),
                      len, &xr[n], &xi[n]);
  }
  return rep;
}

// Correlate the whole padded signal with each filter in the frequency domain
// and read the result at the hop positions. Correlation at lag kH touches
// samples kH .. kH+L-1 only, all inside the padded buffer, so a transform of
// exactly padded_len needs no extra guard samples.
TFRepresentation analyze_fft(const std::vector<double>& padded,
                             const FrameGrid& grid, const Filterbank& bank) {
  const std::size_t n_filters = bank.config.n_filters;
  const std::size_t len = bank.config.kernel_len;
  const std::size_t m = padded.size();

  std::vector<double> zero(m, 0.0);
  std::vector<double> sig_re(m), sig_im(m);
  fft::forward(padded.data(), zero.data(), sig_re.data(), sig_im.data(), m);

  TFRepresentation rep;
  rep.grid = grid;
  rep.bank_config = bank.config;
  rep.coeffs = ComplexMatrix(grid.num_frames, n_filters);

  std::vector<double> fr(m), fi(m), pr(m), pi(m), or_(m), oi(m);
  std::vector<double> filt_re(m), filt_im(m);
  for (std::size_t n = 0; n < n_filters; ++n) {
    std::fill(filt_re.begin(), filt_re.end(), 0.0);
    std::fill(filt_im.begin(), filt_im.end(), 0.0);
    std::memcpy(filt_re.data(), bank.analysis.row_re(n), len * sizeof(double));
    // correlation with a complex filter: the lag spectrum is
    // sum_t u(t) e^{+2pi i b t / M} = conj(DFT(conj u))(b), times S^(b)
    for (std::size_t l = 0; l < len; ++l)
      filt_im[l] = -bank.analysis.row_im(n)[l];
    fft::forward(filt_re.data(), filt_im.data(), fr.data(), fi.data(), m);
    for (std::size_t b = 0; b < m; ++b) fi[b] = -fi[b];
    kernels::cmul(fr.data(), fi.data(), sig_re.data(), sig_im.data(),
                  pr.data(), pi.data(), m);
    fft::inverse(pr.data(), pi.data(), or_.data(), oi.data(), m);
    for (std::size_t k = 0; k < grid.num_frames; ++k) {
      rep.coeffs.row_re(k)[n] = or_[k * grid.hop];
      rep.coeffs.row_im(k)[n] = oi[k * grid.hop];
    }
  }
  return rep;
}

}  // namespace

TFRepresentation analyze(const Waveform& x, const Filterbank& bank,
                         AnalysisPath path) {
  validate_waveform(x);
  check_bank(bank);
  if (x.sample_rate != bank.config.sample_rate)
    throw Error(ErrorCategory::config,
                "waveform rate " + std::to_string(x.sample_rate) +
                    " does not match bank rate " +
                    std::to_string(bank.config.sample_rate));

  const FrameGrid grid =
      make_frame_grid(x.size(), bank.config.kernel_len,
                      bank.config.effective_hop(), PadPolicy::full);
  const std::vector<double> padded = pad_signal(x.samples, grid);
  if (path == AnalysisPath::fft) return analyze_fft(padded, grid, bank);
  return analyze_direct(padded, grid, bank);
}

Waveform synthesize(const TFRepresentation& rep, const Filterbank& bank) {
  check_bank(bank);
  const std::size_t n_filters = bank.config.n_filters;
  const std::size_t len = bank.config.kernel_len;
  if (rep.coeffs.rows != rep.grid.num_frames || rep.coeffs.cols != n_filters ||
      rep.grid.frame_len != len || rep.grid.hop != bank.config.effective_hop())
    throw Error(ErrorCategory::shape,
                "representation does not match the filterbank grid");

  std::vector<double> out(rep.grid.padded_len(), 0.0);
  std::vector<double> frame(len);
  for (std::size_t k = 0; k < rep.grid.num_frames; ++k) {
    std::fill(frame.begin(), frame.end(), 0.0);
    const double* yr = rep.coeffs.row_re(k);
    const double* yi = rep.coeffs.row_im(k);
    for (std::size_t n = 0; n < n_filters; ++n) {
      const double w = bank.synthesis_weights.empty() ? 1.0
                                                      : bank.synthesis_weights[n];
      kernels::accum_mixed(frame.data(), bank.synthesis.row_re(n),
                           bank.synthesis.row_im(n), w * yr[n], w * yi[n], len);
    }
    kernels::axpy(1.0, frame.data(), out.data() + k * rep.grid.hop, len);
  }

  if (bank.normalize_envelope) {
    // envelope(tau) = L * sum_k (h_a . h_s)(tau - kH), the factor every
    // sample picks up through analyze -> identity mask -> synthesize
    std::vector<double> prod(len, 1.0);
    if (!bank.analysis_window.empty() && !bank.synthesis_window.empty())
      kernels::mul(bank.analysis_window.data(), bank.synthesis_window.data(),
                   prod.data(), len);
    std::vector<double> env(out.size(), 0.0);
    for (std::size_t k = 0; k < rep.grid.num_frames; ++k)
      kernels::axpy(static_cast<double>(len), prod.data(),
                    env.data() + k * rep.grid.hop, len);
    for (std::size_t t = 0; t < out.size(); ++t)
      out[t] /= std::max(env[t], 1e-12);
  }

  Waveform w;
  w.sample_rate = bank.config.sample_rate;
  w.samples.assign(out.begin() + rep.grid.pad_front,
                   out.begin() + rep.grid.pad_front + rep.grid.original_len);
  return w;
}

InputRep input_representation(const TFRepresentation& rep, InputKind kind) {
  const std::size_t rows = rep.coeffs.rows;
  const std::size_t n = rep.coeffs.cols;
  InputRep out;
  out.kind = kind;
  switch (kind) {
    case InputKind::mag: {
      out.data = RealMatrix(rows, n);
      for (std::size_t k = 0; k < rows; ++k)
        kernels::magnitude(rep.coeffs.row_re(k), rep.coeffs.row_im(k),
                           out.data.row(k), n);
      break;
    }
    case InputKind::re_im: {
      out.data = RealMatrix(rows, 2 * n);
      for (std::size_t k = 0; k < rows; ++k) {
        std::memcpy(out.data.row(k), rep.coeffs.row_re(k), n * sizeof(double));
        std::memcpy(out.data.row(k) + n, rep.coeffs.row_im(k),
                    n * sizeof(double));
      }
      break;
    }
    case InputKind::mag_re_im: {
      out.data = RealMatrix(rows, 3 * n);
      for (std::size_t k = 0; k < rows; ++k) {
        kernels::magnitude(rep.coeffs.row_re(k), rep.coeffs.row_im(k),
                           out.data.row(k), n);
        std::memcpy(out.data.row(k) + n, rep.coeffs.row_re(k),
                    n * sizeof(double));
        std::memcpy(out.data.row(k) + 2 * n, rep.coeffs.row_im(k),
                    n * sizeof(double));
      }
      break;
    }
  }
  return out;
}

}  // namespace afb
