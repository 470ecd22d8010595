#include "afb/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "afb/common.hpp"
#include "afb/kernels.hpp"
#include "afb/transform.hpp"

namespace afb {

namespace {

constexpr double kPi = std::numbers::pi;

// N x T matrix whose row n is the unit-gain reconstruction of x through
// filter n alone (analysis with the bank as-is, synthesis with gain 1).
// Filter-major layout keeps the Gram accumulation on contiguous rows.
RealMatrix unit_gain_reconstructions(const Filterbank& bank,
                                     const Waveform& x) {
  Filterbank unit = bank;
  if (bank.params) {
    // strip any gains already baked into the synthesis rows
    std::vector<double> inv(bank.params->gains.size());
    for (std::size_t n = 0; n < inv.size(); ++n) {
      const double g = bank.params->gains[n];
      if (g == 0.0 || !std::isfinite(g))
        throw Error(ErrorCategory::numeric,
                    "cannot refit a bank with zero or non-finite gains");
      inv[n] = 1.0 / g;
    }
    set_synthesis_gains(unit, inv);
  }

  const TFRepresentation rep = analyze(x, unit);
  const std::size_t n_filters = unit.config.n_filters;
  const std::size_t len = unit.config.kernel_len;
  const std::size_t t_len = x.size();

  std::vector<double> env;
  if (unit.normalize_envelope) {
    std::vector<double> prod(len, 1.0);
    if (!unit.analysis_window.empty())
      kernels::mul(unit.analysis_window.data(), unit.synthesis_window.data(),
                   prod.data(), len);
    env.assign(rep.grid.padded_len(), 0.0);
    for (std::size_t k = 0; k < rep.grid.num_frames; ++k)
      kernels::axpy(static_cast<double>(len), prod.data(),
                    env.data() + k * rep.grid.hop, len);
  }

  RealMatrix r(n_filters, t_len);
  std::vector<double> padded(rep.grid.padded_len());
  std::vector<double> frame(len);
  for (std::size_t n = 0; n < n_filters; ++n) {
    std::fill(padded.begin(), padded.end(), 0.0);
    const double w = unit.synthesis_weights.empty() ? 1.0
                                                    : unit.synthesis_weights[n];
    for (std::size_t k = 0; k < rep.grid.num_frames; ++k) {
      std::fill(frame.begin(), frame.end(), 0.0);
      kernels::accum_mixed(frame.data(), unit.synthesis.row_re(n),
                           unit.synthesis.row_im(n),
                           w * rep.coeffs.row_re(k)[n],
                           w * rep.coeffs.row_im(k)[n], len);
      kernels::axpy(1.0, frame.data(), padded.data() + k * rep.grid.hop, len);
    }
    if (!env.empty())
      for (std::size_t t = 0; t < padded.size(); ++t)
        padded[t] /= std::max(env[t], 1e-12);
    std::copy_n(padded.begin() + rep.grid.pad_front, t_len, r.row(n));
  }
  return r;
}

// Cholesky in place; throws when a pivot is not strictly positive.
void cholesky_solve(std::vector<double>& a, std::size_t n,
                    std::vector<double>& b) {
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    if (!(d > 0.0) || !std::isfinite(d))
      throw Error(ErrorCategory::numeric,
                  "normal equations singular beyond damping");
    const double l = std::sqrt(d);
    a[j * n + j] = l;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = s / l;
    }
  }
  // forward then backward substitution
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= a[i * n + k] * b[k];
    b[i] = s / a[i * n + i];
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= a[k * n + ii] * b[k];
    b[ii] = s / a[ii * n + ii];
  }
}

}  // namespace

std::vector<double> fit_synthesis_gains(const Filterbank& bank,
                                        const std::vector<Waveform>& calib) {
  if (calib.empty())
    throw Error(ErrorCategory::config, "no calibration signals");
  const std::size_t n = bank.config.n_filters;

  std::vector<double> gram(n * n, 0.0);
  std::vector<double> rhs(n, 0.0);
  for (const auto& x : calib) {
    validate_waveform(x, "calibration signal");
    if (x.sample_rate != bank.config.sample_rate)
      throw Error(ErrorCategory::config, "calibration signal rate mismatch");
    const RealMatrix r = unit_gain_reconstructions(bank, x);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        const double s = kernels::dot(r.row(i), r.row(j), r.cols);
        gram[i * n + j] += s;
        if (i != j) gram[j * n + i] += s;
      }
      rhs[i] += kernels::dot(r.row(i), x.samples.data(), r.cols);
    }
  }

  double trace = 0.0;
  for (std::size_t i = 0; i < n; ++i) trace += gram[i * n + i];
  if (!(trace > 0.0) || !std::isfinite(trace))
    throw Error(ErrorCategory::numeric,
                "normal equations singular beyond damping");
  const double lambda = 1e-8 * trace / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) gram[i * n + i] += lambda;

  std::vector<double> g = rhs;
  cholesky_solve(gram, n, g);
  return g;
}

double reconstruction_objective(const Filterbank& bank,
                                const std::vector<Waveform>& calib,
                                std::span<const double> gains) {
  if (gains.size() != bank.config.n_filters)
    throw Error(ErrorCategory::shape, "gain count does not match filter count");
  double obj = 0.0;
  for (const auto& x : calib) {
    const RealMatrix r = unit_gain_reconstructions(bank, x);
    std::vector<double> rec(r.cols, 0.0);
    for (std::size_t nn = 0; nn < r.rows; ++nn)
      kernels::axpy(gains[nn], r.row(nn), rec.data(), r.cols);
    for (std::size_t t = 0; t < r.cols; ++t) {
      const double d = x.samples[t] - rec[t];
      obj += d * d;
    }
  }
  return obj;
}

ParamSincGradients param_filter_gradients(const ParamSincParams& params,
                                          const FilterbankConfig& config,
                                          bool analytic, FilterWindow window) {
  params.validate();
  const std::size_t len = config.kernel_len;
  if (len < 2)
    throw Error(ErrorCategory::config, "kernel_len must be >= 2");
  const std::size_t n_filters = params.size();
  const std::vector<double> w = window == FilterWindow::hamming
                                    ? hamming_window(len)
                                    : std::vector<double>(len, 1.0);
  const double center = 0.5 * static_cast<double>(len - 1);

  ParamSincGradients grads;
  grads.d_fw = ComplexMatrix(n_filters, len);
  grads.d_fc = ComplexMatrix(n_filters, len);

  std::vector<double> dr_fw(len), dr_fc(len);
  for (std::size_t n = 0; n < n_filters; ++n) {
    const double fw = params.fw(n);
    const double fc = params.fc(n);
    for (std::size_t l = 0; l < len; ++l) {
      const double t = static_cast<double>(l) - center;
      const double x = kPi * fw * t;
      // d/dfw [2 fw sinc(pi fw t)] = 2 cos(pi fw t); smooth through t = 0
      dr_fw[l] = 2.0 * std::cos(x) * std::cos(2.0 * kPi * fc * t);
      const double env =
          2.0 * fw * (std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x);
      dr_fc[l] = env * (-2.0 * kPi * t) * std::sin(2.0 * kPi * fc * t);
    }
    if (analytic) {
      auto afw = discrete_hilbert(dr_fw);
      auto afc = discrete_hilbert(dr_fc);
      for (std::size_t l = 0; l < len; ++l) {
        grads.d_fw.row_re(n)[l] = afw[l].real() * w[l];
        grads.d_fw.row_im(n)[l] = afw[l].imag() * w[l];
        grads.d_fc.row_re(n)[l] = afc[l].real() * w[l];
        grads.d_fc.row_im(n)[l] = afc[l].imag() * w[l];
      }
    } else {
      for (std::size_t l = 0; l < len; ++l) {
        grads.d_fw.row_re(n)[l] = dr_fw[l] * w[l];
        grads.d_fc.row_re(n)[l] = dr_fc[l] * w[l];
      }
    }
  }
  return grads;
}

GradReport finite_diff_check(
    const std::function<double(std::span<const double>)>& objective,
    std::span<const double> params, std::span<const double> analytic_grad,
    double step) {
  if (!(step > 0.0) || !std::isfinite(step))
    throw Error(ErrorCategory::config, "invalid finite-difference step");
  if (params.size() != analytic_grad.size())
    throw Error(ErrorCategory::shape, "gradient size does not match params");

  GradReport rep;
  rep.step = step;
  rep.params.assign(params.begin(), params.end());
  rep.per_parameter.resize(params.size());
  std::vector<double> p(params.begin(), params.end());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double orig = p[i];
    p[i] = orig + step;
    const double fp = objective(p);
    p[i] = orig - step;
    const double fm = objective(p);
    p[i] = orig;
    const double fd = (fp - fm) / (2.0 * step);
    const double denom = std::max({std::abs(fd), std::abs(analytic_grad[i]), 1e-12});
    rep.per_parameter[i] = std::abs(fd - analytic_grad[i]) / denom;
    rep.max_rel_error = std::max(rep.max_rel_error, rep.per_parameter[i]);
  }
  return rep;
}

}  // namespace afb
