#include "afb/masking.hpp"

#include <algorithm>
#include <cmath>

#include "afb/common.hpp"
#include "afb/kernels.hpp"

namespace afb {

const char* mask_kind_name(MaskKind k) {
  switch (k) {
    case MaskKind::mag: return "mag";
    case MaskKind::complex_product: return "compl";
    case MaskKind::re_im: return "reim";
  }
  return "unknown";
}

MaskKind mask_kind_from_name(const std::string& name) {
  if (name == "mag") return MaskKind::mag;
  if (name == "compl") return MaskKind::complex_product;
  if (name == "reim") return MaskKind::re_im;
  throw Error(ErrorCategory::config, "unknown mask kind: " + name);
}

namespace {

void check_same_grid(const TFRepresentation& a, const TFRepresentation& b) {
  if (a.coeffs.rows != b.coeffs.rows || a.coeffs.cols != b.coeffs.cols ||
      a.grid.hop != b.grid.hop || a.grid.frame_len != b.grid.frame_len ||
      a.grid.original_len != b.grid.original_len)
    throw Error(ErrorCategory::shape,
                "representations computed on different grids");
}

}  // namespace

TFRepresentation apply_mask(const TFRepresentation& x, const Mask& m) {
  const std::size_t rows = x.coeffs.rows, cols = x.coeffs.cols;
  if (m.data.rows != rows || m.data.cols != cols)
    throw Error(ErrorCategory::shape, "mask shape does not match coefficients");

  TFRepresentation y;
  y.grid = x.grid;
  y.bank_config = x.bank_config;
  y.coeffs = ComplexMatrix(rows, cols);
  const std::size_t n = rows * cols;
  switch (m.kind) {
    case MaskKind::mag:
      // real nonnegative gain on complex coefficients: phase preserved
      kernels::mul(m.data.re.data(), x.coeffs.re.data(), y.coeffs.re.data(), n);
      kernels::mul(m.data.re.data(), x.coeffs.im.data(), y.coeffs.im.data(), n);
      break;
    case MaskKind::complex_product:
      kernels::cmul(x.coeffs.re.data(), x.coeffs.im.data(), m.data.re.data(),
                    m.data.im.data(), y.coeffs.re.data(), y.coeffs.im.data(), n);
      break;
    case MaskKind::re_im:
      kernels::mul(m.data.re.data(), x.coeffs.re.data(), y.coeffs.re.data(), n);
      kernels::mul(m.data.im.data(), x.coeffs.im.data(), y.coeffs.im.data(), n);
      break;
  }
  return y;
}

std::vector<Mask> ideal_masks(const std::vector<TFRepresentation>& sources,
                              const TFRepresentation& mixture, MaskKind kind,
                              double clip_limit) {
  if (sources.empty())
    throw Error(ErrorCategory::config, "no sources given");
  if (clip_limit <= 0.0)
    throw Error(ErrorCategory::config, "clip limit must be positive");
  for (const auto& s : sources) check_same_grid(s, mixture);

  const std::size_t rows = mixture.coeffs.rows, cols = mixture.coeffs.cols;
  const std::size_t n = rows * cols;
  std::vector<Mask> masks;
  masks.reserve(sources.size());

  for (const auto& s : sources) {
    Mask m;
    m.kind = kind;
    m.data = ComplexMatrix(rows, cols);
    switch (kind) {
      case MaskKind::mag: {
        for (std::size_t i = 0; i < n; ++i) {
          const double xs = std::hypot(s.coeffs.re[i], s.coeffs.im[i]);
          const double xm = std::hypot(mixture.coeffs.re[i], mixture.coeffs.im[i]);
          m.data.re[i] = std::min(xs / std::max(xm, kMaskEps), clip_limit);
        }
        break;
      }
      case MaskKind::complex_product: {
        // S / X with eps-guarded denominator, modulus clipped
        for (std::size_t i = 0; i < n; ++i) {
          const double xr = mixture.coeffs.re[i], xi = mixture.coeffs.im[i];
          const double den = std::max(xr * xr + xi * xi, kMaskEps * kMaskEps);
          double mr = (s.coeffs.re[i] * xr + s.coeffs.im[i] * xi) / den;
          double mi = (s.coeffs.im[i] * xr - s.coeffs.re[i] * xi) / den;
          const double mod = std::hypot(mr, mi);
          if (mod > clip_limit) {
            mr *= clip_limit / mod;
            mi *= clip_limit / mod;
          }
          m.data.re[i] = mr;
          m.data.im[i] = mi;
        }
        break;
      }
      case MaskKind::re_im: {
        auto guarded = [clip_limit](double num, double den) {
          const double d =
              std::abs(den) < kMaskEps ? std::copysign(kMaskEps, den == 0.0 ? 1.0 : den)
                                       : den;
          return std::clamp(num / d, -clip_limit, clip_limit);
        };
        for (std::size_t i = 0; i < n; ++i) {
          m.data.re[i] = guarded(s.coeffs.re[i], mixture.coeffs.re[i]);
          m.data.im[i] = guarded(s.coeffs.im[i], mixture.coeffs.im[i]);
        }
        break;
      }
    }
    masks.push_back(std::move(m));
  }
  return masks;
}

std::vector<Mask> irm(const std::vector<TFRepresentation>& sources,
                      const TFRepresentation* noise) {
  if (sources.empty())
    throw Error(ErrorCategory::config, "no sources given");
  for (std::size_t i = 1; i < sources.size(); ++i)
    check_same_grid(sources[i], sources[0]);
  if (noise) check_same_grid(*noise, sources[0]);

  const std::size_t rows = sources[0].coeffs.rows;
  const std::size_t cols = sources[0].coeffs.cols;
  const std::size_t n = rows * cols;

  std::vector<std::vector<double>> mags(sources.size(),
                                        std::vector<double>(n));
  std::vector<double> denom(n, kMaskEps);
  for (std::size_t s = 0; s < sources.size(); ++s) {
    kernels::magnitude(sources[s].coeffs.re.data(), sources[s].coeffs.im.data(),
                       mags[s].data(), n);
    kernels::axpy(1.0, mags[s].data(), denom.data(), n);
  }
  if (noise) {
    std::vector<double> nm(n);
    kernels::magnitude(noise->coeffs.re.data(), noise->coeffs.im.data(),
                       nm.data(), n);
    kernels::axpy(1.0, nm.data(), denom.data(), n);
  }

  std::vector<Mask> masks(sources.size());
  for (std::size_t s = 0; s < sources.size(); ++s) {
    masks[s].kind = MaskKind::mag;
    masks[s].data = ComplexMatrix(rows, cols);
    for (std::size_t i = 0; i < n; ++i)
      masks[s].data.re[i] = mags[s][i] / denom[i];
  }
  return masks;
}

}  // namespace afb
