#pragma once

#include <vector>

#include "afb/matrix.hpp"
#include "afb/transform.hpp"

namespace afb {

enum class MaskKind { mag, complex_product, re_im };

const char* mask_kind_name(MaskKind k);
MaskKind mask_kind_from_name(const std::string& name);

// Storage by kind:
//   mag:             data.re holds the K x N nonnegative gains, data.im zero
//   complex_product: data.re/.im hold the K x N complex mask
//   re_im:           data.re holds m_re, data.im holds m_im (K x N each)
struct Mask {
  MaskKind kind = MaskKind::mag;
  ComplexMatrix data;
};

inline constexpr double kMaskEps = 1e-8;
inline constexpr double kMaskClipDefault = 10.0;

// Y = G(X) .* M per kind. Mag masks scale the modulus and keep the phase.
TFRepresentation apply_mask(const TFRepresentation& x, const Mask& m);

// Oracle masks from the true source representations, standing in for a
// masking network. Entries are clipped to modulus (or absolute value)
// clip_limit; divisions are eps-guarded.
std::vector<Mask> ideal_masks(const std::vector<TFRepresentation>& sources,
                              const TFRepresentation& mixture, MaskKind kind,
                              double clip_limit = kMaskClipDefault);

// Ideal ratio mask, magnitude flavor: |S_i| / (sum_c |S_c| + |noise| + eps).
std::vector<Mask> irm(const std::vector<TFRepresentation>& sources,
                      const TFRepresentation* noise = nullptr);

}  // namespace afb
