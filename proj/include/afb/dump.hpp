#pragma once

#include <string>

#include "afb/filterbank.hpp"
#include "afb/masking.hpp"
#include "afb/transform.hpp"

namespace afb {

// Filterbank dump: JSON with the config, optional sinc parameters, windows,
// decoder weights and row-major coefficient arrays. Numbers are written with
// round-trip precision, so dump -> load reproduces coefficients exactly.
void dump_filterbank_json(const Filterbank& bank, const std::string& path);
Filterbank load_filterbank_json(const std::string& path);

// TF dump: decimal-text matrix file, frame-major. Debug format; also the
// carrier for externally estimated masks.
//
//   afb-tf 1
//   kind <compl|mag|reim>
//   rows <K> cols <N>
//   <row 0: re im re im ...>        (mag: one value per coefficient)
//   ...
void dump_tf_text(const TFRepresentation& rep, const std::string& path);
void dump_mask_text(const Mask& mask, const std::string& path);
Mask load_mask_text(const std::string& path);

}  // namespace afb
