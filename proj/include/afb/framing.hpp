#pragma once

#include <cstddef>
#include <vector>

#include "afb/matrix.hpp"
#include "afb/waveform.hpp"

namespace afb {

// Frame layout over a zero-padded timeline. padded_len == (K-1)*H + L always
// holds; original_len samples start at pad_front within the padded timeline.
struct FrameGrid {
  std::size_t num_frames = 0;   // K
  std::size_t frame_len = 0;    // L
  std::size_t hop = 0;          // H
  std::size_t pad_front = 0;
  std::size_t original_len = 0;

  std::size_t padded_len() const {
    return (num_frames - 1) * hop + frame_len;
  }
};

// full: zero-pad L-H front, at least L-H back, then complete the hop grid so
//       every sample is covered by the same number of frames as the interior
//       (up to edges of the pad).
// none: frames that fit entirely inside the signal; no padding.
enum class PadPolicy { full, none };

FrameGrid make_frame_grid(std::size_t original_len, std::size_t frame_len,
                          std::size_t hop, PadPolicy policy);

// x zero-padded per grid; returns the padded timeline.
std::vector<double> pad_signal(const std::vector<double>& x,
                               const FrameGrid& grid);

struct FramedSignal {
  RealMatrix frames;  // K x L
  FrameGrid grid;
};

FramedSignal frame_signal(const Waveform& x, std::size_t frame_len,
                          std::size_t hop, PadPolicy policy = PadPolicy::full);

// Transpose of frame_signal for the same grid: accumulate hop-shifted frames,
// then trim the padding. out[t] = sum_k frames[k][t + pad_front - k*H].
Waveform overlap_add(const RealMatrix& frames, const FrameGrid& grid,
                     int sample_rate);

// The accumulation step alone, over the full padded timeline (no trim).
std::vector<double> overlap_add_padded(const RealMatrix& frames,
                                       const FrameGrid& grid);

}  // namespace afb
