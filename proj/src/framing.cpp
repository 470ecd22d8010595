#include "afb/framing.hpp"

#include <algorithm>
#include <cstring>

#include "afb/common.hpp"
#include "afb/kernels.hpp"

namespace afb {

FrameGrid make_frame_grid(std::size_t original_len, std::size_t frame_len,
                          std::size_t hop, PadPolicy policy) {
  if (original_len == 0)
    throw Error(ErrorCategory::numeric, "cannot frame an empty signal");
  if (frame_len < 1)
    throw Error(ErrorCategory::config, "frame_len must be >= 1");
  if (hop < 1 || hop > frame_len)
    throw Error(ErrorCategory::config, "hop must satisfy 1 <= H <= L");

  FrameGrid g;
  g.frame_len = frame_len;
  g.hop = hop;
  g.original_len = original_len;

  if (policy == PadPolicy::none) {
    if (original_len < frame_len)
      throw Error(ErrorCategory::config,
                  "signal shorter than one frame with PadPolicy::none");
    g.pad_front = 0;
    g.num_frames = (original_len - frame_len) / hop + 1;
    return g;
  }

  g.pad_front = frame_len - hop;
  const std::size_t min_padded = g.pad_front + original_len + (frame_len - hop);
  if (min_padded <= frame_len)
    g.num_frames = 1;
  else
    g.num_frames = (min_padded - frame_len + hop - 1) / hop + 1;
  return g;
}

std::vector<double> pad_signal(const std::vector<double>& x,
                               const FrameGrid& grid) {
  std::vector<double> padded(grid.padded_len(), 0.0);
  const std::size_t n = std::min(x.size(), grid.original_len);
  std::copy_n(x.begin(), n, padded.begin() + grid.pad_front);
  return padded;
}

FramedSignal frame_signal(const Waveform& x, std::size_t frame_len,
                          std::size_t hop, PadPolicy policy) {
  validate_waveform(x);
  FramedSignal out;
  out.grid = make_frame_grid(x.size(), frame_len, hop, policy);
  const std::vector<double> padded = pad_signal(x.samples, out.grid);
  out.frames = RealMatrix(out.grid.num_frames, frame_len);
  for (std::size_t k = 0; k < out.grid.num_frames; ++k)
    std::memcpy(out.frames.row(k), padded.data() + k * hop,
                frame_len * sizeof(double));
  return out;
}

std::vector<double> overlap_add_padded(const RealMatrix& frames,
                                       const FrameGrid& grid) {
  if (frames.rows != grid.num_frames || frames.cols != grid.frame_len)
    throw Error(ErrorCategory::shape,
                "frame matrix does not match the frame grid");
  std::vector<double> out(grid.padded_len(), 0.0);
  for (std::size_t k = 0; k < grid.num_frames; ++k)
    kernels::axpy(1.0, frames.row(k), out.data() + k * grid.hop,
                  grid.frame_len);
  return out;
}

Waveform overlap_add(const RealMatrix& frames, const FrameGrid& grid,
                     int sample_rate) {
  std::vector<double> padded = overlap_add_padded(frames, grid);
  Waveform w;
  w.sample_rate = sample_rate;
  w.samples.assign(padded.begin() + grid.pad_front,
                   padded.begin() + grid.pad_front + grid.original_len);
  return w;
}

}  // namespace afb
