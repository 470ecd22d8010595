#include "afb/waveform.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "afb/common.hpp"

namespace afb {

void validate_waveform(const Waveform& w, const char* what) {
  if (w.samples.empty())
    throw Error(ErrorCategory::numeric, std::string(what) + " is empty");
  if (w.sample_rate <= 0)
    throw Error(ErrorCategory::numeric,
                std::string(what) + " has non-positive sample rate");
  for (double v : w.samples)
    if (!std::isfinite(v))
      throw Error(ErrorCategory::numeric,
                  std::string(what) + " contains non-finite samples");
}

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;

std::uint32_t rd_u32(const unsigned char* p) {
  return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 |
         std::uint32_t(p[2]) << 16 | std::uint32_t(p[3]) << 24;
}
std::uint16_t rd_u16(const unsigned char* p) {
  return std::uint16_t(p[0] | p[1] << 8);
}

void wr_u32(std::string& s, std::uint32_t v) {
  s.push_back(char(v & 0xff));
  s.push_back(char((v >> 8) & 0xff));
  s.push_back(char((v >> 16) & 0xff));
  s.push_back(char((v >> 24) & 0xff));
}
void wr_u16(std::string& s, std::uint16_t v) {
  s.push_back(char(v & 0xff));
  s.push_back(char((v >> 8) & 0xff));
}

}  // namespace

Waveform read_wav(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCategory::io, "cannot open " + path);
  std::string bytes((std::istreambuf_iterator<char>(f)),
                    std::istreambuf_iterator<char>());
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::size_t size = bytes.size();

  if (size < 12 || std::memcmp(p, "RIFF", 4) != 0 ||
      std::memcmp(p + 8, "WAVE", 4) != 0)
    throw Error(ErrorCategory::format, path + ": not a RIFF/WAVE file");

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const unsigned char* data = nullptr;
  std::uint32_t data_len = 0;

  std::size_t pos = 12;
  while (pos + 8 <= size) {
    const char* id = reinterpret_cast<const char*>(p + pos);
    std::uint32_t len = rd_u32(p + pos + 4);
    pos += 8;
    if (pos + len > size) len = static_cast<std::uint32_t>(size - pos);
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (len < 16)
        throw Error(ErrorCategory::format, path + ": fmt chunk truncated");
      format = rd_u16(p + pos);
      channels = rd_u16(p + pos + 2);
      rate = rd_u32(p + pos + 4);
      bits = rd_u16(p + pos + 14);
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      data = p + pos;
      data_len = len;
    }
    pos += len + (len & 1);  // chunks are word-aligned
  }

  if (!have_fmt || !data)
    throw Error(ErrorCategory::format, path + ": missing fmt or data chunk");
  if (channels != 1)
    throw Error(ErrorCategory::format,
                path + ": channels=" + std::to_string(channels) +
                    " (mono required)");
  if (!((format == kFormatPcm && bits == 16) ||
        (format == kFormatFloat && bits == 32)))
    throw Error(ErrorCategory::format,
                path + ": format_tag=" + std::to_string(format) +
                    " bits_per_sample=" + std::to_string(bits) +
                    " (PCM-16 or IEEE float32 required)");

  Waveform w;
  w.sample_rate = static_cast<int>(rate);
  if (format == kFormatPcm) {
    const std::size_t n = data_len / 2;
    w.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::int16_t v =
          static_cast<std::int16_t>(data[2 * i] | (data[2 * i + 1] << 8));
      w.samples[i] = static_cast<double>(v) / 32768.0;
    }
  } else {
    const std::size_t n = data_len / 4;
    w.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint32_t u = rd_u32(data + 4 * i);
      float v;
      std::memcpy(&v, &u, 4);
      w.samples[i] = static_cast<double>(v);
    }
  }
  validate_waveform(w, path.c_str());
  return w;
}

WavWriteStats write_wav(const std::string& path, const Waveform& w,
                        WavEncoding encoding) {
  validate_waveform(w);
  WavWriteStats stats;
  const std::size_t n = w.size();
  const bool pcm = encoding == WavEncoding::pcm16;
  const std::uint16_t bytes_per = pcm ? 2 : 4;
  const std::uint32_t data_len = static_cast<std::uint32_t>(n * bytes_per);

  std::string out;
  out.reserve(60 + data_len);
  out += "RIFF";
  wr_u32(out, 4 + (8 + 16) + (pcm ? 0 : 8 + 4) + 8 + data_len);
  out += "WAVE";
  out += "fmt ";
  wr_u32(out, 16);
  wr_u16(out, pcm ? kFormatPcm : kFormatFloat);
  wr_u16(out, 1);  // mono
  wr_u32(out, static_cast<std::uint32_t>(w.sample_rate));
  wr_u32(out, static_cast<std::uint32_t>(w.sample_rate) * bytes_per);
  wr_u16(out, bytes_per);
  wr_u16(out, pcm ? 16 : 32);
  if (!pcm) {
    out += "fact";
    wr_u32(out, 4);
    wr_u32(out, static_cast<std::uint32_t>(n));
  }
  out += "data";
  wr_u32(out, data_len);

  if (pcm) {
    for (double v : w.samples) {
      long q = std::lround(v * 32768.0);
      if (q > 32767) {
        q = 32767;
        ++stats.clipped_samples;
      } else if (q < -32768) {
        q = -32768;
        ++stats.clipped_samples;
      }
      wr_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
    }
  } else {
    for (double v : w.samples) {
      float fv = static_cast<float>(v);
      std::uint32_t u;
      std::memcpy(&u, &fv, 4);
      wr_u32(out, u);
    }
  }

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCategory::io, "cannot open " + path + " for write");
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw Error(ErrorCategory::io, "short write to " + path);
  return stats;
}

}  // namespace afb
