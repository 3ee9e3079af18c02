/* Copyright 2026 The Senfuse Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "senfuse/wav.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

#include "senfuse/error.hpp"

namespace senfuse {
namespace {

std::uint32_t rd_u32(const unsigned char* p) {
  return p[0] | (p[1] << 8) | (p[2] << 16) | (std::uint32_t(p[3]) << 24);
}
std::uint16_t rd_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void wr_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16),
                        static_cast<unsigned char>(v >> 24)};
  os.write(reinterpret_cast<char*>(b), 4);
}
void wr_u16(std::ostream& os, std::uint16_t v) {
  unsigned char b[2] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8)};
  os.write(reinterpret_cast<char*>(b), 2);
}

}  // namespace

AudioSignal read_wav(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw UnavailableSegment("cannot open " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(is)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 44 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw IoError(path + ": not a RIFF/WAVE file");
  }

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const unsigned char* data = nullptr;
  std::size_t data_len = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
    const std::uint32_t len = rd_u32(bytes.data() + pos + 4);
    const std::size_t body = pos + 8;
    if (body + len > bytes.size()) break;
    if (std::memcmp(id, "fmt ", 4) == 0 && len >= 16) {
      format = rd_u16(bytes.data() + body);
      channels = rd_u16(bytes.data() + body + 2);
      rate = rd_u32(bytes.data() + body + 4);
      bits = rd_u16(bytes.data() + body + 14);
    } else if (std::memcmp(id, "data", 4) == 0) {
      data = bytes.data() + body;
      data_len = len;
    }
    pos = body + len + (len & 1);  // chunks are word-aligned
  }

  if (!data || channels == 0 || rate == 0) throw IoError(path + ": missing fmt/data chunk");
  const bool pcm16 = format == 1 && bits == 16;
  const bool f32 = format == 3 && bits == 32;
  if (!pcm16 && !f32) {
    throw IoError(path + ": unsupported encoding (format " + std::to_string(format) +
                  ", " + std::to_string(bits) + " bits)");
  }

  const std::size_t bytes_per = bits / 8;
  const std::size_t frames = data_len / (bytes_per * channels);
  AudioSignal out;
  out.sample_rate = static_cast<int>(rate);
  out.samples.resize(frames);
  for (std::size_t f = 0; f < frames; ++f) {
    double acc = 0.0;
    for (std::uint16_t c = 0; c < channels; ++c) {
      const unsigned char* p = data + (f * channels + c) * bytes_per;
      if (pcm16) {
        const std::int16_t v = static_cast<std::int16_t>(rd_u16(p));
        acc += v / 32768.0;
      } else {
        float v;
        std::uint32_t bitsv = rd_u32(p);
        std::memcpy(&v, &bitsv, 4);
        acc += v;
      }
    }
    out.samples[f] = static_cast<float>(acc / channels);
  }
  return out;
}

void write_wav(const std::string& path, const AudioSignal& signal) {
  if (signal.sample_rate <= 0) throw DomainError("write_wav: sample rate must be positive");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path + " for writing");
  const std::uint32_t data_len = static_cast<std::uint32_t>(signal.samples.size() * 4);
  os.write("RIFF", 4);
  wr_u32(os, 36 + data_len);
  os.write("WAVE", 4);
  os.write("fmt ", 4);
  wr_u32(os, 16);
  wr_u16(os, 3);  // IEEE float
  wr_u16(os, 1);  // mono
  wr_u32(os, static_cast<std::uint32_t>(signal.sample_rate));
  wr_u32(os, static_cast<std::uint32_t>(signal.sample_rate) * 4);
  wr_u16(os, 4);
  wr_u16(os, 32);
  os.write("data", 4);
  wr_u32(os, data_len);
  for (float s : signal.samples) {
    std::uint32_t bits;
    std::memcpy(&bits, &s, 4);
    wr_u32(os, bits);
  }
  if (!os) throw IoError("failed writing " + path);
}

}  // namespace senfuse
