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

#include "senfuse/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "senfuse/error.hpp"

namespace senfuse {
namespace {

// Reads one PNM header token, skipping whitespace and '#' comments.
std::size_t read_pnm_int(std::istream& is, const std::string& path) {
  int c = is.get();
  while (c != EOF && (std::isspace(c) || c == '#')) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = is.get();
    }
    c = is.get();
  }
  std::size_t value = 0;
  bool any = false;
  while (c != EOF && std::isdigit(c)) {
    value = value * 10 + static_cast<std::size_t>(c - '0');
    any = true;
    c = is.get();
  }
  if (!any) throw IoError(path + ": malformed PNM header");
  return value;
}

void wr_u16le(std::ostream& os, std::uint16_t v) {
  unsigned char b[2] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8)};
  os.write(reinterpret_cast<char*>(b), 2);
}

std::uint16_t rd_u16le(std::istream& is) {
  unsigned char b[2];
  is.read(reinterpret_cast<char*>(b), 2);
  return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

}  // namespace

Image read_ppm(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw UnavailableSegment("cannot open " + path);
  char m0 = 0, m1 = 0;
  is.get(m0);
  is.get(m1);
  if (m0 != 'P' || m1 != '6') throw IoError(path + ": expected P6 PPM");
  const std::size_t w = read_pnm_int(is, path);
  const std::size_t h = read_pnm_int(is, path);
  const std::size_t maxval = read_pnm_int(is, path);
  if (maxval != 255) throw IoError(path + ": only maxval 255 supported");
  Image img(h, w);
  is.read(reinterpret_cast<char*>(img.rgb.data()),
          static_cast<std::streamsize>(img.rgb.size()));
  if (!is) throw IoError(path + ": truncated pixel data");
  return img;
}

void write_ppm(const std::string& path, const Image& img) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path + " for writing");
  os << "P6\n" << img.width << " " << img.height << "\n255\n";
  os.write(reinterpret_cast<const char*>(img.rgb.data()),
           static_cast<std::streamsize>(img.rgb.size()));
  if (!os) throw IoError("failed writing " + path);
}

void write_pgm(const std::string& path, std::size_t height, std::size_t width,
               const std::vector<std::uint8_t>& gray) {
  if (gray.size() != height * width) throw ShapeError("write_pgm: size mismatch");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path + " for writing");
  os << "P5\n" << width << " " << height << "\n255\n";
  os.write(reinterpret_cast<const char*>(gray.data()),
           static_cast<std::streamsize>(gray.size()));
  if (!os) throw IoError("failed writing " + path);
}

FrameSequence read_bmf(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw UnavailableSegment("cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "BMF1", 4) != 0) throw IoError(path + ": bad frame magic");
  const std::size_t n = rd_u16le(is);
  const std::size_t h = rd_u16le(is);
  const std::size_t w = rd_u16le(is);
  if (n == 0 || h == 0 || w == 0) throw IoError(path + ": empty frame archive");
  FrameSequence frames(n, Image(h, w));
  for (auto& f : frames) {
    is.read(reinterpret_cast<char*>(f.rgb.data()),
            static_cast<std::streamsize>(f.rgb.size()));
  }
  if (!is) throw IoError(path + ": truncated frame data");
  return frames;
}

void write_bmf(const std::string& path, const FrameSequence& frames) {
  if (frames.empty()) throw DomainError("write_bmf: no frames");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path + " for writing");
  os.write("BMF1", 4);
  wr_u16le(os, static_cast<std::uint16_t>(frames.size()));
  wr_u16le(os, static_cast<std::uint16_t>(frames.front().height));
  wr_u16le(os, static_cast<std::uint16_t>(frames.front().width));
  for (const auto& f : frames) {
    if (f.height != frames.front().height || f.width != frames.front().width) {
      throw ShapeError("write_bmf: frames differ in size");
    }
    os.write(reinterpret_cast<const char*>(f.rgb.data()),
             static_cast<std::streamsize>(f.rgb.size()));
  }
  if (!os) throw IoError("failed writing " + path);
}

FrameSequence load_frames(const std::string& dir) {
  namespace fs = std::filesystem;
  const fs::path packed = fs::path(dir) / "frames.bmf";
  if (fs::exists(packed)) return read_bmf(packed.string());

  std::vector<std::string> names;
  if (fs::is_directory(dir)) {
    for (const auto& e : fs::directory_iterator(dir)) {
      if (e.path().extension() == ".ppm") names.push_back(e.path().string());
    }
  }
  if (names.empty()) throw UnavailableSegment("no frames.bmf or *.ppm in " + dir);
  std::sort(names.begin(), names.end());
  FrameSequence frames;
  frames.reserve(names.size());
  for (const auto& n : names) frames.push_back(read_ppm(n));
  return frames;
}

}  // namespace senfuse
