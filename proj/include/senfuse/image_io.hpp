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

#ifndef SENFUSE_IMAGE_IO_HPP_
#define SENFUSE_IMAGE_IO_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace senfuse {

// Interleaved RGB, row-major, 8 bits per channel.
struct Image {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<std::uint8_t> rgb;

  Image() = default;
  Image(std::size_t h, std::size_t w) : height(h), width(w), rgb(h * w * 3, 0) {}

  std::uint8_t& at(std::size_t y, std::size_t x, std::size_t c) {
    return rgb[(y * width + x) * 3 + c];
  }
  std::uint8_t at(std::size_t y, std::size_t x, std::size_t c) const {
    return rgb[(y * width + x) * 3 + c];
  }
};

using FrameSequence = std::vector<Image>;

Image read_ppm(const std::string& path);
void write_ppm(const std::string& path, const Image& img);

// Grayscale P5 output, one byte per pixel.
void write_pgm(const std::string& path, std::size_t height, std::size_t width,
               const std::vector<std::uint8_t>& gray);

// Packed frame archive:
//   magic "BMF1" | u16 LE frame count | u16 LE height | u16 LE width |
//   frames x height x width x 3 raw RGB bytes.
FrameSequence read_bmf(const std::string& path);
void write_bmf(const std::string& path, const FrameSequence& frames);

// Loads a clip's frames: `<dir>/frames.bmf` if present, otherwise every
// `*.ppm` in the directory ordered by filename.
FrameSequence load_frames(const std::string& dir);

}  // namespace senfuse

#endif  // SENFUSE_IMAGE_IO_HPP_
