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

#include "senfuse/video_prep.hpp"

#include <algorithm>
#include <cmath>

#include "senfuse/error.hpp"

namespace senfuse::video {

FrameSequence subsample(const FrameSequence& frames, std::size_t n) {
  if (frames.empty()) throw DomainError("subsample: empty frame sequence");
  if (n == 0) throw DomainError("subsample: zero target count");
  const std::size_t f = frames.size();
  FrameSequence out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t idx = 0;
    if (n > 1) {
      idx = static_cast<std::size_t>(std::llround(
          static_cast<double>(i) * static_cast<double>(f - 1) / static_cast<double>(n - 1)));
    }
    out.push_back(frames[std::min(idx, f - 1)]);
  }
  return out;
}

Image resize_bilinear(const Image& frame) {
  if (frame.height == 0 || frame.width == 0) throw DomainError("resize_bilinear: empty frame");
  if (frame.height == kFrameSize && frame.width == kFrameSize) return frame;

  Image out(kFrameSize, kFrameSize);
  const double sy = frame.height > 1
                        ? static_cast<double>(frame.height - 1) / (kFrameSize - 1)
                        : 0.0;
  const double sx = frame.width > 1
                        ? static_cast<double>(frame.width - 1) / (kFrameSize - 1)
                        : 0.0;
  for (std::size_t y = 0; y < kFrameSize; ++y) {
    const double fy = static_cast<double>(y) * sy;
    const auto y0 = static_cast<std::size_t>(fy);
    const std::size_t y1 = std::min(y0 + 1, frame.height - 1);
    const double wy = fy - static_cast<double>(y0);
    for (std::size_t x = 0; x < kFrameSize; ++x) {
      const double fx = static_cast<double>(x) * sx;
      const auto x0 = static_cast<std::size_t>(fx);
      const std::size_t x1 = std::min(x0 + 1, frame.width - 1);
      const double wx = fx - static_cast<double>(x0);
      for (std::size_t c = 0; c < 3; ++c) {
        const double top = (1.0 - wx) * frame.at(y0, x0, c) + wx * frame.at(y0, x1, c);
        const double bot = (1.0 - wx) * frame.at(y1, x0, c) + wx * frame.at(y1, x1, c);
        const double v = (1.0 - wy) * top + wy * bot;
        out.at(y, x, c) = static_cast<std::uint8_t>(std::llround(std::clamp(v, 0.0, 255.0)));
      }
    }
  }
  return out;
}

Tensor normalize(const FrameSequence& frames) {
  if (frames.size() != kFrames) throw ShapeError("normalize: expected 32 frames");
  Tensor out({kFrames, kFrameSize, kFrameSize, 3});
  for (std::size_t t = 0; t < kFrames; ++t) {
    const Image& f = frames[t];
    if (f.height != kFrameSize || f.width != kFrameSize) {
      throw ShapeError("normalize: expected 32x32 frames");
    }
    for (std::size_t y = 0; y < kFrameSize; ++y) {
      for (std::size_t x = 0; x < kFrameSize; ++x) {
        for (std::size_t c = 0; c < 3; ++c) {
          out(t, y, x, c) = static_cast<float>(f.at(y, x, c)) / 255.0f;
        }
      }
    }
  }
  return out;
}

Tensor compute_video_tensor(const FrameSequence& frames) {
  FrameSequence picked = subsample(frames, kFrames);
  for (auto& f : picked) f = resize_bilinear(f);
  return normalize(picked);
}

}  // namespace senfuse::video
