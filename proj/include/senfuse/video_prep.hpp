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

// Video front end: arbitrary frame sequence in, 32x32x32x3 float tensor out
// (time, height, width, RGB; values in [0,1]).

#ifndef SENFUSE_VIDEO_PREP_HPP_
#define SENFUSE_VIDEO_PREP_HPP_

#include "senfuse/image_io.hpp"
#include "senfuse/tensor.hpp"

namespace senfuse::video {

inline constexpr std::size_t kFrames = 32;
inline constexpr std::size_t kFrameSize = 32;

// Uniform temporal subsampling to n frames: index i maps to
// round(i * (F-1) / (n-1)). Short sequences repeat frames.
FrameSequence subsample(const FrameSequence& frames, std::size_t n = kFrames);

// Corner-aligned bilinear resize to 32x32, RGB preserved.
Image resize_bilinear(const Image& frame);

// Stacks 32 frames of 32x32x3 into a float tensor scaled by 1/255.
Tensor normalize(const FrameSequence& frames);

// subsample -> resize -> normalize for one clip.
Tensor compute_video_tensor(const FrameSequence& frames);

}  // namespace senfuse::video

#endif  // SENFUSE_VIDEO_PREP_HPP_
