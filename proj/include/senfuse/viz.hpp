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

// Class model visualization: gradient ascent on both input tensors to find
// the audio and video that best excite one label's pre-sigmoid score.

#ifndef SENFUSE_VIZ_HPP_
#define SENFUSE_VIZ_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "senfuse/model.hpp"
#include "senfuse/tensor.hpp"

namespace senfuse::viz {

struct VizConfig {
  int steps = 500;
  double step_size = 0.1;
  double l2_coeff = 1e-4;
  std::uint64_t seed = 0;
};

struct ClassVizResult {
  std::size_t label = 0;
  Tensor audio;  // [60, 421, 1]
  Tensor video;  // [32, 32, 32, 3]
  // Best-so-far score per evaluation, steps+1 entries, non-decreasing.
  std::vector<double> trajectory;
};

// Ascends logit(label) - l2_coeff * (|a|^2 + |v|^2) in eval mode, starting
// from seeded low-amplitude noise. The video tensor is clamped to [0, 1]
// after every step. Network parameters are left untouched.
ClassVizResult class_model_viz(model::Network& net, std::size_t label,
                               const VizConfig& config = {});

// Writes spectrogram.pgm, frame_00..frame_31.ppm, highlight_06/12/24.ppm,
// and trajectory.csv. Returns the paths written, 37 in total.
std::vector<std::string> emit_artifacts(const ClassVizResult& result,
                                        const std::string& out_dir);

}  // namespace senfuse::viz

#endif  // SENFUSE_VIZ_HPP_
