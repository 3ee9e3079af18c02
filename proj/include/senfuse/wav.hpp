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

#ifndef SENFUSE_WAV_HPP_
#define SENFUSE_WAV_HPP_

#include <string>
#include <vector>

namespace senfuse {

// Mono audio in natural units; samples land in [-1, 1] after normalization.
struct AudioSignal {
  std::vector<float> samples;
  int sample_rate = 0;

  double duration_s() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
};

// Reads RIFF/WAVE, PCM 16-bit or IEEE float 32-bit. Multichannel input is
// downmixed to mono by channel mean.
AudioSignal read_wav(const std::string& path);

// Writes mono IEEE float 32-bit WAVE.
void write_wav(const std::string& path, const AudioSignal& signal);

}  // namespace senfuse

#endif  // SENFUSE_WAV_HPP_
