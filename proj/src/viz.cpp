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

#include "senfuse/viz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "senfuse/error.hpp"
#include "senfuse/image_io.hpp"
#include "senfuse/prng.hpp"

namespace senfuse::viz {
namespace fs = std::filesystem;

ClassVizResult class_model_viz(model::Network& net, std::size_t label,
                               const VizConfig& config) {
  if (net.setting() != model::Setting::kBimodal) {
    throw DomainError("class visualization needs a bimodal network, got " +
                      model::to_string(net.setting()));
  }
  if (label >= model::kNumLabels) {
    throw DomainError("label index " + std::to_string(label) + " out of range");
  }
  if (config.steps < 1) throw DomainError("visualization needs at least one step");
  if (!(config.step_size > 0.0)) throw DomainError("step size must be positive");
  if (config.l2_coeff < 0.0) throw DomainError("l2 coefficient must be non-negative");

  Prng root(config.seed);
  Prng audio_rng = root.split("audio_init");
  Prng video_rng = root.split("video_init");

  Tensor audio({1, model::kAudioBands, model::kAudioFrames, 1});
  for (auto& v : audio.vec()) {
    v = static_cast<float>(audio_rng.uniform(-0.05, 0.05));
  }
  Tensor video({1, model::kVideoFrames, model::kVideoSize, model::kVideoSize, 3});
  for (auto& v : video.vec()) {
    v = static_cast<float>(0.5 + video_rng.uniform(-0.05, 0.05));
  }

  const auto norm_sq = [](const Tensor& t) {
    double acc = 0.0;
    for (float v : t.vec()) acc += static_cast<double>(v) * v;
    return acc;
  };

  ClassVizResult result;
  result.label = label;
  double best = -std::numeric_limits<double>::infinity();

  for (int step = 0; step <= config.steps; ++step) {
    net.forward(&audio, &video, nn::Mode::kEval);
    const double logit = net.logits()(0, label);
    const double score =
        logit - config.l2_coeff * (norm_sq(audio) + norm_sq(video));
    if (score > best) {
      best = score;
      result.audio = audio;
      result.video = video;
    }
    result.trajectory.push_back(best);
    if (step == config.steps) {
      net.release_activations();
      break;
    }

    Tensor dlogit = Tensor::zeros({1, model::kNumLabels});
    dlogit(0, label) = 1.0f;
    model::Network::InputGrads grads = net.backward_from_logits(dlogit);
    net.zero_grads();
    net.release_activations();

    const auto lr = static_cast<float>(config.step_size);
    const auto decay = static_cast<float>(2.0 * config.l2_coeff);
    for (std::size_t i = 0; i < audio.size(); ++i) {
      audio[i] += lr * (grads.audio[i] - decay * audio[i]);
    }
    for (std::size_t i = 0; i < video.size(); ++i) {
      video[i] = std::clamp(video[i] + lr * (grads.video[i] - decay * video[i]),
                            0.0f, 1.0f);
    }
  }

  result.audio = result.audio.reshaped(
      {model::kAudioBands, model::kAudioFrames, std::size_t{1}});
  result.video = result.video.reshaped({model::kVideoFrames, model::kVideoSize,
                                        model::kVideoSize, std::size_t{3}});
  return result;
}

namespace {

std::uint8_t to_byte(double unit) {
  return static_cast<std::uint8_t>(
      std::clamp<long>(std::llround(unit * 255.0), 0, 255));
}

Image frame_image(const Tensor& video, std::size_t t) {
  Image img(model::kVideoSize, model::kVideoSize);
  for (std::size_t y = 0; y < model::kVideoSize; ++y) {
    for (std::size_t x = 0; x < model::kVideoSize; ++x) {
      for (std::size_t c = 0; c < 3; ++c) {
        img.at(y, x, c) = to_byte(video(t, y, x, c));
      }
    }
  }
  return img;
}

}  // namespace

std::vector<std::string> emit_artifacts(const ClassVizResult& result,
                                        const std::string& out_dir) {
  if (result.audio.size() == 0 || result.video.size() == 0) {
    throw DomainError("empty visualization result");
  }
  fs::create_directories(out_dir);
  std::vector<std::string> written;

  // Spectrogram, min-max mapped to 8-bit gray. A flat tensor maps to mid gray.
  {
    const auto [lo_it, hi_it] =
        std::minmax_element(result.audio.vec().begin(), result.audio.vec().end());
    const double lo = *lo_it, hi = *hi_it;
    std::vector<std::uint8_t> gray(result.audio.size(), 128);
    if (hi > lo) {
      for (std::size_t i = 0; i < gray.size(); ++i) {
        gray[i] = to_byte((result.audio[i] - lo) / (hi - lo));
      }
    }
    const std::string path = (fs::path(out_dir) / "spectrogram.pgm").string();
    write_pgm(path, result.audio.shape()[0], result.audio.shape()[1], gray);
    written.push_back(path);
  }

  char name[32];
  for (std::size_t t = 0; t < model::kVideoFrames; ++t) {
    std::snprintf(name, sizeof(name), "frame_%02zu.ppm", t);
    const std::string path = (fs::path(out_dir) / name).string();
    write_ppm(path, frame_image(result.video, t));
    written.push_back(path);
  }
  for (std::size_t t : {std::size_t{6}, std::size_t{12}, std::size_t{24}}) {
    std::snprintf(name, sizeof(name), "highlight_%02zu.ppm", t);
    const std::string path = (fs::path(out_dir) / name).string();
    write_ppm(path, frame_image(result.video, t));
    written.push_back(path);
  }

  {
    const std::string path = (fs::path(out_dir) / "trajectory.csv").string();
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot write " + path);
    os << "step,score\n";
    char buf[64];
    for (std::size_t i = 0; i < result.trajectory.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%zu,%.8f", i, result.trajectory[i]);
      os << buf << '\n';
    }
    written.push_back(path);
  }
  return written;
}

}  // namespace senfuse::viz
