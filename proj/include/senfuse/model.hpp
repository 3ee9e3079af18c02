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

// Network assembly for the six experimental settings.
//
// Audio module  [B,60,421,1] -> [B,1000]:
//   Conv 80@57x6 valid -> BN -> ReLU -> Pool 4x3/1x3 -> Drop
//   -> Conv 80@1x3 valid -> BN -> ReLU -> Pool 1x3/1x3 -> Flatten(3600)
//   -> FC 5000 -> ReLU -> Drop -> FC 1000 -> ReLU
//
// Video module  [B,32,32,32,3] -> [B,1000]:
//   per frame: three stages of Conv-ReLU-Conv-BN-ReLU-Pool2x2 with 32/64/128
//   filters (3x3, same padding), dropout after stage one, then one extra
//   2x2 pool so each frame flattens to 2*2*128 = 512. The 32-step feature
//   sequence feeds an LSTM with 256 cells; its final state goes through
//   Drop -> FC 1000 -> ReLU.
//
// Fusion head: concat(1000+1000) -> FC 500 -> ReLU -> Drop -> FC 500 -> ReLU
//   -> Drop -> FC 7 -> sigmoid. Unimodal head: Drop -> FC 7 -> sigmoid.
//
// The fusioned-audio and fusioned-video settings feed one modality's feature
// vector into both fusion inputs. The sum ensemble is inference-only and
// composes two trained unimodal networks; see ensemble.hpp helpers below.

#ifndef SENFUSE_MODEL_HPP_
#define SENFUSE_MODEL_HPP_

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "senfuse/nn/layers.hpp"
#include "senfuse/nn/lstm.hpp"

namespace senfuse::model {

inline constexpr std::size_t kNumLabels = 7;
inline constexpr std::size_t kFeatureDim = 1000;
inline constexpr std::size_t kAudioBands = 60;
inline constexpr std::size_t kAudioFrames = 421;
inline constexpr std::size_t kAudioFlatten = 3600;
inline constexpr std::size_t kAudioHidden = 5000;
inline constexpr std::size_t kVideoFrames = 32;
inline constexpr std::size_t kVideoSize = 32;
inline constexpr std::size_t kVideoFlatten = 512;
inline constexpr std::size_t kLstmCells = 256;
inline constexpr std::size_t kFusionHidden = 500;
inline constexpr double kDropRate = 0.5;

enum class Setting {
  kAudioOnly,
  kVideoOnly,
  kBimodal,
  kFusionedAudio,
  kFusionedVideo,
  kSumEnsemble,
};

std::string to_string(Setting setting);
Setting setting_from_string(const std::string& name);
bool setting_uses_audio(Setting setting);
bool setting_uses_video(Setting setting);

// ---- reshape layers for the time-distributed video stack ---------------------

// [B, T, ...] -> [B*T, ...]; pure metadata, the buffer is untouched.
template <typename T>
class UnfoldTime : public nn::Layer<T> {
 public:
  explicit UnfoldTime(std::size_t steps) : steps_(steps) {}

  TensorT<T> forward(const TensorT<T>& x, nn::Mode) override {
    if (x.rank() < 3 || x.dim(1) != steps_) {
      throw ShapeError("unfold_time: input " + x.shape_str() + " lacks a " +
                       std::to_string(steps_) + "-step time axis");
    }
    typename TensorT<T>::Shape s{x.dim(0) * steps_};
    for (std::size_t i = 2; i < x.rank(); ++i) s.push_back(x.dim(i));
    return x.reshaped(std::move(s));
  }

  TensorT<T> backward(const TensorT<T>& x, const TensorT<T>&,
                      const TensorT<T>& dy) override {
    return dy.reshaped(x.shape());
  }

 private:
  std::size_t steps_;
};

// [B*T, K] -> [B, T, K]
template <typename T>
class FoldTime : public nn::Layer<T> {
 public:
  explicit FoldTime(std::size_t steps) : steps_(steps) {}

  TensorT<T> forward(const TensorT<T>& x, nn::Mode) override {
    if (x.rank() != 2 || x.dim(0) % steps_ != 0) {
      throw ShapeError("fold_time: input " + x.shape_str() + " is not a multiple of " +
                       std::to_string(steps_) + " rows");
    }
    return x.reshaped({x.dim(0) / steps_, steps_, x.dim(1)});
  }

  TensorT<T> backward(const TensorT<T>& x, const TensorT<T>&,
                      const TensorT<T>& dy) override {
    return dy.reshaped(x.shape());
  }

 private:
  std::size_t steps_;
};

// ---- feature extractors ------------------------------------------------------

template <typename T>
nn::Sequential<T> make_audio_module(Prng rng) {
  nn::Sequential<T> seq;
  seq.add(nn::Conv2d<T>("audio/conv1", 57, 6, 1, 80, nn::Padding::kValid,
                        rng.split("conv1")));
  seq.add(nn::BatchNorm<T>("audio/bn1", 80));
  seq.add(nn::ReLU<T>{});
  seq.add(nn::MaxPool2d<T>("audio/pool1", 4, 3, 1, 3));
  seq.add(nn::Dropout<T>("audio/drop1", kDropRate, rng.split("drop1")));
  seq.add(nn::Conv2d<T>("audio/conv2", 1, 3, 80, 80, nn::Padding::kValid,
                        rng.split("conv2")));
  seq.add(nn::BatchNorm<T>("audio/bn2", 80));
  seq.add(nn::ReLU<T>{});
  seq.add(nn::MaxPool2d<T>("audio/pool2", 1, 3, 1, 3));
  seq.add(nn::Flatten<T>{});
  seq.add(nn::Dense<T>("audio/fc1", kAudioFlatten, kAudioHidden, rng.split("fc1")));
  seq.add(nn::ReLU<T>{});
  seq.add(nn::Dropout<T>("audio/drop2", kDropRate, rng.split("drop2")));
  seq.add(nn::Dense<T>("audio/fc2", kAudioHidden, kFeatureDim, rng.split("fc2")));
  seq.add(nn::ReLU<T>{});
  return seq;
}

template <typename T>
nn::Sequential<T> make_video_module(Prng rng) {
  nn::Sequential<T> seq;
  seq.add(UnfoldTime<T>(kVideoFrames));
  const std::size_t widths[3] = {32, 64, 128};
  std::size_t cin = 3;
  for (std::size_t s = 0; s < 3; ++s) {
    const std::string stage = "video/stage" + std::to_string(s + 1);
    const std::size_t f = widths[s];
    seq.add(nn::Conv2d<T>(stage + "/conv_a", 3, 3, cin, f, nn::Padding::kSame,
                          rng.split(stage + "/conv_a")));
    seq.add(nn::ReLU<T>{});
    seq.add(nn::Conv2d<T>(stage + "/conv_b", 3, 3, f, f, nn::Padding::kSame,
                          rng.split(stage + "/conv_b")));
    seq.add(nn::BatchNorm<T>(stage + "/bn", f));
    seq.add(nn::ReLU<T>{});
    seq.add(nn::MaxPool2d<T>(stage + "/pool", 2, 2, 2, 2));
    if (s == 0) {
      seq.add(nn::Dropout<T>("video/drop1", kDropRate, rng.split("drop1")));
    }
    cin = f;
  }
  seq.add(nn::MaxPool2d<T>("video/pool_out", 2, 2, 2, 2));
  seq.add(nn::Flatten<T>{});
  seq.add(FoldTime<T>(kVideoFrames));
  seq.add(nn::Lstm<T>("video/lstm", kVideoFlatten, kLstmCells, rng.split("lstm")));
  seq.add(nn::Dropout<T>("video/drop2", kDropRate, rng.split("drop2")));
  seq.add(nn::Dense<T>("video/fc", kLstmCells, kFeatureDim, rng.split("fc")));
  seq.add(nn::ReLU<T>{});
  return seq;
}

// ---- classifier heads --------------------------------------------------------

// Two-input head; keeps the pre-sigmoid activations addressable so both the
// loss path (through the sigmoid) and saliency work (straight from a logit)
// can backpropagate.
template <typename T>
class FusionModule {
 public:
  explicit FusionModule(Prng rng) {
    seq_.add(nn::Dense<T>("fusion/fc1", 2 * kFeatureDim, kFusionHidden,
                          rng.split("fc1")));
    seq_.add(nn::ReLU<T>{});
    seq_.add(nn::Dropout<T>("fusion/drop1", kDropRate, rng.split("drop1")));
    seq_.add(nn::Dense<T>("fusion/fc2", kFusionHidden, kFusionHidden, rng.split("fc2")));
    seq_.add(nn::ReLU<T>{});
    seq_.add(nn::Dropout<T>("fusion/drop2", kDropRate, rng.split("drop2")));
    seq_.add(nn::Dense<T>("fusion/out", kFusionHidden, kNumLabels, rng.split("out")));
  }

  TensorT<T> forward(const TensorT<T>& a, const TensorT<T>& v, nn::Mode mode) {
    if (a.rank() != 2 || v.rank() != 2 || a.dim(1) != kFeatureDim ||
        v.dim(1) != kFeatureDim || a.dim(0) != v.dim(0)) {
      throw ShapeError("fusion: feature shapes " + a.shape_str() + " and " +
                       v.shape_str());
    }
    logits_ = seq_.forward(tensor::concat(a, v), mode);
    probs_ = sigmoid_.forward(logits_, mode);
    return probs_;
  }

  std::pair<TensorT<T>, TensorT<T>> backward(const TensorT<T>& dy,
                                             bool from_logits = false) {
    const TensorT<T> g = from_logits ? dy : sigmoid_.backward(logits_, probs_, dy);
    TensorT<T> dcat = seq_.backward(g, g, g);
    const std::size_t batch = dcat.dim(0);
    TensorT<T> da({batch, kFeatureDim}), dv({batch, kFeatureDim});
    for (std::size_t r = 0; r < batch; ++r) {
      const T* row = dcat.data() + r * 2 * kFeatureDim;
      std::copy(row, row + kFeatureDim, da.data() + r * kFeatureDim);
      std::copy(row + kFeatureDim, row + 2 * kFeatureDim, dv.data() + r * kFeatureDim);
    }
    return {std::move(da), std::move(dv)};
  }

  const TensorT<T>& logits() const { return logits_; }
  void collect_params(std::vector<nn::ParamRef<T>>& out) { seq_.collect_params(out); }
  void release_activations() { seq_.release_chain(); }

 private:
  nn::Sequential<T> seq_;
  nn::Sigmoid<T> sigmoid_;
  TensorT<T> logits_, probs_;
};

template <typename T>
class UnimodalHead {
 public:
  UnimodalHead(const std::string& prefix, Prng rng) {
    seq_.add(nn::Dropout<T>(prefix + "/drop", kDropRate, rng.split("drop")));
    seq_.add(nn::Dense<T>(prefix + "/fc", kFeatureDim, kNumLabels, rng.split("fc")));
  }

  TensorT<T> forward(const TensorT<T>& feat, nn::Mode mode) {
    if (feat.rank() != 2 || feat.dim(1) != kFeatureDim) {
      throw ShapeError("head: feature shape " + feat.shape_str());
    }
    logits_ = seq_.forward(feat, mode);
    probs_ = sigmoid_.forward(logits_, mode);
    return probs_;
  }

  TensorT<T> backward(const TensorT<T>& dy, bool from_logits = false) {
    const TensorT<T> g = from_logits ? dy : sigmoid_.backward(logits_, probs_, dy);
    return seq_.backward(g, g, g);
  }

  const TensorT<T>& logits() const { return logits_; }
  void collect_params(std::vector<nn::ParamRef<T>>& out) { seq_.collect_params(out); }
  void release_activations() { seq_.release_chain(); }

 private:
  nn::Sequential<T> seq_;
  nn::Sigmoid<T> sigmoid_;
  TensorT<T> logits_, probs_;
};

// ---- full network ------------------------------------------------------------

template <typename T>
class NetworkT {
 public:
  struct InputGrads {
    TensorT<T> audio;  // empty when the setting takes no audio input
    TensorT<T> video;
  };

  static NetworkT build(Setting setting, std::uint64_t seed) {
    if (setting == Setting::kSumEnsemble) {
      throw DomainError(
          "the sum ensemble is inference-only; compose two trained unimodal networks");
    }
    NetworkT net;
    net.setting_ = setting;
    net.seed_ = seed;
    Prng root(seed);
    if (setting_uses_audio(setting)) {
      net.audio_ = std::make_unique<nn::Sequential<T>>(
          make_audio_module<T>(root.split("audio")));
    }
    if (setting_uses_video(setting)) {
      net.video_ = std::make_unique<nn::Sequential<T>>(
          make_video_module<T>(root.split("video")));
    }
    switch (setting) {
      case Setting::kAudioOnly:
        net.head_ = std::make_unique<UnimodalHead<T>>("audio_head", root.split("head"));
        break;
      case Setting::kVideoOnly:
        net.head_ = std::make_unique<UnimodalHead<T>>("video_head", root.split("head"));
        break;
      default:
        net.fusion_ = std::make_unique<FusionModule<T>>(root.split("fusion"));
        break;
    }
    return net;
  }

  // Unused modality pointers may be null; the used ones must not be.
  TensorT<T> forward(const TensorT<T>* audio, const TensorT<T>* video, nn::Mode mode) {
    if (setting_uses_audio(setting_)) {
      if (audio == nullptr) throw DomainError(to_string(setting_) + " needs audio input");
      check_audio(*audio);
      feat_a_ = audio_->forward(*audio, mode);
    }
    if (setting_uses_video(setting_)) {
      if (video == nullptr) throw DomainError(to_string(setting_) + " needs video input");
      check_video(*video);
      feat_v_ = video_->forward(*video, mode);
    }
    switch (setting_) {
      case Setting::kAudioOnly:
        return head_->forward(feat_a_, mode);
      case Setting::kVideoOnly:
        return head_->forward(feat_v_, mode);
      case Setting::kBimodal:
        return fusion_->forward(feat_a_, feat_v_, mode);
      case Setting::kFusionedAudio:
        return fusion_->forward(feat_a_, feat_a_, mode);
      case Setting::kFusionedVideo:
        return fusion_->forward(feat_v_, feat_v_, mode);
      default:
        throw DomainError("unreachable setting");
    }
  }

  InputGrads backward(const TensorT<T>& dprob) { return backprop(dprob, false); }

  // Entry point for saliency work: gradient taken at the pre-sigmoid layer.
  InputGrads backward_from_logits(const TensorT<T>& dlogit) {
    return backprop(dlogit, true);
  }

  const TensorT<T>& logits() const {
    return fusion_ ? fusion_->logits() : head_->logits();
  }

  std::vector<nn::ParamRef<T>> params() {
    std::vector<nn::ParamRef<T>> out;
    if (audio_) audio_->collect_params(out);
    if (video_) video_->collect_params(out);
    if (fusion_) fusion_->collect_params(out);
    if (head_) head_->collect_params(out);
    return out;
  }

  void zero_grads() {
    for (auto& p : params()) {
      if (p.grad != nullptr) p.grad->zero();
    }
  }

  void release_activations() {
    if (audio_) audio_->release_chain();
    if (video_) video_->release_chain();
    if (fusion_) fusion_->release_activations();
    if (head_) head_->release_activations();
    feat_a_ = TensorT<T>();
    feat_v_ = TensorT<T>();
  }

  Setting setting() const { return setting_; }
  std::uint64_t seed() const { return seed_; }
  bool uses_audio() const { return setting_uses_audio(setting_); }
  bool uses_video() const { return setting_uses_video(setting_); }

 private:
  NetworkT() = default;

  void check_audio(const TensorT<T>& x) const {
    if (x.rank() != 4 || x.dim(1) != kAudioBands || x.dim(2) != kAudioFrames ||
        x.dim(3) != 1) {
      throw ShapeError("audio input " + x.shape_str() + ", expected [Bx60x421x1]");
    }
  }

  void check_video(const TensorT<T>& x) const {
    if (x.rank() != 5 || x.dim(1) != kVideoFrames || x.dim(2) != kVideoSize ||
        x.dim(3) != kVideoSize || x.dim(4) != 3) {
      throw ShapeError("video input " + x.shape_str() + ", expected [Bx32x32x32x3]");
    }
  }

  InputGrads backprop(const TensorT<T>& dy, bool from_logits) {
    InputGrads grads;
    const TensorT<T> dummy;
    switch (setting_) {
      case Setting::kAudioOnly: {
        TensorT<T> df = head_->backward(dy, from_logits);
        grads.audio = audio_->backward(dummy, dummy, df);
        break;
      }
      case Setting::kVideoOnly: {
        TensorT<T> df = head_->backward(dy, from_logits);
        grads.video = video_->backward(dummy, dummy, df);
        break;
      }
      case Setting::kBimodal: {
        auto [da, dv] = fusion_->backward(dy, from_logits);
        grads.audio = audio_->backward(dummy, dummy, da);
        grads.video = video_->backward(dummy, dummy, dv);
        break;
      }
      case Setting::kFusionedAudio: {
        auto [d1, d2] = fusion_->backward(dy, from_logits);
        grads.audio = audio_->backward(dummy, dummy, tensor::add(d1, d2));
        break;
      }
      case Setting::kFusionedVideo: {
        auto [d1, d2] = fusion_->backward(dy, from_logits);
        grads.video = video_->backward(dummy, dummy, tensor::add(d1, d2));
        break;
      }
      default:
        throw DomainError("unreachable setting");
    }
    return grads;
  }

  Setting setting_ = Setting::kAudioOnly;
  std::uint64_t seed_ = 0;
  std::unique_ptr<nn::Sequential<T>> audio_, video_;
  std::unique_ptr<FusionModule<T>> fusion_;
  std::unique_ptr<UnimodalHead<T>> head_;
  TensorT<T> feat_a_, feat_v_;
};

using Network = NetworkT<float>;

// Elementwise sum of two probability vectors; scores land in (0,2) and the
// downstream threshold decides label membership.
template <typename T>
TensorT<T> sum_ensemble_predict(const TensorT<T>& p_audio, const TensorT<T>& p_video) {
  return tensor::add(p_audio, p_video);
}

}  // namespace senfuse::model

#endif  // SENFUSE_MODEL_HPP_
