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

// Training loop, evaluation, and the six-setting comparison harness.

#ifndef SENFUSE_TRAIN_EVAL_HPP_
#define SENFUSE_TRAIN_EVAL_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "senfuse/checkpoint.hpp"
#include "senfuse/dataset.hpp"
#include "senfuse/metrics.hpp"
#include "senfuse/model.hpp"
#include "senfuse/nn/optimizer.hpp"
#include "senfuse/tensor.hpp"

namespace senfuse::train {

inline constexpr const char* kVersionString = "senfuse 1.0.0";

struct TrainConfig {
  model::Setting setting = model::Setting::kBimodal;
  int epochs = 40;
  int batch_size = 32;
  double lr = 0.01;
  double momentum = 0.9;
  std::uint64_t seed = 0;
  double threshold = 0.5;
  // Convergence gate for memorization runs: stop once the epoch's training
  // loss drops below this value. Unset for fixed-length schedules.
  std::optional<double> stop_when_train_below;

  void validate() const;
  nlohmann::json to_json() const;
  static TrainConfig from_json(const nlohmann::json& j);
};

struct CurveRow {
  int epoch = 0;
  double train_loss = 0.0;
  double val_loss = 0.0;
};

struct LearningCurve {
  std::vector<CurveRow> rows;
  std::string to_csv() const;
};

// One clip after preprocessing. Unused modalities stay empty.
struct Example {
  std::string id;
  Tensor audio;  // [60, 421, 1]
  Tensor video;  // [32, 32, 32, 3]
  std::vector<float> labels;
};

// Disk cache of preprocessed feature tensors keyed by raw-content hash.
class FeatureCache {
 public:
  FeatureCache() = default;
  explicit FeatureCache(std::string dir);

  bool enabled() const { return !dir_.empty(); }
  bool load(const std::string& key, Tensor& out) const;
  void store(const std::string& key, const Tensor& t) const;

  static std::string audio_key(const AudioSignal& signal);
  static std::string video_key(const FrameSequence& frames);

 private:
  std::string dir_;
};

Example preprocess_clip(const dataset::Clip& clip, bool want_audio, bool want_video,
                        const FeatureCache* cache = nullptr);

// Loads and preprocesses every manifest entry from a clip store. Workers
// split the index range; result order always follows the entry order.
std::vector<Example> load_examples(const std::string& store,
                                   const std::vector<dataset::ManifestEntry>& entries,
                                   const dataset::LabelMap& labels,
                                   model::Setting setting,
                                   const FeatureCache* cache = nullptr, int jobs = 1);

// Content hash over ids, labels, and feature bytes of a dataset split.
std::string dataset_hash(const std::vector<Example>& examples);

struct TrainResult {
  model::Checkpoint checkpoint;
  LearningCurve curve;
  nn::SgdNesterov<float> optimizer;
};

TrainResult train(const TrainConfig& config, const std::vector<Example>& train_set,
                  const std::vector<Example>& val_set);

// Eval-mode probabilities for every example, shape [N, 7].
Tensor predict(model::Network& net, const std::vector<Example>& examples,
               int batch_size);

// Eval-mode mean binary cross-entropy over a split.
double dataset_loss(model::Network& net, const std::vector<Example>& examples,
                    int batch_size);

metrics::EvalReport evaluate(model::Network& net, const std::vector<Example>& examples,
                             double threshold, int batch_size,
                             const std::vector<std::string>& label_names);

// Constant predictor that emits each label's training-set frequency.
metrics::EvalReport prior_baseline_report(const std::vector<Example>& train_set,
                                          const std::vector<Example>& val_set,
                                          double threshold,
                                          const std::vector<std::string>& label_names);

struct CompareOutcome {
  // Six rows in report order: audio_only, video_only, bimodal,
  // fusioned_audio, fusioned_video, sum_ensemble.
  std::vector<std::pair<std::string, metrics::EvalReport>> reports;
  // Five curves, one per trained setting.
  std::vector<std::pair<std::string, LearningCurve>> curves;

  std::string report_csv() const;
  const metrics::EvalReport& report_for(const std::string& name) const;
};

// Trains the five learnable settings, composes the sum ensemble from the two
// unimodal checkpoints, and writes checkpoints, curves, and the comparison
// report under out_dir.
CompareOutcome compare_all(const TrainConfig& base,
                           const std::vector<Example>& train_set,
                           const std::vector<Example>& val_set,
                           const std::string& out_dir);

nlohmann::json run_manifest(const TrainConfig& config, const std::string& train_hash,
                            const std::string& val_hash);

}  // namespace senfuse::train

#endif  // SENFUSE_TRAIN_EVAL_HPP_
