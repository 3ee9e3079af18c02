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

#include "senfuse/train_eval.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "senfuse/audio_dsp.hpp"
#include "senfuse/error.hpp"
#include "senfuse/hash.hpp"
#include "senfuse/nn/loss.hpp"
#include "senfuse/prng.hpp"
#include "senfuse/tensor_io.hpp"
#include "senfuse/video_prep.hpp"

namespace senfuse::train {
namespace fs = std::filesystem;

// ---- config ------------------------------------------------------------------

void TrainConfig::validate() const {
  if (epochs < 0) throw DomainError("config: epochs must be non-negative");
  if (batch_size <= 0) throw DomainError("config: batch_size must be positive");
  if (!(lr >= 0.0) || !std::isfinite(lr)) throw DomainError("config: bad learning rate");
  if (!(momentum >= 0.0 && momentum < 1.0)) {
    throw DomainError("config: momentum must lie in [0, 1)");
  }
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw DomainError("config: threshold must lie in (0, 1)");
  }
  if (stop_when_train_below && !(*stop_when_train_below > 0.0)) {
    throw DomainError("config: stop threshold must be positive");
  }
}

nlohmann::json TrainConfig::to_json() const {
  nlohmann::json j{{"setting", model::to_string(setting)}, {"epochs", epochs},
                   {"batch_size", batch_size},             {"lr", lr},
                   {"momentum", momentum},                 {"seed", seed},
                   {"threshold", threshold}};
  if (stop_when_train_below) j["stop_when_train_below"] = *stop_when_train_below;
  return j;
}

TrainConfig TrainConfig::from_json(const nlohmann::json& j) {
  TrainConfig cfg;
  if (j.contains("setting")) {
    cfg.setting = model::setting_from_string(j.at("setting").get<std::string>());
  }
  if (j.contains("epochs")) cfg.epochs = j.at("epochs").get<int>();
  if (j.contains("batch_size")) cfg.batch_size = j.at("batch_size").get<int>();
  if (j.contains("lr")) cfg.lr = j.at("lr").get<double>();
  if (j.contains("momentum")) cfg.momentum = j.at("momentum").get<double>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("threshold")) cfg.threshold = j.at("threshold").get<double>();
  if (j.contains("stop_when_train_below")) {
    cfg.stop_when_train_below = j.at("stop_when_train_below").get<double>();
  }
  cfg.validate();
  return cfg;
}

std::string LearningCurve::to_csv() const {
  std::ostringstream os;
  os << "epoch,train_loss,val_loss\n";
  char buf[64];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof(buf), "%d,%.8f,%.8f", row.epoch, row.train_loss,
                  row.val_loss);
    os << buf << '\n';
  }
  return os.str();
}

// ---- feature cache -----------------------------------------------------------

FeatureCache::FeatureCache(std::string dir) : dir_(std::move(dir)) {
  if (!dir_.empty()) fs::create_directories(dir_);
}

bool FeatureCache::load(const std::string& key, Tensor& out) const {
  if (dir_.empty()) return false;
  const fs::path path = fs::path(dir_) / (key + ".bmt");
  if (!fs::exists(path)) return false;
  out = load_tensor_f32(path.string());
  return true;
}

void FeatureCache::store(const std::string& key, const Tensor& t) const {
  if (dir_.empty()) return;
  const fs::path path = fs::path(dir_) / (key + ".bmt");
  const fs::path tmp = fs::path(dir_) / (key + ".tmp");
  save_tensor(tmp.string(), t);
  fs::rename(tmp, path);
}

std::string FeatureCache::audio_key(const AudioSignal& signal) {
  std::uint64_t h = fnv1a64(&signal.sample_rate, sizeof(signal.sample_rate));
  h = fnv1a64(signal.samples.data(), signal.samples.size() * sizeof(float), h);
  return "a" + hex_u64(h);
}

std::string FeatureCache::video_key(const FrameSequence& frames) {
  std::uint64_t h = kFnvOffset;
  for (const auto& frame : frames) {
    const std::size_t dims[2] = {frame.height, frame.width};
    h = fnv1a64(dims, sizeof(dims), h);
    h = fnv1a64(frame.rgb.data(), frame.rgb.size(), h);
  }
  return "v" + hex_u64(h);
}

// ---- preprocessing -----------------------------------------------------------

Example preprocess_clip(const dataset::Clip& clip, bool want_audio, bool want_video,
                        const FeatureCache* cache) {
  Example ex;
  ex.id = clip.id;
  ex.labels = clip.labels;
  if (want_audio) {
    const std::string key = FeatureCache::audio_key(clip.audio);
    if (!cache || !cache->load(key, ex.audio)) {
      ex.audio = dsp::compute_log_mel(clip.audio);
      if (cache) cache->store(key, ex.audio);
    }
  }
  if (want_video) {
    const std::string key = FeatureCache::video_key(clip.frames);
    if (!cache || !cache->load(key, ex.video)) {
      ex.video = video::compute_video_tensor(clip.frames);
      if (cache) cache->store(key, ex.video);
    }
  }
  return ex;
}

std::vector<Example> load_examples(const std::string& store,
                                   const std::vector<dataset::ManifestEntry>& entries,
                                   const dataset::LabelMap& labels,
                                   model::Setting setting, const FeatureCache* cache,
                                   int jobs) {
  const bool want_audio = model::setting_uses_audio(setting);
  const bool want_video = model::setting_uses_video(setting);
  std::vector<Example> out(entries.size());

  const auto process = [&](std::size_t i) {
    const dataset::Clip clip = dataset::load_clip(store, entries[i], labels);
    out[i] = preprocess_clip(clip, want_audio, want_video, cache);
  };

  if (jobs <= 1 || entries.size() < 2) {
    for (std::size_t i = 0; i < entries.size(); ++i) process(i);
    return out;
  }

  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(jobs), entries.size());
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < entries.size(); i += workers) {
        try {
          process(i);
        } catch (...) {
          std::scoped_lock lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

std::string dataset_hash(const std::vector<Example>& examples) {
  std::uint64_t h = kFnvOffset;
  for (const auto& ex : examples) {
    h = fnv1a64(ex.id, h);
    h = fnv1a64(ex.labels.data(), ex.labels.size() * sizeof(float), h);
    h = fnv1a64(ex.audio.data(), ex.audio.size() * sizeof(float), h);
    h = fnv1a64(ex.video.data(), ex.video.size() * sizeof(float), h);
  }
  return hex_u64(h);
}

// ---- batching ----------------------------------------------------------------

namespace {

Tensor gather_features(const std::vector<Example>& examples,
                       const std::vector<std::size_t>& order, std::size_t begin,
                       std::size_t end, bool audio) {
  std::vector<const Tensor*> parts;
  parts.reserve(end - begin);
  for (std::size_t i = begin; i < end; ++i) {
    const Example& ex = examples[order[i]];
    parts.push_back(audio ? &ex.audio : &ex.video);
  }
  return tensor::stack(parts);
}

Tensor gather_labels(const std::vector<Example>& examples,
                     const std::vector<std::size_t>& order, std::size_t begin,
                     std::size_t end) {
  Tensor y({end - begin, model::kNumLabels});
  for (std::size_t i = begin; i < end; ++i) {
    const Example& ex = examples[order[i]];
    if (ex.labels.size() != model::kNumLabels) {
      throw ShapeError("example " + ex.id + ": expected 7 labels");
    }
    for (std::size_t l = 0; l < model::kNumLabels; ++l) {
      y(i - begin, l) = ex.labels[l];
    }
  }
  return y;
}

std::vector<std::size_t> identity_order(std::size_t n) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  return order;
}

void check_modalities(const std::vector<Example>& examples, model::Setting setting,
                      const char* split) {
  for (const auto& ex : examples) {
    if (model::setting_uses_audio(setting) && ex.audio.size() == 0) {
      throw ShapeError(std::string(split) + " example " + ex.id +
                       " has no audio features");
    }
    if (model::setting_uses_video(setting) && ex.video.size() == 0) {
      throw ShapeError(std::string(split) + " example " + ex.id +
                       " has no video features");
    }
  }
}

}  // namespace

// ---- prediction and evaluation -----------------------------------------------

Tensor predict(model::Network& net, const std::vector<Example>& examples,
               int batch_size) {
  const std::size_t n = examples.size();
  if (n == 0) throw DomainError("predict: empty dataset");
  const auto step = static_cast<std::size_t>(batch_size);
  const std::vector<std::size_t> order = identity_order(n);

  Tensor out({n, model::kNumLabels});
  for (std::size_t begin = 0; begin < n; begin += step) {
    const std::size_t end = std::min(begin + step, n);
    Tensor audio, video;
    const Tensor* pa = nullptr;
    const Tensor* pv = nullptr;
    if (net.uses_audio()) {
      audio = gather_features(examples, order, begin, end, true);
      pa = &audio;
    }
    if (net.uses_video()) {
      video = gather_features(examples, order, begin, end, false);
      pv = &video;
    }
    const Tensor probs = net.forward(pa, pv, nn::Mode::kEval);
    for (std::size_t r = begin; r < end; ++r) {
      for (std::size_t l = 0; l < model::kNumLabels; ++l) {
        out(r, l) = probs(r - begin, l);
      }
    }
    net.release_activations();
  }
  return out;
}

double dataset_loss(model::Network& net, const std::vector<Example>& examples,
                    int batch_size) {
  const Tensor probs = predict(net, examples, batch_size);
  Tensor truth({examples.size(), model::kNumLabels});
  for (std::size_t i = 0; i < examples.size(); ++i) {
    for (std::size_t l = 0; l < model::kNumLabels; ++l) {
      truth(i, l) = examples[i].labels[l];
    }
  }
  return nn::bce_loss(probs, truth);
}

metrics::EvalReport evaluate(model::Network& net, const std::vector<Example>& examples,
                             double threshold, int batch_size,
                             const std::vector<std::string>& label_names) {
  const Tensor probs = predict(net, examples, batch_size);
  Tensor truth({examples.size(), model::kNumLabels});
  for (std::size_t i = 0; i < examples.size(); ++i) {
    for (std::size_t l = 0; l < model::kNumLabels; ++l) {
      truth(i, l) = examples[i].labels[l];
    }
  }
  return metrics::evaluate(probs, truth, threshold, label_names);
}

metrics::EvalReport prior_baseline_report(const std::vector<Example>& train_set,
                                          const std::vector<Example>& val_set,
                                          double threshold,
                                          const std::vector<std::string>& label_names) {
  if (train_set.empty() || val_set.empty()) {
    throw DomainError("prior baseline: empty split");
  }
  std::vector<double> prior(model::kNumLabels, 0.0);
  for (const auto& ex : train_set) {
    for (std::size_t l = 0; l < model::kNumLabels; ++l) prior[l] += ex.labels[l];
  }
  for (auto& p : prior) p /= static_cast<double>(train_set.size());

  Tensor probs({val_set.size(), model::kNumLabels});
  Tensor truth({val_set.size(), model::kNumLabels});
  for (std::size_t i = 0; i < val_set.size(); ++i) {
    for (std::size_t l = 0; l < model::kNumLabels; ++l) {
      probs(i, l) = static_cast<float>(prior[l]);
      truth(i, l) = val_set[i].labels[l];
    }
  }
  return metrics::evaluate(probs, truth, threshold, label_names);
}

// ---- training ----------------------------------------------------------------

TrainResult train(const TrainConfig& config, const std::vector<Example>& train_set,
                  const std::vector<Example>& val_set) {
  config.validate();
  if (train_set.empty()) throw DomainError("train: empty training set");
  if (val_set.empty()) throw DomainError("train: empty validation set");
  check_modalities(train_set, config.setting, "train");
  check_modalities(val_set, config.setting, "val");

  model::Network net = model::Network::build(config.setting, config.seed);
  nn::SgdNesterov<float> opt(config.lr, config.momentum);
  Prng root(config.seed);

  const std::size_t n = train_set.size();
  const auto step = static_cast<std::size_t>(config.batch_size);
  std::vector<std::size_t> order = identity_order(n);
  LearningCurve curve;

  int epochs_run = 0;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    Prng shuffle_rng = root.split("shuffle/epoch" + std::to_string(epoch));
    for (std::size_t i = n; i > 1; --i) {
      std::swap(order[i - 1], order[shuffle_rng.below(i)]);
    }

    double loss_sum = 0.0;
    std::size_t seen = 0;
    std::size_t batch_index = 0;
    for (std::size_t begin = 0; begin < n; begin += step, ++batch_index) {
      const std::size_t end = std::min(begin + step, n);
      Tensor audio, video;
      const Tensor* pa = nullptr;
      const Tensor* pv = nullptr;
      if (net.uses_audio()) {
        audio = gather_features(train_set, order, begin, end, true);
        pa = &audio;
      }
      if (net.uses_video()) {
        video = gather_features(train_set, order, begin, end, false);
        pv = &video;
      }
      const Tensor y = gather_labels(train_set, order, begin, end);

      const Tensor probs = net.forward(pa, pv, nn::Mode::kTrain);
      // bce_loss clips probabilities before the log, which hides NaN inputs,
      // so divergence has to be caught on the raw network output.
      try {
        tensor::ensure_finite(probs, "training probabilities");
      } catch (const NumericError&) {
        throw NumericError("training diverged: output is not finite at epoch " +
                           std::to_string(epoch) + ", batch " +
                           std::to_string(batch_index + 1));
      }
      const float loss = nn::bce_loss(probs, y);
      if (!std::isfinite(loss)) {
        throw NumericError("training diverged: loss is not finite at epoch " +
                           std::to_string(epoch) + ", batch " +
                           std::to_string(batch_index + 1));
      }
      // Mean-BCE gradient taken at the logits. Going through dL/dp instead
      // dies once float32 sigmoid saturates to exactly 0 or 1; p - y does not.
      Tensor dlogit(probs.shape());
      const float inv_n = 1.0f / static_cast<float>(probs.size());
      for (std::size_t i = 0; i < probs.size(); ++i) {
        dlogit[i] = (probs[i] - y[i]) * inv_n;
      }
      net.backward_from_logits(dlogit);
      opt.step(net.params());
      net.zero_grads();
      net.release_activations();

      loss_sum += static_cast<double>(loss) * static_cast<double>(end - begin);
      seen += end - begin;
    }

    const double train_loss = loss_sum / static_cast<double>(seen);
    const double val_loss = dataset_loss(net, val_set, config.batch_size);
    if (!std::isfinite(val_loss)) {
      throw NumericError("validation loss is not finite at epoch " +
                         std::to_string(epoch));
    }
    curve.rows.push_back({epoch, train_loss, val_loss});
    epochs_run = epoch;
    if (config.stop_when_train_below && train_loss < *config.stop_when_train_below) {
      break;
    }
  }

  nlohmann::json metrics_json{{"epochs_run", epochs_run}};
  if (!curve.rows.empty()) {
    metrics_json["final_train_loss"] = curve.rows.back().train_loss;
    metrics_json["final_val_loss"] = curve.rows.back().val_loss;
  }
  return TrainResult{model::Checkpoint{std::move(net), epochs_run, std::move(metrics_json)},
                     std::move(curve), std::move(opt)};
}

// ---- comparison harness ------------------------------------------------------

std::string CompareOutcome::report_csv() const {
  std::ostringstream os;
  os << "Model,Micro-F1,Hamming Loss,MR\n";
  char buf[96];
  for (const auto& [name, report] : reports) {
    std::snprintf(buf, sizeof(buf), "%s,%.6f,%.6f,%.6f", name.c_str(),
                  report.micro_f1, report.hamming_loss, report.exact_match_ratio);
    os << buf << '\n';
  }
  return os.str();
}

const metrics::EvalReport& CompareOutcome::report_for(const std::string& name) const {
  for (const auto& [key, report] : reports) {
    if (key == name) return report;
  }
  throw DomainError("no comparison row named " + name);
}

CompareOutcome compare_all(const TrainConfig& base,
                           const std::vector<Example>& train_set,
                           const std::vector<Example>& val_set,
                           const std::string& out_dir) {
  base.validate();
  fs::create_directories(out_dir);
  const std::vector<std::string> names = dataset::LabelMap::builtin().name_list();

  Tensor truth({val_set.size(), model::kNumLabels});
  for (std::size_t i = 0; i < val_set.size(); ++i) {
    for (std::size_t l = 0; l < model::kNumLabels; ++l) {
      truth(i, l) = val_set[i].labels[l];
    }
  }

  const model::Setting trained[] = {
      model::Setting::kAudioOnly, model::Setting::kVideoOnly,
      model::Setting::kBimodal, model::Setting::kFusionedAudio,
      model::Setting::kFusionedVideo};

  CompareOutcome out;
  Prng seeder(base.seed);
  Tensor probs_audio, probs_video;
  for (model::Setting setting : trained) {
    const std::string name = model::to_string(setting);
    TrainConfig cfg = base;
    cfg.setting = setting;
    cfg.seed = seeder.split("train/" + name).next_u64();

    TrainResult result = train(cfg, train_set, val_set);
    const Tensor probs = predict(result.checkpoint.net, val_set, base.batch_size);
    if (setting == model::Setting::kAudioOnly) probs_audio = probs;
    if (setting == model::Setting::kVideoOnly) probs_video = probs;

    out.reports.emplace_back(name,
                             metrics::evaluate(probs, truth, base.threshold, names));
    out.curves.emplace_back(name, result.curve);

    model::save_checkpoint((fs::path(out_dir) / ("checkpoint_" + name + ".sfck")).string(),
                    result.checkpoint.net, &result.optimizer, result.checkpoint.epoch,
                    result.checkpoint.metrics);
    std::ofstream curve_os(fs::path(out_dir) / ("curve_" + name + ".csv"),
                           std::ios::binary);
    if (!curve_os) throw IoError("cannot write curve CSV under " + out_dir);
    curve_os << result.curve.to_csv();
  }

  const Tensor summed = model::sum_ensemble_predict(probs_audio, probs_video);
  out.reports.emplace_back(model::to_string(model::Setting::kSumEnsemble),
                           metrics::evaluate(summed, truth, base.threshold, names));

  std::ofstream report_os(fs::path(out_dir) / "report.csv", std::ios::binary);
  if (!report_os) throw IoError("cannot write report CSV under " + out_dir);
  report_os << out.report_csv();
  return out;
}

nlohmann::json run_manifest(const TrainConfig& config, const std::string& train_hash,
                            const std::string& val_hash) {
  return nlohmann::json{{"config", config.to_json()},
                        {"dataset", {{"train_hash", train_hash}, {"val_hash", val_hash}}},
                        {"version", kVersionString}};
}

}  // namespace senfuse::train
