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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "senfuse/checkpoint.hpp"
#include "senfuse/dataset.hpp"
#include "senfuse/error.hpp"
#include "senfuse/train_eval.hpp"

namespace fs = std::filesystem;
using namespace senfuse;
using Shape = Tensor::Shape;
using model::Checkpoint;
using model::load_checkpoint;
using model::network_param_hash;
using train::Example;
using train::TrainConfig;

namespace {

const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "senfuse_test_train_eval";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

struct Fixture {
  std::string store;
  std::vector<dataset::ManifestEntry> entries;
  std::vector<Example> bimodal;    // all 8 clips, both modalities
  std::vector<Example> audio_only; // all 8 clips, audio features only
};

const Fixture& fixture() {
  static const Fixture fx = [] {
    Fixture f;
    f.store = (scratch_dir() / "store").string();
    const dataset::LabelMap labels = dataset::LabelMap::builtin();
    dataset::synth_generate(f.store, 8, 77, dataset::SynthProfile::default_profile(),
                            labels);
    std::ifstream is(fs::path(f.store) / "manifest.csv");
    std::stringstream buf;
    buf << is.rdbuf();
    const dataset::Manifest manifest = dataset::parse_manifest_text(buf.str());
    REQUIRE(manifest.malformed.empty());
    f.entries = manifest.entries;
    REQUIRE(f.entries.size() == 8);
    f.bimodal = train::load_examples(f.store, f.entries, labels,
                                     model::Setting::kBimodal);
    f.audio_only = train::load_examples(f.store, f.entries, labels,
                                        model::Setting::kAudioOnly);
    return f;
  }();
  return fx;
}

std::vector<Example> slice(const std::vector<Example>& xs, std::size_t begin,
                           std::size_t end) {
  return {xs.begin() + static_cast<std::ptrdiff_t>(begin),
          xs.begin() + static_cast<std::ptrdiff_t>(end)};
}

std::string read_file(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  REQUIRE(is.good());
  std::stringstream buf;
  buf << is.rdbuf();
  return buf.str();
}

bool same_floats(const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("train config validation rejects bad fields") {
  TrainConfig cfg;
  CHECK_NOTHROW(cfg.validate());

  TrainConfig bad = cfg;
  bad.epochs = -1;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = cfg;
  bad.batch_size = 0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = cfg;
  bad.lr = -0.5;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = cfg;
  bad.momentum = 1.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = cfg;
  bad.momentum = -0.1;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = cfg;
  bad.threshold = 0.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = cfg;
  bad.threshold = 1.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = cfg;
  bad.stop_when_train_below = 0.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("train config json roundtrip") {
  TrainConfig cfg;
  cfg.setting = model::Setting::kFusionedVideo;
  cfg.epochs = 13;
  cfg.batch_size = 5;
  cfg.lr = 0.025;
  cfg.momentum = 0.8;
  cfg.seed = 987654321ull;
  cfg.threshold = 0.4;
  cfg.stop_when_train_below = 0.07;

  const nlohmann::json j = cfg.to_json();
  CHECK(j.at("setting") == "fusioned_video");
  CHECK(j.at("epochs") == 13);
  CHECK(j.at("stop_when_train_below") == doctest::Approx(0.07));

  const TrainConfig back = TrainConfig::from_json(j);
  CHECK(back.setting == cfg.setting);
  CHECK(back.epochs == cfg.epochs);
  CHECK(back.batch_size == cfg.batch_size);
  CHECK(back.lr == cfg.lr);
  CHECK(back.momentum == cfg.momentum);
  CHECK(back.seed == cfg.seed);
  CHECK(back.threshold == cfg.threshold);
  REQUIRE(back.stop_when_train_below.has_value());
  CHECK(*back.stop_when_train_below == cfg.stop_when_train_below);

  // Defaults fill in for absent keys; unrelated keys are ignored.
  const TrainConfig sparse =
      TrainConfig::from_json(nlohmann::json{{"epochs", 3}, {"note", "ignored"}});
  CHECK(sparse.epochs == 3);
  CHECK(sparse.setting == model::Setting::kBimodal);
  CHECK(sparse.batch_size == 32);
  CHECK_FALSE(sparse.stop_when_train_below.has_value());

  // The stop field stays absent unless set.
  TrainConfig plain;
  CHECK_FALSE(plain.to_json().contains("stop_when_train_below"));

  CHECK_THROWS_AS(TrainConfig::from_json(nlohmann::json{{"momentum", 2.0}}),
                  DomainError);
  CHECK_THROWS_AS(TrainConfig::from_json(nlohmann::json{{"setting", "tri_modal"}}),
                  DomainError);
}

TEST_CASE("learning curve csv layout") {
  train::LearningCurve curve;
  curve.rows.push_back({1, 0.5, 0.625});
  curve.rows.push_back({2, 0.25, 0.5});
  const std::string csv = curve.to_csv();
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  CHECK(line == "epoch,train_loss,val_loss");
  std::getline(is, line);
  CHECK(line == "1,0.50000000,0.62500000");
  std::getline(is, line);
  CHECK(line == "2,0.25000000,0.50000000");
  CHECK_FALSE(std::getline(is, line));
}

TEST_CASE("feature cache stores and reloads tensors by key") {
  const fs::path dir = scratch_dir() / "cache";
  train::FeatureCache cache(dir.string());
  CHECK(cache.enabled());

  Tensor t({3, 4});
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = 0.25f * static_cast<float>(i);
  cache.store("a0123", t);
  Tensor back;
  REQUIRE(cache.load("a0123", back));
  CHECK(same_floats(t, back));
  CHECK_FALSE(cache.load("missing_key", back));

  train::FeatureCache off;
  CHECK_FALSE(off.enabled());
  off.store("k", t);  // no-op
  Tensor none;
  CHECK_FALSE(off.load("k", none));
}

TEST_CASE("feature cache keys track content") {
  AudioSignal a;
  a.sample_rate = 22050;
  a.samples = {0.0f, 0.5f, -0.5f};
  const std::string ka = train::FeatureCache::audio_key(a);
  CHECK(ka == train::FeatureCache::audio_key(a));
  CHECK(ka.front() == 'a');

  AudioSignal b = a;
  b.samples[1] = 0.5000001f;
  CHECK(ka != train::FeatureCache::audio_key(b));
  AudioSignal c = a;
  c.sample_rate = 44100;
  CHECK(ka != train::FeatureCache::audio_key(c));

  FrameSequence frames(2);
  frames[0].height = frames[0].width = 2;
  frames[0].rgb.assign(12, 100);
  frames[1] = frames[0];
  const std::string kv = train::FeatureCache::video_key(frames);
  CHECK(kv == train::FeatureCache::video_key(frames));
  CHECK(kv.front() == 'v');
  frames[1].rgb[5] = 101;
  CHECK(kv != train::FeatureCache::video_key(frames));
}

TEST_CASE("preprocess clip produces network feature shapes") {
  const Fixture& fx = fixture();
  const dataset::Clip clip =
      dataset::load_clip(fx.store, fx.entries[0], dataset::LabelMap::builtin());

  const Example both = train::preprocess_clip(clip, true, true);
  CHECK(both.id == clip.id);
  CHECK(both.labels == clip.labels);
  CHECK(both.audio.shape() == Shape{60, 421, 1});
  CHECK(both.video.shape() == Shape{32, 32, 32, 3});

  const Example audio_only = train::preprocess_clip(clip, true, false);
  CHECK(audio_only.audio.shape() == Shape{60, 421, 1});
  CHECK(audio_only.video.size() == 0);
  const Example video_only = train::preprocess_clip(clip, false, true);
  CHECK(video_only.audio.size() == 0);
  CHECK(video_only.video.shape() == Shape{32, 32, 32, 3});

  // A cache round-trips the exact tensors and actually writes files.
  const fs::path dir = scratch_dir() / "clip_cache";
  train::FeatureCache cache(dir.string());
  const Example first = train::preprocess_clip(clip, true, true, &cache);
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    (void)entry;
    ++files;
  }
  CHECK(files == 2);
  const Example second = train::preprocess_clip(clip, true, true, &cache);
  CHECK(same_floats(first.audio, second.audio));
  CHECK(same_floats(first.video, second.video));
  CHECK(same_floats(first.audio, both.audio));
  CHECK(same_floats(first.video, both.video));
}

TEST_CASE("load examples keeps manifest order across worker counts") {
  const Fixture& fx = fixture();
  const dataset::LabelMap labels = dataset::LabelMap::builtin();

  const std::vector<Example> parallel = train::load_examples(
      fx.store, fx.entries, labels, model::Setting::kBimodal, nullptr, 3);
  REQUIRE(parallel.size() == fx.bimodal.size());
  for (std::size_t i = 0; i < parallel.size(); ++i) {
    CHECK(parallel[i].id == fx.bimodal[i].id);
    CHECK(parallel[i].id == dataset::clip_dir_name(fx.entries[i]));
    CHECK(parallel[i].labels == fx.bimodal[i].labels);
    CHECK(same_floats(parallel[i].audio, fx.bimodal[i].audio));
    CHECK(same_floats(parallel[i].video, fx.bimodal[i].video));
  }

  // A unimodal setting skips the other modality entirely.
  for (const Example& ex : fx.audio_only) {
    CHECK(ex.audio.shape() == Shape{60, 421, 1});
    CHECK(ex.video.size() == 0);
  }
}

TEST_CASE("dataset hash is order and content sensitive") {
  const Fixture& fx = fixture();
  const std::string h = train::dataset_hash(fx.bimodal);
  CHECK(h == train::dataset_hash(fx.bimodal));

  std::vector<Example> reversed(fx.bimodal.rbegin(), fx.bimodal.rend());
  CHECK(h != train::dataset_hash(reversed));

  std::vector<Example> tweaked = fx.bimodal;
  tweaked[0].labels[2] = 1.0f - tweaked[0].labels[2];
  CHECK(h != train::dataset_hash(tweaked));

  tweaked = fx.bimodal;
  tweaked[3].audio(0, 0, 0) += 1.0f;
  CHECK(h != train::dataset_hash(tweaked));
}

TEST_CASE("zeroed network predicts exactly one half everywhere") {
  const Fixture& fx = fixture();
  const std::vector<Example> val = slice(fx.bimodal, 0, 3);

  model::Network net = model::Network::build(model::Setting::kVideoOnly, 11);
  for (auto& p : net.params()) p.value->fill(0.0f);

  const Tensor probs = train::predict(net, val, 2);
  REQUIRE(probs.shape() == Shape{3, model::kNumLabels});
  for (std::size_t i = 0; i < probs.size(); ++i) CHECK(probs[i] == 0.5f);

  // Thresholding at 0.5 is inclusive, so every prediction comes out positive.
  const auto names = dataset::LabelMap::builtin().name_list();
  const metrics::EvalReport report = train::evaluate(net, val, 0.5, 2, names);
  std::size_t positives = 0;
  for (const Example& ex : val) {
    for (float v : ex.labels) positives += v > 0.5f ? 1 : 0;
  }
  const std::size_t cells = val.size() * model::kNumLabels;
  CHECK(report.examples == val.size());
  CHECK(report.micro_f1 ==
        doctest::Approx(2.0 * static_cast<double>(positives) /
                        static_cast<double>(cells + positives))
            .epsilon(1e-12));
  CHECK(report.hamming_loss ==
        doctest::Approx(static_cast<double>(cells - positives) /
                        static_cast<double>(cells))
            .epsilon(1e-12));
  // Synthetic clips carry at most two labels, so no row is all positive.
  CHECK(report.exact_match_ratio == 0.0);

  // Mean eval loss on constant one-half output is ln 2.
  CHECK(train::dataset_loss(net, val, 2) == doctest::Approx(std::log(2.0)).epsilon(1e-6));
}

TEST_CASE("evaluation leaves every parameter untouched") {
  const Fixture& fx = fixture();
  const std::vector<Example> val = slice(fx.bimodal, 0, 2);
  model::Network net = model::Network::build(model::Setting::kVideoOnly, 5);
  const std::uint64_t before = network_param_hash(net);
  const auto names = dataset::LabelMap::builtin().name_list();
  (void)train::evaluate(net, val, 0.5, 2, names);
  CHECK(network_param_hash(net) == before);
}

TEST_CASE("predict rejects an empty dataset") {
  model::Network net = model::Network::build(model::Setting::kVideoOnly, 5);
  std::vector<Example> none;
  CHECK_THROWS_AS(train::predict(net, none, 4), DomainError);
}

TEST_CASE("prior baseline scores a hand dataset") {
  const auto make = [](std::vector<float> labels) {
    Example ex;
    ex.id = "x";
    ex.labels = std::move(labels);
    return ex;
  };
  // Label 0 appears in three of four training rows, label 1 in one.
  const std::vector<Example> train_set = {make({1, 0, 0, 0, 0, 0, 0}),
                                          make({1, 1, 0, 0, 0, 0, 0}),
                                          make({1, 0, 0, 0, 0, 0, 0}),
                                          make({0, 0, 0, 0, 0, 0, 0})};
  const std::vector<Example> val_set = {make({1, 0, 1, 0, 0, 0, 0}),
                                        make({0, 1, 0, 0, 0, 0, 0})};
  const auto names = dataset::LabelMap::builtin().name_list();
  const metrics::EvalReport report =
      train::prior_baseline_report(train_set, val_set, 0.5, names);

  // Constant prediction [1,0,0,0,0,0,0] against the two validation rows.
  CHECK(report.examples == 2);
  CHECK(report.micro_f1 == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(report.hamming_loss == doctest::Approx(3.0 / 14.0).epsilon(1e-12));
  CHECK(report.exact_match_ratio == 0.0);
  REQUIRE(report.per_label.size() == 7);
  CHECK(report.per_label[0].tp == 1);
  CHECK(report.per_label[0].fp == 1);
  CHECK(report.per_label[1].fn == 1);
  CHECK(report.per_label[2].fn == 1);

  CHECK_THROWS_AS(train::prior_baseline_report({}, val_set, 0.5, names), DomainError);
  CHECK_THROWS_AS(train::prior_baseline_report(train_set, {}, 0.5, names), DomainError);
}

TEST_CASE("zero epochs returns the freshly built network") {
  const Fixture& fx = fixture();
  TrainConfig cfg;
  cfg.setting = model::Setting::kAudioOnly;
  cfg.epochs = 0;
  cfg.batch_size = 2;
  cfg.seed = 42;

  train::TrainResult result =
      train::train(cfg, slice(fx.audio_only, 0, 2), slice(fx.audio_only, 2, 4));
  CHECK(result.curve.rows.empty());
  CHECK(result.checkpoint.epoch == 0);
  CHECK(result.checkpoint.metrics.at("epochs_run") == 0);

  model::Network fresh = model::Network::build(model::Setting::kAudioOnly, 42);
  CHECK(network_param_hash(result.checkpoint.net) == network_param_hash(fresh));
}

TEST_CASE("zero learning rate leaves trainable parameters at init") {
  const Fixture& fx = fixture();
  TrainConfig cfg;
  cfg.setting = model::Setting::kAudioOnly;
  cfg.epochs = 1;
  cfg.batch_size = 2;
  cfg.lr = 0.0;
  cfg.seed = 9;

  train::TrainResult result =
      train::train(cfg, slice(fx.audio_only, 0, 2), slice(fx.audio_only, 2, 4));
  REQUIRE(result.curve.rows.size() == 1);
  CHECK(result.curve.rows[0].epoch == 1);
  CHECK(result.checkpoint.epoch == 1);

  // Running statistics move during the forward pass, trainables must not.
  model::Network fresh = model::Network::build(model::Setting::kAudioOnly, 9);
  const auto trained = result.checkpoint.net.params();
  const auto init = fresh.params();
  REQUIRE(trained.size() == init.size());
  for (std::size_t i = 0; i < trained.size(); ++i) {
    REQUIRE(trained[i].name == init[i].name);
    if (trained[i].grad == nullptr) continue;
    CHECK(same_floats(*trained[i].value, *init[i].value));
  }
}

TEST_CASE("training is deterministic for a fixed seed") {
  const Fixture& fx = fixture();
  TrainConfig cfg;
  cfg.setting = model::Setting::kAudioOnly;
  cfg.epochs = 2;
  cfg.batch_size = 2;
  cfg.seed = 31;

  const std::vector<Example> tr = slice(fx.audio_only, 0, 4);
  const std::vector<Example> va = slice(fx.audio_only, 4, 6);
  train::TrainResult a = train::train(cfg, tr, va);
  train::TrainResult b = train::train(cfg, tr, va);

  REQUIRE(a.curve.rows.size() == 2);
  REQUIRE(b.curve.rows.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(a.curve.rows[i].train_loss == b.curve.rows[i].train_loss);
    CHECK(a.curve.rows[i].val_loss == b.curve.rows[i].val_loss);
  }
  CHECK(network_param_hash(a.checkpoint.net) == network_param_hash(b.checkpoint.net));

  // A different seed lands elsewhere.
  cfg.seed = 32;
  train::TrainResult c = train::train(cfg, tr, va);
  CHECK(network_param_hash(a.checkpoint.net) != network_param_hash(c.checkpoint.net));
}

TEST_CASE("early stop gate halts after the first qualifying epoch") {
  const Fixture& fx = fixture();
  TrainConfig cfg;
  cfg.setting = model::Setting::kAudioOnly;
  cfg.epochs = 5;
  cfg.batch_size = 2;
  cfg.seed = 3;
  cfg.stop_when_train_below = 1e9;

  const train::TrainResult result =
      train::train(cfg, slice(fx.audio_only, 0, 2), slice(fx.audio_only, 2, 4));
  CHECK(result.curve.rows.size() == 1);
  CHECK(result.checkpoint.epoch == 1);
  CHECK(result.checkpoint.metrics.at("epochs_run") == 1);
}

TEST_CASE("divergent training aborts with epoch and batch context") {
  // An absurd learning rate overflows the head weights after the first step,
  // so the second batch's forward pass emits non finite probabilities.
  const Fixture& fx = fixture();
  const std::vector<Example> tr = slice(fx.audio_only, 0, 4);
  const std::vector<Example> va = slice(fx.audio_only, 4, 6);

  TrainConfig cfg;
  cfg.setting = model::Setting::kAudioOnly;
  cfg.epochs = 3;
  cfg.batch_size = 2;
  cfg.lr = 1e30f;
  cfg.seed = 1;

  bool threw = false;
  try {
    train::train(cfg, tr, va);
  } catch (const NumericError& e) {
    threw = true;
    const std::string msg = e.what();
    CHECK(msg.find("epoch 1") != std::string::npos);
    CHECK(msg.find("not finite") != std::string::npos);
  }
  CHECK(threw);
}

TEST_CASE("training validates splits and modalities") {
  const Fixture& fx = fixture();
  TrainConfig cfg;
  cfg.setting = model::Setting::kAudioOnly;
  cfg.epochs = 1;
  cfg.batch_size = 2;

  CHECK_THROWS_AS(train::train(cfg, {}, slice(fx.audio_only, 0, 2)), DomainError);
  CHECK_THROWS_AS(train::train(cfg, slice(fx.audio_only, 0, 2), {}), DomainError);

  // Examples loaded without audio features cannot feed an audio model.
  Example bare;
  bare.id = "bare";
  bare.labels.assign(7, 0.0f);
  bare.labels[0] = 1.0f;
  CHECK_THROWS_AS(
      train::train(cfg, {bare, bare}, slice(fx.audio_only, 0, 2)), ShapeError);
}

TEST_CASE("run manifest records config and split hashes") {
  TrainConfig cfg;
  cfg.epochs = 4;
  cfg.seed = 12;
  const nlohmann::json j = train::run_manifest(cfg, "aaaa", "bbbb");
  CHECK(j.at("version") == "senfuse 1.0.0");
  CHECK(j.at("config").at("epochs") == 4);
  CHECK(j.at("config").at("setting") == "bimodal");
  CHECK(j.at("dataset").at("train_hash") == "aaaa");
  CHECK(j.at("dataset").at("val_hash") == "bbbb");
}

TEST_CASE("comparison harness trains five settings and composes the ensemble") {
  const Fixture& fx = fixture();
  const std::vector<Example> tr = slice(fx.bimodal, 0, 6);
  const std::vector<Example> va = slice(fx.bimodal, 6, 8);

  TrainConfig base;
  base.epochs = 1;
  base.batch_size = 3;
  base.seed = 19;

  const fs::path dir_a = scratch_dir() / "compare_a";
  const train::CompareOutcome outcome =
      train::compare_all(base, tr, va, dir_a.string());

  const std::vector<std::string> want = {"audio_only",     "video_only",
                                         "bimodal",        "fusioned_audio",
                                         "fusioned_video", "sum_ensemble"};
  REQUIRE(outcome.reports.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    CHECK(outcome.reports[i].first == want[i]);
    CHECK(outcome.reports[i].second.examples == va.size());
  }
  REQUIRE(outcome.curves.size() == 5);
  for (const auto& [name, curve] : outcome.curves) {
    INFO(name);
    CHECK(curve.rows.size() == 1);
  }
  CHECK(&outcome.report_for("bimodal") == &outcome.reports[2].second);
  CHECK_THROWS_AS(outcome.report_for("nope"), DomainError);

  const std::string csv = outcome.report_csv();
  CHECK(csv.rfind("Model,Micro-F1,Hamming Loss,MR\n", 0) == 0);
  CHECK(csv.find("\nsum_ensemble,") != std::string::npos);

  for (const std::string& name : {std::string("audio_only"), std::string("video_only"),
                                  std::string("bimodal"), std::string("fusioned_audio"),
                                  std::string("fusioned_video")}) {
    CHECK(fs::exists(dir_a / ("checkpoint_" + name + ".sfck")));
    CHECK(fs::exists(dir_a / ("curve_" + name + ".csv")));
  }
  CHECK(fs::exists(dir_a / "report.csv"));
  CHECK(read_file(dir_a / "report.csv") == csv);

  // A trained checkpoint reloads into a network that reproduces the report row.
  const Checkpoint loaded =
      load_checkpoint((dir_a / "checkpoint_audio_only.sfck").string());
  CHECK(loaded.net.setting() == model::Setting::kAudioOnly);
  CHECK(loaded.epoch == 1);

  // The whole run is reproducible byte for byte.
  const fs::path dir_b = scratch_dir() / "compare_b";
  (void)train::compare_all(base, tr, va, dir_b.string());
  for (const auto& entry : fs::directory_iterator(dir_a)) {
    const fs::path other = dir_b / entry.path().filename();
    INFO(entry.path().filename().string());
    REQUIRE(fs::exists(other));
    CHECK(read_file(entry.path()) == read_file(other));
  }
}
