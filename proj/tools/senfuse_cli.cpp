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

// Command-line entry point: dataset curation, preprocessing, training,
// evaluation, the six-setting comparison, and class visualization.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "senfuse/checkpoint.hpp"
#include "senfuse/dataset.hpp"
#include "senfuse/descriptor.hpp"
#include "senfuse/error.hpp"
#include "senfuse/prng.hpp"
#include "senfuse/train_eval.hpp"
#include "senfuse/viz.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace senfuse;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

std::string default_data_root() {
  const char* env = std::getenv("SENFUSE_DATA_ROOT");
  return env != nullptr ? env : ".";
}

json load_config_file(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream is(path);
  if (!is) throw IoError("cannot open config file " + path);
  json doc;
  try {
    is >> doc;
  } catch (const json::exception& e) {
    throw IoError(path + ": malformed config JSON: " + e.what());
  }
  if (!doc.is_object()) throw IoError(path + ": config must be a JSON object");
  return doc;
}

dataset::LabelMap label_map_for(const std::string& ontology_path) {
  if (ontology_path.empty()) return dataset::LabelMap::builtin();
  return dataset::LabelMap::load(ontology_path);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write " + path.string());
  os << text;
}

std::string manifest_csv(const std::vector<dataset::ManifestEntry>& entries) {
  std::ostringstream os;
  os << "# ytid, start_seconds, end_seconds, positive_labels\n";
  char buf[64];
  for (const auto& e : entries) {
    std::snprintf(buf, sizeof(buf), "%s,%.3f,%.3f,\"", e.ytid.c_str(), e.start_s,
                  e.end_s);
    os << buf;
    for (std::size_t i = 0; i < e.labels.size(); ++i) {
      os << (i ? "," : "") << e.labels[i];
    }
    os << "\"\n";
  }
  return os.str();
}

void report_malformed(const dataset::Manifest& manifest) {
  if (manifest.malformed.empty()) return;
  std::cout << "skipped " << manifest.malformed.size() << " malformed row(s)\n";
  const std::size_t show = std::min<std::size_t>(manifest.malformed.size(), 5);
  for (std::size_t i = 0; i < show; ++i) {
    const auto& issue = manifest.malformed[i];
    std::cout << "  line " << issue.line_number << ": " << issue.reason << '\n';
  }
}

// Flags the user actually passed override config-file keys, which override
// the built-in defaults.
struct TrainFlags {
  std::string setting;
  int epochs = 0;
  int batch_size = 0;
  double lr = 0.0;
  double momentum = 0.0;
  std::uint64_t seed = 0;
  double threshold = 0.0;

  CLI::Option* setting_opt = nullptr;
  CLI::Option* epochs_opt = nullptr;
  CLI::Option* batch_opt = nullptr;
  CLI::Option* lr_opt = nullptr;
  CLI::Option* momentum_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* threshold_opt = nullptr;

  void attach(CLI::App* cmd, bool with_setting) {
    if (with_setting) {
      setting_opt = cmd->add_option("--setting", setting,
                                    "audio_only, video_only, bimodal, "
                                    "fusioned_audio or fusioned_video");
    }
    epochs_opt = cmd->add_option("--epochs", epochs, "training epochs")
                     ->check(CLI::NonNegativeNumber);
    batch_opt = cmd->add_option("--batch-size", batch_size, "mini-batch size")
                    ->check(CLI::PositiveNumber);
    lr_opt = cmd->add_option("--lr", lr, "learning rate");
    momentum_opt = cmd->add_option("--momentum", momentum, "Nesterov momentum");
    seed_opt = cmd->add_option("--seed", seed, "run seed");
    threshold_opt = cmd->add_option("--threshold", threshold, "decision threshold");
  }

  train::TrainConfig resolve(const json& file_config) const {
    json merged = file_config;
    if (setting_opt != nullptr && setting_opt->count() > 0) merged["setting"] = setting;
    if (epochs_opt->count() > 0) merged["epochs"] = epochs;
    if (batch_opt->count() > 0) merged["batch_size"] = batch_size;
    if (lr_opt->count() > 0) merged["lr"] = lr;
    if (momentum_opt->count() > 0) merged["momentum"] = momentum;
    if (seed_opt->count() > 0) merged["seed"] = seed;
    if (threshold_opt->count() > 0) merged["threshold"] = threshold;
    json known = json::object();
    for (const char* key : {"setting", "epochs", "batch_size", "lr", "momentum",
                            "seed", "threshold", "stop_when_train_below"}) {
      if (merged.contains(key)) known[key] = merged[key];
    }
    return train::TrainConfig::from_json(known);
  }
};

std::vector<dataset::ManifestEntry> selected_entries(const std::string& manifest_path,
                                                     const dataset::LabelMap& labels) {
  const dataset::Manifest manifest = dataset::parse_manifest(manifest_path);
  report_malformed(manifest);
  auto entries = dataset::select_by_labels(manifest.entries, labels);
  if (entries.empty()) {
    throw DomainError(manifest_path + ": no segments carry a target label");
  }
  return entries;
}

void split_train_val(const std::vector<dataset::ManifestEntry>& entries,
                     double val_fraction, std::uint64_t seed,
                     std::vector<dataset::ManifestEntry>& train_out,
                     std::vector<dataset::ManifestEntry>& val_out) {
  if (entries.size() < 2) throw DomainError("need at least 2 segments to split");
  if (!(val_fraction > 0.0 && val_fraction < 1.0)) {
    throw DomainError("val fraction must lie in (0, 1)");
  }
  std::vector<std::size_t> order(entries.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Prng rng = Prng(seed).split("valsplit");
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.below(i)]);
  }
  const auto n_val = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::llround(val_fraction * entries.size())), 1,
      entries.size() - 1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    (i < n_val ? val_out : train_out).push_back(entries[order[i]]);
  }
}

void echo_config(const json& resolved) {
  std::cout << "config: " << resolved.dump() << '\n';
}

void write_run_manifest(const std::string& out_dir, json manifest) {
  fs::create_directories(out_dir);
  write_text(fs::path(out_dir) / "manifest.json", manifest.dump(2) + "\n");
}

// ---- subcommands -------------------------------------------------------------

void cmd_dataset_select(const std::string& manifest_path, const std::string& ontology,
                        std::size_t cap, std::uint64_t seed, const std::string& out) {
  const dataset::LabelMap labels = label_map_for(ontology);
  auto entries = selected_entries(manifest_path, labels);
  std::cout << "selected " << entries.size() << " segment(s) with target labels\n";
  if (cap > 0) {
    Prng rng = Prng(seed).split("cap");
    entries = dataset::cap_per_label(entries, cap, rng);
    std::cout << "kept " << entries.size() << " segment(s) after per-label cap " << cap
              << '\n';
  }
  const auto report = dataset::distribution_report(entries, labels);
  std::cout << report.to_csv(labels);
  fs::create_directories(out);
  write_text(fs::path(out) / "selected.csv", manifest_csv(entries));
  write_text(fs::path(out) / "distribution.csv", report.to_csv(labels));
  write_text(fs::path(out) / "distribution.json", report.to_json(labels).dump(2) + "\n");
  write_run_manifest(out, json{{"command", "dataset select"},
                               {"manifest", manifest_path},
                               {"cap", cap},
                               {"seed", seed},
                               {"segments", entries.size()},
                               {"version", train::kVersionString}});
}

void cmd_dataset_stats(const std::string& manifest_path, const std::string& ontology,
                       const std::string& out) {
  const dataset::LabelMap labels = label_map_for(ontology);
  const auto entries = selected_entries(manifest_path, labels);
  const auto report = dataset::distribution_report(entries, labels);
  std::cout << report.to_csv(labels);
  std::cout << "segments: " << report.total_segments
            << ", labels: " << report.total_labels << '\n';
  fs::create_directories(out);
  write_text(fs::path(out) / "distribution.csv", report.to_csv(labels));
  write_text(fs::path(out) / "distribution.json", report.to_json(labels).dump(2) + "\n");
}

void cmd_dataset_synth(const std::string& store, std::size_t count,
                       std::uint64_t seed) {
  const auto entries =
      dataset::synth_generate(store, count, seed, dataset::SynthProfile::default_profile(),
                              dataset::LabelMap::builtin());
  std::cout << "wrote " << entries.size() << " synthetic clip(s) under " << store
            << '\n';
}

void cmd_preprocess(const std::string& store, const std::string& manifest_path,
                    const std::string& cache_dir, int jobs) {
  const dataset::LabelMap labels = dataset::LabelMap::builtin();
  const auto entries = selected_entries(manifest_path, labels);
  const train::FeatureCache cache(cache_dir);
  const auto examples = train::load_examples(store, entries, labels,
                                             model::Setting::kBimodal, &cache, jobs);
  std::cout << "preprocessed " << examples.size() << " clip(s), dataset hash "
            << train::dataset_hash(examples) << '\n';
}

void cmd_train(const train::TrainConfig& cfg, const std::string& store,
               const std::string& manifest_path, const std::string& val_manifest_path,
               double val_fraction, const std::string& cache_dir, int jobs,
               const std::string& out) {
  const dataset::LabelMap labels = dataset::LabelMap::builtin();
  std::vector<dataset::ManifestEntry> train_entries, val_entries;
  if (!val_manifest_path.empty()) {
    train_entries = selected_entries(manifest_path, labels);
    val_entries = selected_entries(val_manifest_path, labels);
  } else {
    split_train_val(selected_entries(manifest_path, labels), val_fraction, cfg.seed,
                    train_entries, val_entries);
  }

  const train::FeatureCache cache(cache_dir);
  const auto train_set =
      train::load_examples(store, train_entries, labels, cfg.setting, &cache, jobs);
  const auto val_set =
      train::load_examples(store, val_entries, labels, cfg.setting, &cache, jobs);

  json resolved = cfg.to_json();
  resolved["store"] = store;
  resolved["out"] = out;
  echo_config(resolved);

  train::TrainResult result = train::train(cfg, train_set, val_set);
  fs::create_directories(out);
  const std::string name = model::to_string(cfg.setting);
  const auto ckpt_path = fs::path(out) / ("checkpoint_" + name + ".sfck");
  model::save_checkpoint(ckpt_path.string(), result.checkpoint.net, &result.optimizer,
                         result.checkpoint.epoch, result.checkpoint.metrics);
  write_text(fs::path(out) / ("curve_" + name + ".csv"), result.curve.to_csv());

  const auto report = train::evaluate(result.checkpoint.net, val_set, cfg.threshold,
                                      cfg.batch_size, labels.name_list());
  write_text(fs::path(out) / "eval_report.csv", report.to_csv());
  write_text(fs::path(out) / "eval_report.json", report.to_json().dump(2) + "\n");

  json manifest = train::run_manifest(cfg, train::dataset_hash(train_set),
                                      train::dataset_hash(val_set));
  manifest["command"] = "train";
  manifest["store"] = store;
  write_run_manifest(out, manifest);

  std::cout << "checkpoint: " << ckpt_path.string() << '\n';
  if (!result.curve.rows.empty()) {
    std::cout << "final train loss " << result.curve.rows.back().train_loss
              << ", val loss " << result.curve.rows.back().val_loss << '\n';
  }
  std::cout << "val micro-F1 " << report.micro_f1 << ", hamming "
            << report.hamming_loss << ", MR " << report.exact_match_ratio << '\n';
}

void cmd_evaluate(const std::string& checkpoint_path, const std::string& store,
                  const std::string& manifest_path, double threshold, int batch_size,
                  const std::string& cache_dir, int jobs, const std::string& out) {
  model::Checkpoint ckpt = model::load_checkpoint(checkpoint_path);
  const dataset::LabelMap labels = dataset::LabelMap::builtin();
  const auto entries = selected_entries(manifest_path, labels);
  const train::FeatureCache cache(cache_dir);
  const auto examples = train::load_examples(store, entries, labels,
                                             ckpt.net.setting(), &cache, jobs);
  const auto report =
      train::evaluate(ckpt.net, examples, threshold, batch_size, labels.name_list());
  std::cout << report.to_csv();
  std::cout << "micro-F1 " << report.micro_f1 << ", hamming " << report.hamming_loss
            << ", MR " << report.exact_match_ratio << '\n';
  fs::create_directories(out);
  write_text(fs::path(out) / "eval_report.csv", report.to_csv());
  write_text(fs::path(out) / "eval_report.json", report.to_json().dump(2) + "\n");
}

void cmd_compare(const train::TrainConfig& base, const std::string& store,
                 const std::string& manifest_path, const std::string& val_manifest_path,
                 double val_fraction, const std::string& cache_dir, int jobs,
                 const std::string& out) {
  const dataset::LabelMap labels = dataset::LabelMap::builtin();
  std::vector<dataset::ManifestEntry> train_entries, val_entries;
  if (!val_manifest_path.empty()) {
    train_entries = selected_entries(manifest_path, labels);
    val_entries = selected_entries(val_manifest_path, labels);
  } else {
    split_train_val(selected_entries(manifest_path, labels), val_fraction, base.seed,
                    train_entries, val_entries);
  }

  const train::FeatureCache cache(cache_dir);
  const auto train_set = train::load_examples(store, train_entries, labels,
                                              model::Setting::kBimodal, &cache, jobs);
  const auto val_set = train::load_examples(store, val_entries, labels,
                                            model::Setting::kBimodal, &cache, jobs);

  json resolved = base.to_json();
  resolved["store"] = store;
  resolved["out"] = out;
  echo_config(resolved);

  const train::CompareOutcome outcome = train::compare_all(base, train_set, val_set, out);
  std::cout << outcome.report_csv();

  json manifest = train::run_manifest(base, train::dataset_hash(train_set),
                                      train::dataset_hash(val_set));
  manifest["command"] = "compare";
  manifest["store"] = store;
  write_run_manifest(out, manifest);
}

void cmd_viz(const std::string& checkpoint_path, int label, int steps, double step_size,
             double l2_coeff, std::uint64_t seed, const std::string& out) {
  model::Checkpoint ckpt = model::load_checkpoint(checkpoint_path);
  if (ckpt.epoch <= 0) {
    throw DomainError(checkpoint_path + ": checkpoint is untrained (epoch 0)");
  }
  viz::VizConfig config;
  config.steps = steps;
  config.step_size = step_size;
  config.l2_coeff = l2_coeff;
  config.seed = seed;

  const auto result =
      viz::class_model_viz(ckpt.net, static_cast<std::size_t>(label), config);
  const auto label_names = dataset::LabelMap::builtin();
  char dir_name[32];
  std::snprintf(dir_name, sizeof(dir_name), "label_%d", label);
  const auto files = viz::emit_artifacts(result, (fs::path(out) / dir_name).string());
  std::cout << "label " << label << " (" << label_names.name(result.label) << "): "
            << files.size() << " file(s) under " << (fs::path(out) / dir_name).string()
            << ", best score " << result.trajectory.back() << '\n';
}

void cmd_describe(const std::string& setting_name) {
  if (!setting_name.empty()) {
    std::cout << model::describe(model::setting_from_string(setting_name));
    return;
  }
  for (const auto s :
       {model::Setting::kAudioOnly, model::Setting::kVideoOnly, model::Setting::kBimodal,
        model::Setting::kFusionedAudio, model::Setting::kFusionedVideo,
        model::Setting::kSumEnsemble}) {
    std::cout << model::describe(s) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bimodal sensory-effect scene component recognizer"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; flags override its keys");

  // dataset select / stats / synth
  auto* ds = app.add_subcommand("dataset", "curation utilities");
  ds->require_subcommand(1);

  std::string sel_manifest, sel_ontology, sel_out = "run";
  std::size_t sel_cap = 0;
  std::uint64_t sel_seed = 0;
  auto* sel = ds->add_subcommand("select", "filter to target labels, cap per label");
  sel->add_option("--manifest", sel_manifest, "segment CSV")->required();
  sel->add_option("--ontology", sel_ontology, "ontology JSON (default: built in)");
  sel->add_option("--cap", sel_cap, "per-label segment cap (0 = no cap)");
  sel->add_option("--seed", sel_seed, "shuffle seed for capping");
  sel->add_option("--out", sel_out, "output directory");

  std::string stats_manifest, stats_ontology, stats_out = "run";
  auto* stats = ds->add_subcommand("stats", "label distribution report");
  stats->add_option("--manifest", stats_manifest, "segment CSV")->required();
  stats->add_option("--ontology", stats_ontology, "ontology JSON (default: built in)");
  stats->add_option("--out", stats_out, "output directory");

  std::string synth_store = default_data_root();
  std::size_t synth_count = 32;
  std::uint64_t synth_seed = 0;
  auto* synth = ds->add_subcommand("synth", "generate a synthetic clip store");
  synth->add_option("--store", synth_store, "clip store directory");
  synth->add_option("--count", synth_count, "number of clips")->check(CLI::PositiveNumber);
  synth->add_option("--seed", synth_seed, "generator seed");

  // preprocess
  std::string pre_store = default_data_root(), pre_manifest, pre_cache;
  int pre_jobs = 1;
  auto* pre = app.add_subcommand("preprocess", "compute and cache feature tensors");
  pre->add_option("--store", pre_store, "clip store directory");
  pre->add_option("--manifest", pre_manifest, "segment CSV")->required();
  pre->add_option("--cache", pre_cache, "feature cache directory")->required();
  pre->add_option("--jobs", pre_jobs, "worker count")->check(CLI::PositiveNumber);

  // train
  std::string tr_store = default_data_root(), tr_manifest, tr_val_manifest, tr_cache,
              tr_out = "run";
  double tr_val_fraction = 0.2;
  int tr_jobs = 1;
  TrainFlags tr_flags;
  auto* tr = app.add_subcommand("train", "train one setting");
  tr->add_option("--store", tr_store, "clip store directory");
  tr->add_option("--manifest", tr_manifest, "training segment CSV")->required();
  tr->add_option("--val-manifest", tr_val_manifest, "validation segment CSV");
  tr->add_option("--val-fraction", tr_val_fraction,
                 "held-out fraction when --val-manifest is absent");
  tr->add_option("--cache", tr_cache, "feature cache directory");
  tr->add_option("--jobs", tr_jobs, "preprocessing workers")->check(CLI::PositiveNumber);
  tr->add_option("--out", tr_out, "run directory");
  tr_flags.attach(tr, true);

  // evaluate
  std::string ev_checkpoint, ev_store = default_data_root(), ev_manifest, ev_cache,
              ev_out = "run";
  double ev_threshold = 0.5;
  int ev_batch = 32, ev_jobs = 1;
  auto* ev = app.add_subcommand("evaluate", "evaluate a checkpoint");
  ev->add_option("--checkpoint", ev_checkpoint, "checkpoint file")->required();
  ev->add_option("--store", ev_store, "clip store directory");
  ev->add_option("--manifest", ev_manifest, "segment CSV")->required();
  ev->add_option("--threshold", ev_threshold, "decision threshold");
  ev->add_option("--batch-size", ev_batch, "batch size")->check(CLI::PositiveNumber);
  ev->add_option("--cache", ev_cache, "feature cache directory");
  ev->add_option("--jobs", ev_jobs, "preprocessing workers")->check(CLI::PositiveNumber);
  ev->add_option("--out", ev_out, "output directory");

  // compare
  std::string cp_store = default_data_root(), cp_manifest, cp_val_manifest, cp_cache,
              cp_out = "run";
  double cp_val_fraction = 0.2;
  int cp_jobs = 1;
  TrainFlags cp_flags;
  auto* cp = app.add_subcommand("compare", "train and report all six settings");
  cp->add_option("--store", cp_store, "clip store directory");
  cp->add_option("--manifest", cp_manifest, "training segment CSV")->required();
  cp->add_option("--val-manifest", cp_val_manifest, "validation segment CSV");
  cp->add_option("--val-fraction", cp_val_fraction,
                 "held-out fraction when --val-manifest is absent");
  cp->add_option("--cache", cp_cache, "feature cache directory");
  cp->add_option("--jobs", cp_jobs, "preprocessing workers")->check(CLI::PositiveNumber);
  cp->add_option("--out", cp_out, "run directory");
  cp_flags.attach(cp, false);

  // viz
  std::string vz_checkpoint, vz_out = "run";
  int vz_label = 0, vz_steps = 500;
  double vz_step_size = 0.1, vz_l2 = 1e-4;
  std::uint64_t vz_seed = 0;
  auto* vz = app.add_subcommand("viz", "class model visualization");
  vz->add_option("--checkpoint", vz_checkpoint, "bimodal checkpoint file")->required();
  vz->add_option("--label", vz_label, "label index 0..6")
      ->required()
      ->check(CLI::Range(0, 6));
  vz->add_option("--steps", vz_steps, "ascent steps")->check(CLI::PositiveNumber);
  vz->add_option("--step-size", vz_step_size, "ascent step size");
  vz->add_option("--l2", vz_l2, "l2 penalty coefficient");
  vz->add_option("--seed", vz_seed, "init noise seed");
  vz->add_option("--out", vz_out, "output directory");

  // describe
  std::string desc_setting;
  auto* desc = app.add_subcommand("describe", "print the architecture");
  desc->add_option("--setting", desc_setting, "one setting (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const json file_config = load_config_file(config_path);
    if (sel->parsed()) {
      cmd_dataset_select(sel_manifest, sel_ontology, sel_cap, sel_seed, sel_out);
    } else if (stats->parsed()) {
      cmd_dataset_stats(stats_manifest, stats_ontology, stats_out);
    } else if (synth->parsed()) {
      cmd_dataset_synth(synth_store, synth_count, synth_seed);
    } else if (pre->parsed()) {
      cmd_preprocess(pre_store, pre_manifest, pre_cache, pre_jobs);
    } else if (tr->parsed()) {
      train::TrainConfig cfg = tr_flags.resolve(file_config);
      cmd_train(cfg, tr_store, tr_manifest, tr_val_manifest, tr_val_fraction, tr_cache,
                tr_jobs, tr_out);
    } else if (ev->parsed()) {
      cmd_evaluate(ev_checkpoint, ev_store, ev_manifest, ev_threshold, ev_batch,
                   ev_cache, ev_jobs, ev_out);
    } else if (cp->parsed()) {
      train::TrainConfig cfg = cp_flags.resolve(file_config);
      cfg.setting = model::Setting::kBimodal;
      cmd_compare(cfg, cp_store, cp_manifest, cp_val_manifest, cp_val_fraction, cp_cache,
                  cp_jobs, cp_out);
    } else if (vz->parsed()) {
      cmd_viz(vz_checkpoint, vz_label, vz_steps, vz_step_size, vz_l2, vz_seed, vz_out);
    } else if (desc->parsed()) {
      cmd_describe(desc_setting);
    }
    return 0;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
}
