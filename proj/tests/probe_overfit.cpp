// Scratch probe: time bimodal epochs and watch memorization convergence.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <vector>

#include "senfuse/dataset.hpp"
#include "senfuse/train_eval.hpp"

using namespace senfuse;

int main(int argc, char** argv) {
  const float lr = argc > 1 ? std::stof(argv[1]) : 0.02f;
  const int batch = argc > 2 ? std::stoi(argv[2]) : 8;
  const int epochs = argc > 3 ? std::stoi(argv[3]) : 10;

  const std::string store = "/tmp/senfuse_acceptance/overfit_store";
  dataset::LabelMap labels = dataset::LabelMap::builtin();
  std::vector<dataset::ManifestEntry> entries;
  if (std::filesystem::exists(store + "/manifest.csv")) {
    entries = dataset::parse_manifest(store + "/manifest.csv").entries;
  } else {
    entries = dataset::synth_generate(store, 32, 501,
                                      dataset::SynthProfile::default_profile(),
                                      labels);
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto ex = train::load_examples(store, entries, labels,
                                       model::Setting::kBimodal, nullptr, 1);
  const auto t1 = std::chrono::steady_clock::now();
  std::printf("load: %zu examples in %.1f s\n", ex.size(),
              std::chrono::duration<double>(t1 - t0).count());

  train::TrainConfig cfg;
  cfg.setting = model::Setting::kBimodal;
  cfg.epochs = epochs;
  cfg.batch_size = batch;
  cfg.lr = lr;
  cfg.seed = 501;
  cfg.stop_when_train_below = 0.05f;

  const std::vector<train::Example> va(ex.begin(), ex.begin() + 4);
  const auto r = train::train(cfg, ex, va);
  const auto t2 = std::chrono::steady_clock::now();
  const double train_s = std::chrono::duration<double>(t2 - t1).count();
  for (const auto& row : r.curve.rows) {
    std::printf("epoch %d: train %.5f val %.5f\n", row.epoch, row.train_loss,
                row.val_loss);
  }
  std::printf("lr=%g batch=%d: %zu epochs in %.1f s (%.1f s/epoch)\n", lr, batch,
              r.curve.rows.size(), train_s,
              train_s / std::max<std::size_t>(1, r.curve.rows.size()));
  return 0;
}
