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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "senfuse/checkpoint.hpp"
#include "senfuse/model.hpp"

namespace fs = std::filesystem;
using namespace senfuse;
using model::Checkpoint;
using model::load_checkpoint;
using model::network_param_hash;

namespace {

const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "senfuse_test_cli";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  static int counter = 0;
  const fs::path log = scratch_dir() / ("out_" + std::to_string(counter++) + ".txt");
  const std::string cmd =
      std::string("\"") + SENFUSE_CLI_PATH + "\" " + args + " > \"" + log.string() +
      "\" 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  std::ifstream is(log);
  std::stringstream buf;
  buf << is.rdbuf();
  r.output = buf.str();
  return r;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  REQUIRE(os.good());
  os << text;
}

// Six usable segments, one water-only row, one malformed row.
const char* kSmallManifest =
    "# ytid, start_seconds, end_seconds, positive_labels\n"
    "a,0.000,10.000,\"/m/03m9d0z\"\n"
    "b,0.000,10.000,\"/m/0ngt1,/m/06mb1\"\n"
    "c,0.000,10.000,\"/m/05kq4\"\n"
    "d,0.000,10.000,\"/m/02_41\"\n"
    "e,0.000,10.000,\"/m/0838f\"\n"
    "broken,0.000,10.000\n"
    "g,0.000,10.000,\"/m/014zdl\"\n"
    "h,0.000,10.000,\"/m/032s66\"\n";

const fs::path& synth_store() {
  static const fs::path store = [] {
    const fs::path s = scratch_dir() / "store";
    const RunResult r = run("dataset synth --store \"" + s.string() +
                            "\" --count 4 --seed 7");
    REQUIRE(r.exit_code == 0);
    return s;
  }();
  return store;
}

}  // namespace

TEST_CASE("usage errors exit with code 1") {
  CHECK(run("").exit_code == 1);
  CHECK(run("no_such_command").exit_code == 1);
  CHECK(run("dataset synth --bogus 1").exit_code == 1);
  CHECK(run("viz --checkpoint x.sfck --label 9").exit_code == 1);
  CHECK(run("dataset select").exit_code == 1);  // --manifest is required
}

TEST_CASE("help exits cleanly") {
  const RunResult r = run("--help");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("dataset") != std::string::npos);
  CHECK(r.output.find("compare") != std::string::npos);
}

TEST_CASE("describe prints the architecture") {
  const RunResult r = run("describe --setting audio_only");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("audio/conv1") != std::string::npos);
  CHECK(r.output.find("audio/fc2") != std::string::npos);

  const RunResult all = run("describe");
  CHECK(all.exit_code == 0);
  CHECK(all.output.find("video/lstm") != std::string::npos);
  CHECK(all.output.find("sum_ensemble") != std::string::npos);

  CHECK(run("describe --setting tri_modal").exit_code == 2);
}

TEST_CASE("dataset synth writes a clip store") {
  const fs::path& store = synth_store();
  CHECK(fs::exists(store / "manifest.csv"));
  std::size_t clip_dirs = 0;
  for (const auto& entry : fs::directory_iterator(store)) {
    if (entry.is_directory()) ++clip_dirs;
  }
  CHECK(clip_dirs == 4);
}

TEST_CASE("dataset select filters caps and reports") {
  const fs::path manifest = scratch_dir() / "small.csv";
  write_file(manifest, kSmallManifest);
  const fs::path out = scratch_dir() / "select_out";

  const RunResult r = run("dataset select --manifest \"" + manifest.string() +
                          "\" --cap 1 --seed 3 --out \"" + out.string() + "\"");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("skipped 1 malformed row(s)") != std::string::npos);
  CHECK(r.output.find("selected 6 segment(s)") != std::string::npos);
  CHECK(r.output.find("kept 6 segment(s)") != std::string::npos);

  REQUIRE(fs::exists(out / "selected.csv"));
  REQUIRE(fs::exists(out / "distribution.csv"));
  REQUIRE(fs::exists(out / "distribution.json"));
  REQUIRE(fs::exists(out / "manifest.json"));

  std::ifstream sel(out / "selected.csv");
  std::string line;
  std::size_t rows = 0;
  bool water_left = false;
  while (std::getline(sel, line)) {
    if (!line.empty() && line[0] != '#') ++rows;
    if (line.find("/m/0838f") != std::string::npos) water_left = true;
  }
  CHECK(rows == 6);
  CHECK_FALSE(water_left);

  std::ifstream dist(out / "distribution.csv");
  std::stringstream buf;
  buf << dist.rdbuf();
  CHECK(buf.str().rfind("Label,Count,Percent\n", 0) == 0);
  CHECK(buf.str().find("Total,7,100.0000") != std::string::npos);
}

TEST_CASE("dataset stats reports the distribution") {
  const fs::path manifest = scratch_dir() / "small2.csv";
  write_file(manifest, kSmallManifest);
  const fs::path out = scratch_dir() / "stats_out";
  const RunResult r = run("dataset stats --manifest \"" + manifest.string() +
                          "\" --out \"" + out.string() + "\"");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("segments: 6, labels: 7") != std::string::npos);
  CHECK(fs::exists(out / "distribution.csv"));
  CHECK(fs::exists(out / "distribution.json"));
}

TEST_CASE("evaluate with a missing checkpoint exits with code 2") {
  const fs::path manifest = synth_store() / "manifest.csv";
  const RunResult r = run("evaluate --checkpoint \"" +
                          (scratch_dir() / "absent.sfck").string() + "\" --store \"" +
                          synth_store().string() + "\" --manifest \"" +
                          manifest.string() + "\"");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("error") != std::string::npos);
}

TEST_CASE("train honors config file keys and writes run artifacts") {
  const fs::path& store = synth_store();
  const fs::path cfg = scratch_dir() / "cfg.json";
  write_file(cfg, "{\"setting\": \"audio_only\", \"epochs\": 0}\n");
  const fs::path out = scratch_dir() / "train_out";

  const RunResult r = run("--config \"" + cfg.string() + "\" train --store \"" +
                          store.string() + "\" --manifest \"" +
                          (store / "manifest.csv").string() + "\" --seed 5 --out \"" +
                          out.string() + "\"");
  INFO(r.output);
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("\"setting\":\"audio_only\"") != std::string::npos);

  const fs::path ckpt = out / "checkpoint_audio_only.sfck";
  REQUIRE(fs::exists(ckpt));
  CHECK(fs::exists(out / "curve_audio_only.csv"));
  CHECK(fs::exists(out / "eval_report.csv"));
  CHECK(fs::exists(out / "eval_report.json"));
  CHECK(fs::exists(out / "manifest.json"));

  // Zero epochs leaves the saved network at its seeded initialization.
  Checkpoint loaded = load_checkpoint(ckpt.string());
  CHECK(loaded.epoch == 0);
  CHECK(loaded.net.setting() == model::Setting::kAudioOnly);
  model::Network fresh = model::Network::build(model::Setting::kAudioOnly, 5);
  CHECK(network_param_hash(loaded.net) == network_param_hash(fresh));
}

TEST_CASE("viz refuses an untrained checkpoint") {
  // The epoch-zero checkpoint from the train test is rejected as untrained.
  const fs::path ckpt = scratch_dir() / "train_out" / "checkpoint_audio_only.sfck";
  REQUIRE(fs::exists(ckpt));
  const RunResult r = run("viz --checkpoint \"" + ckpt.string() +
                          "\" --label 1 --steps 1 --out \"" +
                          (scratch_dir() / "viz_out").string() + "\"");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("untrained") != std::string::npos);
}

TEST_CASE("a missing config file exits with code 2") {
  const RunResult r =
      run("--config \"" + (scratch_dir() / "absent.json").string() + "\" describe");
  CHECK(r.exit_code == 2);
}
