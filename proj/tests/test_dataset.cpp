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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "senfuse/dataset.hpp"
#include "senfuse/error.hpp"
#include "senfuse/prng.hpp"

namespace fs = std::filesystem;
using namespace senfuse;
using dataset::LabelMap;
using dataset::ManifestEntry;

namespace {

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "senfuse_test_dataset";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

// 50-row manifest whose capped outcome is order-invariant at cap 3: every
// segment carries at least one label with final total <= 3, so any shuffle
// admits all 19 target rows, while co-occurrence pushes Fire to 5.
std::string fixture_manifest() {
  std::ostringstream os;
  os << "# segment fixture\n";
  const char* kept_rows[] = {
      "w1,0.000,10.000,\"/m/03m9d0z\"",
      "w2,0.000,10.000,\"/m/03m9d0z\"",
      "w3,30.000,40.000,\"/m/03m9d0z,/m/09x0r\"",
      "o1,0.000,10.000,\"/m/05kq4\"",
      "o2,0.000,10.000,\"/m/05kq4\"",
      "o3,0.000,10.000,\"/m/05kq4\"",
      "r1,0.000,10.000,\"/m/06mb1\"",
      "r2,0.000,10.000,\"/m/06mb1,/m/04rlf\"",
      "e1,0.000,10.000,\"/m/014zdl\"",
      "e2,0.000,10.000,\"/m/014zdl\"",
      "g1,0.000,10.000,\"/m/032s66\"",
      "g2,0.000,10.000,\"/m/032s66\"",
      "f1,0.000,10.000,\"/m/02_41,/m/0ngt1\"",
      "f2,0.000,10.000,\"/m/02_41,/m/0ngt1\"",
      "f3,0.000,10.000,\"/m/02_41,/m/06mb1,/m/0838f\"",
      "f4,0.000,10.000,\"/m/02_41,/m/014zdl\"",
      "f5,5.000,15.000,\"/m/02_41,/m/032s66\"",
      "x1,0.000,10.000,\"/m/0ngt1\"",
  };
  for (const char* row : kept_rows) os << row << "\n";
  for (int i = 0; i < 32; ++i) {
    // water, speech, and music rows never reach the target set
    const char* mids = i % 3 == 0 ? "/m/0838f" : (i % 3 == 1 ? "/m/09x0r" : "/m/04rlf,/m/0838f");
    os << "skip" << i << ",0.000,10.000,\"" << mids << "\"\n";
  }
  return os.str();
}

}  // namespace

TEST_CASE("builtin label map carries the seven classes in order") {
  const LabelMap map = LabelMap::builtin();
  CHECK(map.size() == 7);
  CHECK(map.name(0) == "Wind");
  CHECK(map.name(1) == "Thunder");
  CHECK(map.name(2) == "Rain");
  CHECK(map.name(3) == "Ocean");
  CHECK(map.name(4) == "Fire");
  CHECK(map.name(5) == "Explosion");
  CHECK(map.name(6) == "Gunshot-gunfire");
  CHECK(map.mid(4) == "/m/02_41");
  REQUIRE(map.index_of_mid("/m/02_41").has_value());
  CHECK(*map.index_of_mid("/m/02_41") == 4);
  CHECK(!map.index_of_mid("/m/0838f").has_value());
  CHECK(map.name_list().size() == 7);
}

#ifdef SENFUSE_DATA_DIR
TEST_CASE("shipped ontology resolves to the builtin mapping") {
  const LabelMap shipped = LabelMap::load(std::string(SENFUSE_DATA_DIR) + "/ontology.json");
  const LabelMap builtin = LabelMap::builtin();
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(shipped.name(i) == builtin.name(i));
    CHECK(shipped.mid(i) == builtin.mid(i));
  }
}
#endif

TEST_CASE("an ontology with the wrong Fire id is rejected") {
  const fs::path path = scratch_dir() / "bad_ontology.json";
  std::ofstream out(path);
  out << R"([
    {"id": "/m/03m9d0z", "name": "Wind"},
    {"id": "/m/0ngt1", "name": "Thunder"},
    {"id": "/m/06mb1", "name": "Rain"},
    {"id": "/m/05kq4", "name": "Ocean"},
    {"id": "/m/0838f", "name": "Fire"},
    {"id": "/m/014zdl", "name": "Explosion"},
    {"id": "/m/032s66", "name": "Gunshot-gunfire"}
  ])";
  out.close();
  CHECK_THROWS_AS(LabelMap::load(path.string()), DomainError);
  CHECK_THROWS_AS(LabelMap::load((scratch_dir() / "absent.json").string()), IoError);
}

TEST_CASE("manifest parser accepts clean rows and quoted label lists") {
  const std::string csv =
      "# comment line\n"
      "abc123,30.000,40.000,\"/m/06mb1,/m/0ngt1\"\n"
      "def456,0.000,10.000,\"/m/02_41\"\n"
      "\n"
      "ghi789,12.500,22.500,\"/m/05kq4, /m/03m9d0z\"\r\n";
  const dataset::Manifest m = dataset::parse_manifest_text(csv);
  CHECK(m.malformed.empty());
  REQUIRE(m.entries.size() == 3);
  CHECK(m.entries[0].ytid == "abc123");
  CHECK(m.entries[0].start_s == 30.0);
  CHECK(m.entries[0].end_s == 40.0);
  REQUIRE(m.entries[0].labels.size() == 2);
  CHECK(m.entries[0].labels[0] == "/m/06mb1");
  CHECK(m.entries[0].labels[1] == "/m/0ngt1");
  CHECK(m.entries[2].start_s == 12.5);
  REQUIRE(m.entries[2].labels.size() == 2);
  CHECK(m.entries[2].labels[1] == "/m/03m9d0z");  // padding spaces stripped
}

TEST_CASE("manifest parser collects malformed rows with reasons") {
  const std::string csv =
      "only,three,fields\n"
      "ok1,0.000,10.000,\"/m/06mb1\"\n"
      ",0.000,10.000,\"/m/06mb1\"\n"
      "bad_num,zero,10.000,\"/m/06mb1\"\n"
      "bad_span,0.000,19.500,\"/m/06mb1\"\n"
      "no_labels,0.000,10.000,\"\"\n";
  const dataset::Manifest m = dataset::parse_manifest_text(csv);
  CHECK(m.entries.size() == 1);
  REQUIRE(m.malformed.size() == 5);
  CHECK(m.malformed[0].line_number == 1);
  CHECK(m.malformed[0].reason.find("4 fields") != std::string::npos);
  CHECK(m.malformed[1].line_number == 3);
  CHECK(m.malformed[1].reason.find("empty segment id") != std::string::npos);
  CHECK(m.malformed[2].reason.find("non-numeric") != std::string::npos);
  CHECK(m.malformed[3].reason.find("10 s") != std::string::npos);
  CHECK(m.malformed[4].reason.find("no labels") != std::string::npos);

  // a 1 ms tolerance on the span
  const dataset::Manifest close_m =
      dataset::parse_manifest_text("t,0.000,10.0005,\"/m/06mb1\"\n");
  CHECK(close_m.entries.size() == 1);
  const dataset::Manifest off_m =
      dataset::parse_manifest_text("t,0.000,10.002,\"/m/06mb1\"\n");
  CHECK(off_m.malformed.size() == 1);
}

TEST_CASE("select_by_labels keeps intersecting rows and strips alien ids") {
  const LabelMap map = LabelMap::builtin();
  const dataset::Manifest m = dataset::parse_manifest_text(fixture_manifest());
  REQUIRE(m.entries.size() == 50);
  CHECK(m.malformed.empty());

  const auto selected = dataset::select_by_labels(m.entries, map);
  CHECK(selected.size() == 18);
  for (const auto& e : selected) {
    CHECK(!e.labels.empty());
    for (const auto& mid : e.labels) CHECK(map.index_of_mid(mid).has_value());
  }
  // idempotent
  const auto again = dataset::select_by_labels(selected, map);
  REQUIRE(again.size() == selected.size());
  for (std::size_t i = 0; i < again.size(); ++i) {
    CHECK(again[i].ytid == selected[i].ytid);
    CHECK(again[i].labels == selected[i].labels);
  }
}

TEST_CASE("cap_per_label forced over-cap outcome is order-invariant") {
  const LabelMap map = LabelMap::builtin();
  const auto selected =
      dataset::select_by_labels(dataset::parse_manifest_text(fixture_manifest()).entries, map);

  for (std::uint64_t seed : {1ull, 99ull, 123456ull}) {
    Prng rng(seed);
    const auto kept = dataset::cap_per_label(selected, 3, rng);
    CHECK(kept.size() == 18);  // every row admits under any shuffle

    std::map<std::string, std::size_t> counts;
    std::set<std::string> ids;
    for (const auto& e : kept) {
      ids.insert(e.ytid);
      for (const auto& mid : e.labels) ++counts[mid];
    }
    CHECK(ids.size() == 18);
    CHECK(counts["/m/03m9d0z"] == 3);  // wind
    CHECK(counts["/m/0ngt1"] == 3);    // thunder
    CHECK(counts["/m/06mb1"] == 3);    // rain
    CHECK(counts["/m/05kq4"] == 3);    // ocean
    CHECK(counts["/m/02_41"] == 5);    // fire exceeds the cap through co-occurrence
    CHECK(counts["/m/014zdl"] == 3);   // explosion
    CHECK(counts["/m/032s66"] == 3);   // gunshot
  }
}

TEST_CASE("cap_per_label matches an independent greedy replay") {
  // random manifest; the oracle below replays the documented algorithm
  Prng gen(2048);
  const LabelMap map = LabelMap::builtin();
  std::vector<ManifestEntry> entries;
  for (int i = 0; i < 120; ++i) {
    ManifestEntry e;
    e.ytid = "seg" + std::to_string(i);
    e.start_s = 0.0;
    e.end_s = 10.0;
    const std::size_t n_labels = 1 + gen.below(3);
    std::set<std::string> mids;
    while (mids.size() < n_labels) mids.insert(map.mid(gen.below(7)));
    e.labels.assign(mids.begin(), mids.end());
    entries.push_back(std::move(e));
  }

  const std::size_t cap = 9;
  Prng lib_rng(7);
  const auto kept = dataset::cap_per_label(entries, cap, lib_rng);

  // oracle: same documented shuffle, then the greedy admission rule
  Prng orc_rng(7);
  std::vector<std::size_t> order(entries.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[orc_rng.below(i)]);
  }
  std::map<std::string, std::size_t> counts;
  std::vector<std::string> want_ids;
  for (std::size_t idx : order) {
    bool admit = false;
    for (const auto& mid : entries[idx].labels) admit = admit || counts[mid] < cap;
    if (!admit) continue;
    for (const auto& mid : entries[idx].labels) ++counts[mid];
    want_ids.push_back(entries[idx].ytid);
  }

  REQUIRE(kept.size() == want_ids.size());
  for (std::size_t i = 0; i < kept.size(); ++i) CHECK(kept[i].ytid == want_ids[i]);

  // no label that finished under the cap lost an eligible entry: each dropped
  // entry must have had every label at the cap at its turn, so every label of
  // a dropped entry ends at >= cap.
  std::set<std::string> kept_ids(want_ids.begin(), want_ids.end());
  for (const auto& e : entries) {
    if (kept_ids.count(e.ytid)) continue;
    for (const auto& mid : e.labels) CHECK(counts[mid] >= cap);
  }

  Prng zero_rng(1);
  CHECK_THROWS_AS(dataset::cap_per_label(entries, 0, zero_rng), DomainError);
}

TEST_CASE("distribution report computes counts and percentages") {
  const LabelMap map = LabelMap::builtin();
  const auto selected =
      dataset::select_by_labels(dataset::parse_manifest_text(fixture_manifest()).entries, map);
  const auto report = dataset::distribution_report(selected, map);
  REQUIRE(report.counts.size() == 7);
  CHECK(report.total_segments == 18);
  CHECK(report.counts[0] == 3);  // wind
  CHECK(report.counts[4] == 5);  // fire
  CHECK(report.total_labels == 23);
  CHECK(report.percentages[4] == doctest::Approx(100.0 * 5.0 / 23.0));
  double pct_sum = 0.0;
  for (double p : report.percentages) pct_sum += p;
  CHECK(pct_sum == doctest::Approx(100.0));

  const std::string csv = report.to_csv(map);
  CHECK(csv.find("Label,Count,Percent") != std::string::npos);
  CHECK(csv.find("Fire,5,") != std::string::npos);
  CHECK(csv.find("Total,23,100.0000") != std::string::npos);

  const auto j = report.to_json(map);
  CHECK(j.at("total_segments").get<std::size_t>() == 18);
  CHECK(j.at("labels").size() == 7);
}

TEST_CASE("distribution_from_counts reproduces a published breakdown") {
  const std::vector<std::size_t> counts = {2587, 1071, 2194, 1910, 1269, 1931, 1867};
  const auto report = dataset::distribution_from_counts(counts, 10950);
  CHECK(report.total_labels == 12829);
  CHECK(report.total_segments == 10950);
  const double want[] = {20.17, 8.35, 17.10, 14.89, 9.89, 15.05, 14.55};
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(std::abs(report.percentages[i] - want[i]) < 0.01);
  }
}

TEST_CASE("clip_dir_name formats the start time") {
  ManifestEntry e;
  e.ytid = "abc-XY";
  e.start_s = 30.0;
  e.end_s = 40.0;
  CHECK(dataset::clip_dir_name(e) == "abc-XY_30.000");
  e.start_s = 7.5;
  CHECK(dataset::clip_dir_name(e) == "abc-XY_7.500");
}

TEST_CASE("label_vector builds the multi-hot target") {
  const LabelMap map = LabelMap::builtin();
  ManifestEntry e;
  e.ytid = "t";
  e.labels = {"/m/02_41", "/m/03m9d0z"};
  const auto vec = dataset::label_vector(e, map);
  REQUIRE(vec.size() == 7);
  CHECK(vec[0] == 1.0f);
  CHECK(vec[4] == 1.0f);
  CHECK(vec[1] == 0.0f);

  ManifestEntry empty;
  empty.ytid = "none";
  empty.labels = {"/m/0838f"};
  CHECK_THROWS_AS(dataset::label_vector(empty, map), DomainError);
}

TEST_CASE("synth clips are deterministic and class-shaped") {
  const auto profile = dataset::SynthProfile::default_profile();
  CHECK(profile.kinds[0] == dataset::SignatureKind::kAudio);
  CHECK(profile.kinds[2] == dataset::SignatureKind::kVideo);
  CHECK(profile.kinds[4] == dataset::SignatureKind::kBoth);
  CHECK(dataset::class_tone_hz(0) == doctest::Approx(300.0));
  CHECK(dataset::class_tone_hz(1) == doctest::Approx(450.0));
  CHECK(dataset::class_tone_hz(6) == doctest::Approx(300.0 * std::pow(1.5, 6.0)));

  const dataset::Clip a = dataset::synth_clip("vid0", {0}, profile, 99);
  CHECK(a.audio.sample_rate == 22050);
  CHECK(a.audio.samples.size() == 220500);
  CHECK(a.frames.size() == 32);
  CHECK(a.frames[0].height == 32);
  CHECK(a.frames[0].width == 32);
  REQUIRE(a.labels.size() == 7);
  CHECK(a.labels[0] == 1.0f);

  const dataset::Clip a2 = dataset::synth_clip("vid0", {0}, profile, 99);
  CHECK(a2.audio.samples == a.audio.samples);
  for (std::size_t f = 0; f < 32; ++f) CHECK(a2.frames[f].rgb == a.frames[f].rgb);
}

TEST_CASE("synth noise floors depend only on the ytid") {
  const auto profile = dataset::SynthProfile::default_profile();
  // classes 0 and 1 are audio-only: their video is the shared pure-noise floor
  const dataset::Clip c0 = dataset::synth_clip("vidA", {0}, profile, 5);
  const dataset::Clip c1 = dataset::synth_clip("vidA", {1}, profile, 5);
  for (std::size_t f = 0; f < 32; ++f) CHECK(c0.frames[f].rgb == c1.frames[f].rgb);

  // classes 2 and 3 are video-only: their audio is the shared noise floor
  const dataset::Clip c2 = dataset::synth_clip("vidA", {2}, profile, 5);
  const dataset::Clip c3 = dataset::synth_clip("vidA", {3}, profile, 5);
  CHECK(c2.audio.samples == c3.audio.samples);

  // a different ytid shifts the floors
  const dataset::Clip other = dataset::synth_clip("vidB", {2}, profile, 5);
  CHECK(other.audio.samples != c2.audio.samples);

  // an audio signature raises power well above the noise floor
  double tone_power = 0.0, noise_power = 0.0;
  for (float s : c0.audio.samples) tone_power += static_cast<double>(s) * s;
  for (float s : c2.audio.samples) noise_power += static_cast<double>(s) * s;
  CHECK(tone_power > 4.0 * noise_power);

  // a video signature perturbs the frames away from the floor
  bool differs = false;
  for (std::size_t f = 0; f < 32 && !differs; ++f) differs = c2.frames[f].rgb != c0.frames[f].rgb;
  CHECK(differs);
}

TEST_CASE("synth_clip validates labels") {
  const auto profile = dataset::SynthProfile::default_profile();
  CHECK_THROWS_AS(dataset::synth_clip("x", {}, profile, 1), DomainError);
  CHECK_THROWS_AS(dataset::synth_clip("x", {9}, profile, 1), DomainError);
}

TEST_CASE("synth_generate writes a loadable store") {
  const LabelMap map = LabelMap::builtin();
  const auto profile = dataset::SynthProfile::default_profile();
  const fs::path store = scratch_dir() / "store";
  const auto entries = dataset::synth_generate(store.string(), 9, 31, profile, map);
  REQUIRE(entries.size() == 9);

  // the manifest on disk parses back to the same entries
  const dataset::Manifest m = dataset::parse_manifest((store / "manifest.csv").string());
  CHECK(m.malformed.empty());
  REQUIRE(m.entries.size() == 9);
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(m.entries[i].ytid == entries[i].ytid);
    CHECK(m.entries[i].labels == entries[i].labels);
  }

  // clip i carries class i mod 7
  for (std::size_t i = 0; i < 9; ++i) {
    const auto idx = map.index_of_mid(map.mid(i % 7));
    REQUIRE(idx.has_value());
    bool found = false;
    for (const auto& mid : entries[i].labels) found = found || mid == map.mid(i % 7);
    CHECK(found);
  }

  // clips load back bit-exact against direct synthesis
  const dataset::Clip loaded = dataset::load_clip(store.string(), entries[3], map);
  std::vector<std::size_t> label_idx;
  for (const auto& mid : entries[3].labels) label_idx.push_back(*map.index_of_mid(mid));
  std::sort(label_idx.begin(), label_idx.end());
  const dataset::Clip direct = dataset::synth_clip(entries[3].ytid, label_idx, profile, 31);
  CHECK(loaded.audio.sample_rate == direct.audio.sample_rate);
  CHECK(loaded.audio.samples == direct.audio.samples);
  REQUIRE(loaded.frames.size() == direct.frames.size());
  for (std::size_t f = 0; f < loaded.frames.size(); ++f) {
    CHECK(loaded.frames[f].rgb == direct.frames[f].rgb);
  }
  CHECK(loaded.labels == direct.labels);

  // a second generation into a fresh directory is byte-identical
  const fs::path store2 = scratch_dir() / "store2";
  dataset::synth_generate(store2.string(), 9, 31, profile, map);
  std::ifstream m1(store / "manifest.csv"), m2(store2 / "manifest.csv");
  std::stringstream s1, s2;
  s1 << m1.rdbuf();
  s2 << m2.rdbuf();
  CHECK(s1.str() == s2.str());

  ManifestEntry ghost;
  ghost.ytid = "missing";
  ghost.start_s = 0.0;
  ghost.end_s = 10.0;
  ghost.labels = {"/m/02_41"};
  CHECK_THROWS_AS(dataset::load_clip(store.string(), ghost, map),
                  UnavailableSegment);
  CHECK_THROWS_AS(dataset::synth_generate(store.string(), 0, 1, profile, map), DomainError);
}
