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

// Dataset curation and loading: segment-manifest parsing, the two-step label
// selection + per-label capping procedure, distribution reporting, clip-store
// access, and a deterministic synthetic clip generator for desk-scale runs.
//
// Clip store layout: one directory per segment named "<ytid>_<start>" (start
// with three decimals), holding "audio.wav" and either "frames.bmf" or
// numbered .ppm frames.

#ifndef SENFUSE_DATASET_HPP_
#define SENFUSE_DATASET_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "senfuse/image_io.hpp"
#include "senfuse/prng.hpp"
#include "senfuse/wav.hpp"

namespace senfuse::dataset {

inline constexpr std::size_t kNumLabels = 7;
inline constexpr double kClipSeconds = 10.0;

// ---- label map ---------------------------------------------------------------

// The seven target classes in fixed output order, plus their ontology ids.
class LabelMap {
 public:
  // The shipped default mapping (matches data/ontology.json).
  static LabelMap builtin();

  // Reads an ontology JSON array of {id, name} objects and resolves the seven
  // class names against it.
  static LabelMap load(const std::string& ontology_path);

  std::size_t size() const { return kNumLabels; }
  const std::array<std::string, kNumLabels>& names() const { return names_; }
  const std::array<std::string, kNumLabels>& mids() const { return mids_; }
  const std::string& name(std::size_t index) const { return names_.at(index); }
  const std::string& mid(std::size_t index) const { return mids_.at(index); }
  std::optional<std::size_t> index_of_mid(const std::string& mid) const;
  std::vector<std::string> name_list() const {
    return {names_.begin(), names_.end()};
  }

 private:
  LabelMap() = default;
  std::array<std::string, kNumLabels> names_;
  std::array<std::string, kNumLabels> mids_;
};

// ---- manifest ----------------------------------------------------------------

struct ManifestEntry {
  std::string ytid;
  double start_s = 0.0;
  double end_s = 0.0;
  std::vector<std::string> labels;  // ontology ids
};

struct ManifestIssue {
  std::size_t line_number = 0;
  std::string text;
  std::string reason;
};

struct Manifest {
  std::vector<ManifestEntry> entries;
  std::vector<ManifestIssue> malformed;
};

// Rows are "ytid,start,end,\"mid,mid,...\""; lines starting with '#' are
// comments. Rows that do not satisfy the entry invariants (four fields,
// numeric times, ten-second span within 1 ms, non-empty labels) are collected
// in `malformed`, never silently dropped.
Manifest parse_manifest_text(const std::string& csv);
Manifest parse_manifest(const std::string& path);

// Step 1: keep entries whose label set intersects the seven targets, and strip
// every non-target id from the kept entries. Idempotent.
std::vector<ManifestEntry> select_by_labels(const std::vector<ManifestEntry>& entries,
                                            const LabelMap& labels);

// Step 2: seeded shuffle, then a greedy pass that keeps an entry while any of
// its labels is still below `cap`, incrementing every label counter of a kept
// entry. Co-occurrence can therefore push individual counts above the cap.
std::vector<ManifestEntry> cap_per_label(const std::vector<ManifestEntry>& entries,
                                         std::size_t cap, Prng& rng);

// ---- distribution report -----------------------------------------------------

struct DistributionReport {
  std::vector<std::size_t> counts;     // per label, map order
  std::vector<double> percentages;     // of total label occurrences
  std::size_t total_segments = 0;
  std::size_t total_labels = 0;

  nlohmann::json to_json(const LabelMap& labels) const;
  std::string to_csv(const LabelMap& labels) const;
};

DistributionReport distribution_report(const std::vector<ManifestEntry>& entries,
                                       const LabelMap& labels);

// Same report computed from already-known per-label counts.
DistributionReport distribution_from_counts(const std::vector<std::size_t>& counts,
                                            std::size_t total_segments);

// ---- clips -------------------------------------------------------------------

struct Clip {
  std::string id;  // "<ytid>_<start>"
  AudioSignal audio;
  FrameSequence frames;
  std::vector<float> labels;  // 7 entries in {0,1}, at least one set
};

std::string clip_dir_name(const ManifestEntry& entry);

std::vector<float> label_vector(const ManifestEntry& entry, const LabelMap& labels);

// Throws UnavailableSegment when the clip directory or its media is missing.
Clip load_clip(const std::string& store_path, const ManifestEntry& entry,
               const LabelMap& labels);

// ---- synthetic clips ---------------------------------------------------------

enum class SignatureKind { kAudio, kVideo, kBoth };

struct SynthProfile {
  std::array<SignatureKind, kNumLabels> kinds;

  // Classes 0,1 audio-only; 2,3 video-only; 4,5,6 both.
  static SynthProfile default_profile();
};

// Class k's audio signature is a gated sine at 300 * 1.5^k Hz.
double class_tone_hz(std::size_t label);

// Fully deterministic synthesis of one 10 s clip: 22050 Hz audio and 32
// frames of 32x32 RGB. Noise floors are keyed by ytid alone, so a class
// without a signature in some modality leaves that modality at pure noise.
Clip synth_clip(const std::string& ytid, const std::vector<std::size_t>& label_indices,
                const SynthProfile& profile, std::uint64_t seed);

// Writes n clips plus a manifest.csv into store_dir and returns the entries.
// Label assignment: clip i gets class i mod 7, plus a second class on half
// the clips.
std::vector<ManifestEntry> synth_generate(const std::string& store_dir, std::size_t n,
                                          std::uint64_t seed, const SynthProfile& profile,
                                          const LabelMap& labels);

}  // namespace senfuse::dataset

#endif  // SENFUSE_DATASET_HPP_
