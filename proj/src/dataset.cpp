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

#include "senfuse/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "senfuse/error.hpp"

namespace senfuse::dataset {
namespace fs = std::filesystem;

// ---- label map ---------------------------------------------------------------

namespace {

const std::array<std::string, kNumLabels> kClassNames = {
    "Wind", "Thunder", "Rain", "Ocean", "Fire", "Explosion", "Gunshot-gunfire"};

const std::array<std::string, kNumLabels> kDefaultMids = {
    "/m/03m9d0z", "/m/0ngt1", "/m/06mb1", "/m/05kq4",
    "/m/02_41",   "/m/014zdl", "/m/032s66"};

constexpr const char* kFireMid = "/m/02_41";

}  // namespace

LabelMap LabelMap::builtin() {
  LabelMap map;
  map.names_ = kClassNames;
  map.mids_ = kDefaultMids;
  return map;
}

LabelMap LabelMap::load(const std::string& ontology_path) {
  std::ifstream is(ontology_path);
  if (!is) throw IoError("cannot open ontology " + ontology_path);
  nlohmann::json doc;
  try {
    is >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(ontology_path + ": malformed ontology JSON: " + e.what());
  }
  std::map<std::string, std::string> by_name;
  for (const auto& node : doc) {
    by_name[node.at("name").get<std::string>()] = node.at("id").get<std::string>();
  }
  LabelMap map;
  map.names_ = kClassNames;
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    auto it = by_name.find(kClassNames[i]);
    if (it == by_name.end()) {
      throw DomainError(ontology_path + ": ontology is missing class \"" +
                        kClassNames[i] + "\"");
    }
    map.mids_[i] = it->second;
  }
  if (map.mids_[4] != kFireMid) {
    throw DomainError(ontology_path + ": Fire must map to " + std::string(kFireMid) +
                      ", found " + map.mids_[4]);
  }
  return map;
}

std::optional<std::size_t> LabelMap::index_of_mid(const std::string& mid) const {
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    if (mids_[i] == mid) return i;
  }
  return std::nullopt;
}

// ---- manifest parsing --------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Splits on commas outside double quotes.
std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

bool parse_seconds(const std::string& text, double& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  std::size_t used = 0;
  try {
    out = std::stod(t, &used);
  } catch (const std::exception&) {
    return false;
  }
  return used == t.size();
}

}  // namespace

Manifest parse_manifest_text(const std::string& csv) {
  Manifest out;
  std::istringstream is(csv);
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(is, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;

    const auto record = [&](const std::string& reason) {
      out.malformed.push_back({line_number, line, reason});
    };

    const std::vector<std::string> fields = split_row(line);
    if (fields.size() != 4) {
      record("expected 4 fields, found " + std::to_string(fields.size()));
      continue;
    }
    ManifestEntry entry;
    entry.ytid = trim(fields[0]);
    if (entry.ytid.empty()) {
      record("empty segment id");
      continue;
    }
    if (!parse_seconds(fields[1], entry.start_s) ||
        !parse_seconds(fields[2], entry.end_s)) {
      record("non-numeric start/end time");
      continue;
    }
    if (std::abs(entry.end_s - entry.start_s - kClipSeconds) > 0.001) {
      record("segment span is not 10 s");
      continue;
    }
    for (const auto& piece : split_row(trim(fields[3]))) {
      const std::string mid = trim(piece);
      if (!mid.empty()) entry.labels.push_back(mid);
    }
    if (entry.labels.empty()) {
      record("no labels");
      continue;
    }
    out.entries.push_back(std::move(entry));
  }
  return out;
}

Manifest parse_manifest(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open manifest " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_manifest_text(buf.str());
}

// ---- selection and capping ---------------------------------------------------

std::vector<ManifestEntry> select_by_labels(const std::vector<ManifestEntry>& entries,
                                            const LabelMap& labels) {
  std::vector<ManifestEntry> out;
  for (const auto& entry : entries) {
    ManifestEntry kept = entry;
    kept.labels.clear();
    for (const auto& mid : entry.labels) {
      if (labels.index_of_mid(mid).has_value()) kept.labels.push_back(mid);
    }
    if (!kept.labels.empty()) out.push_back(std::move(kept));
  }
  return out;
}

std::vector<ManifestEntry> cap_per_label(const std::vector<ManifestEntry>& entries,
                                         std::size_t cap, Prng& rng) {
  if (cap == 0) throw DomainError("cap_per_label: cap must be positive");
  std::vector<std::size_t> order(entries.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.below(i)]);
  }

  std::map<std::string, std::size_t> counts;
  std::vector<ManifestEntry> kept;
  for (std::size_t idx : order) {
    const ManifestEntry& entry = entries[idx];
    bool admit = false;
    for (const auto& mid : entry.labels) {
      if (counts[mid] < cap) {
        admit = true;
        break;
      }
    }
    if (!admit) continue;
    for (const auto& mid : entry.labels) ++counts[mid];
    kept.push_back(entry);
  }
  return kept;
}

// ---- distribution report -----------------------------------------------------

DistributionReport distribution_report(const std::vector<ManifestEntry>& entries,
                                       const LabelMap& labels) {
  std::vector<std::size_t> counts(kNumLabels, 0);
  for (const auto& entry : entries) {
    for (const auto& mid : entry.labels) {
      if (auto idx = labels.index_of_mid(mid)) ++counts[*idx];
    }
  }
  return distribution_from_counts(counts, entries.size());
}

DistributionReport distribution_from_counts(const std::vector<std::size_t>& counts,
                                            std::size_t total_segments) {
  DistributionReport report;
  report.counts = counts;
  report.total_segments = total_segments;
  for (std::size_t c : counts) report.total_labels += c;
  report.percentages.resize(counts.size(), 0.0);
  if (report.total_labels > 0) {
    for (std::size_t i = 0; i < counts.size(); ++i) {
      report.percentages[i] =
          100.0 * static_cast<double>(counts[i]) / static_cast<double>(report.total_labels);
    }
  }
  return report;
}

nlohmann::json DistributionReport::to_json(const LabelMap& labels) const {
  nlohmann::json per = nlohmann::json::array();
  for (std::size_t i = 0; i < counts.size(); ++i) {
    per.push_back({{"label", i < labels.size() ? labels.name(i) : std::to_string(i)},
                   {"count", counts[i]},
                   {"percent", percentages[i]}});
  }
  return nlohmann::json{{"labels", per},
                        {"total_segments", total_segments},
                        {"total_labels", total_labels}};
}

std::string DistributionReport::to_csv(const LabelMap& labels) const {
  std::ostringstream os;
  os << "Label,Count,Percent\n";
  char buf[32];
  for (std::size_t i = 0; i < counts.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.4f", percentages[i]);
    os << (i < labels.size() ? labels.name(i) : std::to_string(i)) << ',' << counts[i]
       << ',' << buf << '\n';
  }
  os << "Total," << total_labels << ",100.0000\n";
  return os.str();
}

// ---- clips -------------------------------------------------------------------

std::string clip_dir_name(const ManifestEntry& entry) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", entry.start_s);
  return entry.ytid + "_" + buf;
}

std::vector<float> label_vector(const ManifestEntry& entry, const LabelMap& labels) {
  std::vector<float> vec(kNumLabels, 0.0f);
  bool any = false;
  for (const auto& mid : entry.labels) {
    if (auto idx = labels.index_of_mid(mid)) {
      vec[*idx] = 1.0f;
      any = true;
    }
  }
  if (!any) {
    throw DomainError("segment " + entry.ytid + " carries no target label");
  }
  return vec;
}

Clip load_clip(const std::string& store_path, const ManifestEntry& entry,
               const LabelMap& labels) {
  const fs::path dir = fs::path(store_path) / clip_dir_name(entry);
  if (!fs::is_directory(dir)) {
    throw UnavailableSegment("segment directory missing: " + dir.string());
  }
  Clip clip;
  clip.id = clip_dir_name(entry);
  clip.labels = label_vector(entry, labels);
  clip.audio = read_wav((dir / "audio.wav").string());
  clip.frames = load_frames(dir.string());
  return clip;
}

// ---- synthetic clips ---------------------------------------------------------

SynthProfile SynthProfile::default_profile() {
  return SynthProfile{{SignatureKind::kAudio, SignatureKind::kAudio,
                       SignatureKind::kVideo, SignatureKind::kVideo,
                       SignatureKind::kBoth, SignatureKind::kBoth,
                       SignatureKind::kBoth}};
}

double class_tone_hz(std::size_t label) {
  return 300.0 * std::pow(1.5, static_cast<double>(label));
}

namespace {

constexpr int kSynthRate = 22050;
constexpr std::size_t kSynthFrames = 32;
constexpr std::size_t kSynthSide = 32;
constexpr std::size_t kSynthBlock = 8;

const std::uint8_t kClassColors[kNumLabels][3] = {
    {255, 40, 40},  {40, 255, 40},  {40, 40, 255}, {255, 255, 40},
    {255, 40, 255}, {40, 255, 255}, {255, 150, 40}};

}  // namespace

Clip synth_clip(const std::string& ytid, const std::vector<std::size_t>& label_indices,
                const SynthProfile& profile, std::uint64_t seed) {
  for (std::size_t k : label_indices) {
    if (k >= kNumLabels) {
      throw DomainError("synth_clip: label index " + std::to_string(k) + " out of range");
    }
  }
  std::vector<std::size_t> ordered = label_indices;
  std::sort(ordered.begin(), ordered.end());
  ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());
  if (ordered.empty()) throw DomainError("synth_clip: no labels for " + ytid);

  Prng root(seed);
  Clip clip;
  clip.id = ytid + "_0.000";
  clip.labels.assign(kNumLabels, 0.0f);
  for (std::size_t k : ordered) clip.labels[k] = 1.0f;

  // Audio: a quiet noise floor keyed by the clip id alone, plus one gated
  // tone per audio-signature class.
  const std::size_t samples = static_cast<std::size_t>(kClipSeconds * kSynthRate);
  clip.audio.sample_rate = kSynthRate;
  clip.audio.samples.resize(samples);
  Prng audio_noise = root.split("audio_noise/" + ytid);
  for (std::size_t i = 0; i < samples; ++i) {
    clip.audio.samples[i] =
        static_cast<float>(0.05 * (2.0 * audio_noise.next_double() - 1.0));
  }
  for (std::size_t k : ordered) {
    if (profile.kinds[k] == SignatureKind::kVideo) continue;
    const double hz = class_tone_hz(k);
    const double on = 0.2 + 0.04 * static_cast<double>(k);
    const double cycle = 0.4 + 0.08 * static_cast<double>(k);
    for (std::size_t i = 0; i < samples; ++i) {
      const double t = static_cast<double>(i) / kSynthRate;
      if (std::fmod(t, cycle) < on) {
        clip.audio.samples[i] +=
            static_cast<float>(0.6 * std::sin(2.0 * std::numbers::pi * hz * t));
      }
    }
  }
  for (auto& s : clip.audio.samples) s = std::clamp(s, -1.0f, 1.0f);

  // Video: low-contrast noise keyed by the clip id alone, plus one moving
  // colored block per video-signature class.
  clip.frames.assign(kSynthFrames, Image(kSynthSide, kSynthSide));
  Prng video_noise = root.split("video_noise/" + ytid);
  for (auto& frame : clip.frames) {
    for (auto& value : frame.rgb) {
      value = static_cast<std::uint8_t>(video_noise.below(101));
    }
  }
  for (std::size_t k : ordered) {
    if (profile.kinds[k] == SignatureKind::kAudio) continue;
    const std::uint8_t* color = kClassColors[k];
    for (std::size_t t = 0; t < kSynthFrames; ++t) {
      const std::size_t range = kSynthSide - kSynthBlock;
      const std::size_t px = (3 + 5 * k + 2 * t) % range;
      const std::size_t py = (5 + 3 * k + t) % range;
      Image& frame = clip.frames[t];
      for (std::size_t dy = 0; dy < kSynthBlock; ++dy) {
        for (std::size_t dx = 0; dx < kSynthBlock; ++dx) {
          for (std::size_t c = 0; c < 3; ++c) {
            frame.at(py + dy, px + dx, c) = color[c];
          }
        }
      }
    }
  }
  return clip;
}

std::vector<ManifestEntry> synth_generate(const std::string& store_dir, std::size_t n,
                                          std::uint64_t seed, const SynthProfile& profile,
                                          const LabelMap& labels) {
  if (n == 0) throw DomainError("synth_generate: need at least one clip");
  fs::create_directories(store_dir);

  Prng root(seed);
  std::vector<ManifestEntry> entries;
  std::ostringstream manifest;
  manifest << "# synthetic clip store\n";
  manifest << "# ytid, start_seconds, end_seconds, positive_labels\n";

  for (std::size_t i = 0; i < n; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "synth%04zu", i);
    const std::string ytid = name;

    std::vector<std::size_t> picked{i % kNumLabels};
    Prng label_rng = root.split("labels/" + ytid);
    if (label_rng.next_double() < 0.5) {
      picked.push_back((picked[0] + 1 + label_rng.below(kNumLabels - 1)) % kNumLabels);
    }
    std::sort(picked.begin(), picked.end());

    const Clip clip = synth_clip(ytid, picked, profile, seed);
    const fs::path dir = fs::path(store_dir) / clip.id;
    fs::create_directories(dir);
    write_wav((dir / "audio.wav").string(), clip.audio);
    write_bmf((dir / "frames.bmf").string(), clip.frames);

    ManifestEntry entry;
    entry.ytid = ytid;
    entry.start_s = 0.0;
    entry.end_s = kClipSeconds;
    for (std::size_t k : picked) entry.labels.push_back(labels.mid(k));
    entries.push_back(entry);

    manifest << ytid << ",0.000,10.000,\"";
    for (std::size_t j = 0; j < entry.labels.size(); ++j) {
      manifest << (j ? "," : "") << entry.labels[j];
    }
    manifest << "\"\n";
  }

  std::ofstream os(fs::path(store_dir) / "manifest.csv", std::ios::binary);
  if (!os) throw IoError("cannot write manifest under " + store_dir);
  os << manifest.str();
  return entries;
}

}  // namespace senfuse::dataset
