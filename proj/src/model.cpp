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

#include "senfuse/model.hpp"

#include <sstream>

#include <json.hpp>

#include "senfuse/descriptor.hpp"
#include "senfuse/error.hpp"

namespace senfuse::model {

std::string to_string(Setting setting) {
  switch (setting) {
    case Setting::kAudioOnly: return "audio_only";
    case Setting::kVideoOnly: return "video_only";
    case Setting::kBimodal: return "bimodal";
    case Setting::kFusionedAudio: return "fusioned_audio";
    case Setting::kFusionedVideo: return "fusioned_video";
    case Setting::kSumEnsemble: return "sum_ensemble";
  }
  throw DomainError("unknown setting value");
}

Setting setting_from_string(const std::string& name) {
  if (name == "audio_only") return Setting::kAudioOnly;
  if (name == "video_only") return Setting::kVideoOnly;
  if (name == "bimodal") return Setting::kBimodal;
  if (name == "fusioned_audio") return Setting::kFusionedAudio;
  if (name == "fusioned_video") return Setting::kFusionedVideo;
  if (name == "sum_ensemble") return Setting::kSumEnsemble;
  throw DomainError("unknown setting \"" + name +
                    "\" (expected audio_only, video_only, bimodal, fusioned_audio, "
                    "fusioned_video or sum_ensemble)");
}

bool setting_uses_audio(Setting setting) {
  switch (setting) {
    case Setting::kAudioOnly:
    case Setting::kBimodal:
    case Setting::kFusionedAudio:
    case Setting::kSumEnsemble:
      return true;
    default:
      return false;
  }
}

bool setting_uses_video(Setting setting) {
  switch (setting) {
    case Setting::kVideoOnly:
    case Setting::kBimodal:
    case Setting::kFusionedVideo:
    case Setting::kSumEnsemble:
      return true;
    default:
      return false;
  }
}

namespace {

using nlohmann::json;

json layer(const std::string& name, const std::string& type, std::vector<std::size_t> out,
           std::size_t params = 0) {
  return json{{"layer", name}, {"type", type}, {"output", out}, {"params", params}};
}

json audio_module_layers() {
  json l = json::array();
  l.push_back(layer("audio/conv1", "conv2d", {4, 416, 80}, 57 * 6 * 1 * 80 + 80));
  l.push_back(layer("audio/bn1", "batchnorm", {4, 416, 80}, 2 * 80));
  l.push_back(layer("audio/relu1", "relu", {4, 416, 80}));
  l.push_back(layer("audio/pool1", "maxpool 4x3/1x3", {1, 138, 80}));
  l.push_back(layer("audio/drop1", "dropout 0.5", {1, 138, 80}));
  l.push_back(layer("audio/conv2", "conv2d", {1, 136, 80}, 1 * 3 * 80 * 80 + 80));
  l.push_back(layer("audio/bn2", "batchnorm", {1, 136, 80}, 2 * 80));
  l.push_back(layer("audio/relu2", "relu", {1, 136, 80}));
  l.push_back(layer("audio/pool2", "maxpool 1x3/1x3", {1, 45, 80}));
  l.push_back(layer("audio/flatten", "flatten", {kAudioFlatten}));
  l.push_back(layer("audio/fc1", "dense", {kAudioHidden},
                    kAudioFlatten * kAudioHidden + kAudioHidden));
  l.push_back(layer("audio/relu3", "relu", {kAudioHidden}));
  l.push_back(layer("audio/drop2", "dropout 0.5", {kAudioHidden}));
  l.push_back(layer("audio/fc2", "dense", {kFeatureDim},
                    kAudioHidden * kFeatureDim + kFeatureDim));
  l.push_back(layer("audio/relu4", "relu", {kFeatureDim}));
  return l;
}

json video_module_layers() {
  json l = json::array();
  const std::size_t widths[3] = {32, 64, 128};
  std::size_t cin = 3, side = kVideoSize;
  for (std::size_t s = 0; s < 3; ++s) {
    const std::string stage = "video/stage" + std::to_string(s + 1);
    const std::size_t f = widths[s];
    l.push_back(layer(stage + "/conv_a", "conv2d 3x3 same", {kVideoFrames, side, side, f},
                      3 * 3 * cin * f + f));
    l.push_back(layer(stage + "/relu_a", "relu", {kVideoFrames, side, side, f}));
    l.push_back(layer(stage + "/conv_b", "conv2d 3x3 same", {kVideoFrames, side, side, f},
                      3 * 3 * f * f + f));
    l.push_back(layer(stage + "/bn", "batchnorm", {kVideoFrames, side, side, f}, 2 * f));
    l.push_back(layer(stage + "/relu_b", "relu", {kVideoFrames, side, side, f}));
    side /= 2;
    l.push_back(layer(stage + "/pool", "maxpool 2x2/2x2", {kVideoFrames, side, side, f}));
    if (s == 0) {
      l.push_back(layer("video/drop1", "dropout 0.5", {kVideoFrames, side, side, f}));
    }
    cin = f;
  }
  side /= 2;
  l.push_back(layer("video/pool_out", "maxpool 2x2/2x2", {kVideoFrames, side, side, cin}));
  l.push_back(layer("video/flatten", "flatten", {kVideoFrames, kVideoFlatten}));
  l.push_back(layer("video/lstm", "lstm", {kLstmCells},
                    kVideoFlatten * 4 * kLstmCells + kLstmCells * 4 * kLstmCells +
                        4 * kLstmCells));
  l.push_back(layer("video/drop2", "dropout 0.5", {kLstmCells}));
  l.push_back(
      layer("video/fc", "dense", {kFeatureDim}, kLstmCells * kFeatureDim + kFeatureDim));
  l.push_back(layer("video/relu", "relu", {kFeatureDim}));
  return l;
}

json fusion_layers() {
  json l = json::array();
  l.push_back(layer("fusion/concat", "concat", {2 * kFeatureDim}));
  l.push_back(layer("fusion/fc1", "dense", {kFusionHidden},
                    2 * kFeatureDim * kFusionHidden + kFusionHidden));
  l.push_back(layer("fusion/relu1", "relu", {kFusionHidden}));
  l.push_back(layer("fusion/drop1", "dropout 0.5", {kFusionHidden}));
  l.push_back(layer("fusion/fc2", "dense", {kFusionHidden},
                    kFusionHidden * kFusionHidden + kFusionHidden));
  l.push_back(layer("fusion/relu2", "relu", {kFusionHidden}));
  l.push_back(layer("fusion/drop2", "dropout 0.5", {kFusionHidden}));
  l.push_back(
      layer("fusion/out", "dense", {kNumLabels}, kFusionHidden * kNumLabels + kNumLabels));
  l.push_back(layer("fusion/sigmoid", "sigmoid", {kNumLabels}));
  return l;
}

json head_layers(const std::string& prefix) {
  json l = json::array();
  l.push_back(layer(prefix + "/drop", "dropout 0.5", {kFeatureDim}));
  l.push_back(
      layer(prefix + "/fc", "dense", {kNumLabels}, kFeatureDim * kNumLabels + kNumLabels));
  l.push_back(layer(prefix + "/sigmoid", "sigmoid", {kNumLabels}));
  return l;
}

}  // namespace

nlohmann::json architecture_descriptor(Setting setting) {
  json modules = json::array();
  if (setting_uses_audio(setting) && setting != Setting::kSumEnsemble) {
    modules.push_back({{"name", "audio"},
                       {"input", {kAudioBands, kAudioFrames, 1}},
                       {"layers", audio_module_layers()}});
  }
  if (setting_uses_video(setting) && setting != Setting::kSumEnsemble) {
    modules.push_back({{"name", "video"},
                       {"input", {kVideoFrames, kVideoSize, kVideoSize, 3}},
                       {"layers", video_module_layers()}});
  }
  switch (setting) {
    case Setting::kAudioOnly:
      modules.push_back({{"name", "audio_head"},
                         {"input", {kFeatureDim}},
                         {"layers", head_layers("audio_head")}});
      break;
    case Setting::kVideoOnly:
      modules.push_back({{"name", "video_head"},
                         {"input", {kFeatureDim}},
                         {"layers", head_layers("video_head")}});
      break;
    case Setting::kSumEnsemble:
      modules.push_back({{"name", "sum"},
                         {"input", {kNumLabels}},
                         {"layers",
                          json::array({layer("sum", "elementwise sum", {kNumLabels})})}});
      break;
    default:
      modules.push_back(
          {{"name", "fusion"}, {"input", {2 * kFeatureDim}}, {"layers", fusion_layers()}});
      break;
  }
  return json{{"labels", kNumLabels}, {"setting", to_string(setting)},
              {"modules", modules}};
}

std::size_t descriptor_param_count(const nlohmann::json& descriptor) {
  std::size_t total = 0;
  for (const auto& module : descriptor.at("modules")) {
    for (const auto& l : module.at("layers")) {
      total += l.at("params").get<std::size_t>();
    }
  }
  return total;
}

std::string describe(Setting setting) {
  const json desc = architecture_descriptor(setting);
  std::ostringstream os;
  os << "setting: " << desc.at("setting").get<std::string>() << "\n";
  os << "labels:  " << desc.at("labels").get<int>() << "\n";
  for (const auto& module : desc.at("modules")) {
    std::size_t module_params = 0;
    os << "\n[" << module.at("name").get<std::string>() << "]  input ";
    os << module.at("input").dump() << "\n";
    for (const auto& l : module.at("layers")) {
      const auto params = l.at("params").get<std::size_t>();
      module_params += params;
      os << "  " << l.at("layer").get<std::string>();
      for (std::size_t pad = l.at("layer").get<std::string>().size(); pad < 24; ++pad) {
        os << ' ';
      }
      os << l.at("type").get<std::string>();
      for (std::size_t pad = l.at("type").get<std::string>().size(); pad < 20; ++pad) {
        os << ' ';
      }
      os << "-> " << l.at("output").dump();
      if (params > 0) os << "  (" << params << " params)";
      os << "\n";
    }
    os << "  total: " << module_params << " params\n";
  }
  os << "\nnetwork total: " << descriptor_param_count(desc) << " params\n";
  return os.str();
}

}  // namespace senfuse::model
