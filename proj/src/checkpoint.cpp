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

#include "senfuse/checkpoint.hpp"

#include <fstream>
#include <map>

#include "senfuse/descriptor.hpp"
#include "senfuse/error.hpp"
#include "senfuse/hash.hpp"
#include "senfuse/tensor_io.hpp"

namespace senfuse::model {

using nlohmann::json;

void save_checkpoint(const std::string& path, Network& net,
                     const nn::SgdNesterov<float>* opt, int epoch,
                     const json& metrics) {
  const auto params = net.params();
  json param_names = json::array();
  for (const auto& p : params) param_names.push_back(p.name);

  json velocity_names = json::array();
  if (opt != nullptr) {
    for (const auto& [name, v] : opt->velocities()) velocity_names.push_back(name);
  }

  json header{{"arch", architecture_descriptor(net.setting())},
              {"epoch", epoch},
              {"format", kCheckpointFormat},
              {"metrics", metrics},
              {"params", param_names},
              {"seed", net.seed()},
              {"setting", to_string(net.setting())},
              {"velocities", velocity_names}};

  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path + " for writing");
  os << header.dump() << '\n';
  for (const auto& p : params) write_bmt(os, *p.value);
  if (opt != nullptr) {
    for (const auto& [name, v] : opt->velocities()) write_bmt(os, v);
  }
  if (!os) throw IoError("failed writing checkpoint " + path);
}

Checkpoint load_checkpoint(const std::string& path, nn::SgdNesterov<float>* opt) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open checkpoint " + path);
  std::string line;
  if (!std::getline(is, line)) throw IoError(path + ": missing checkpoint header");

  json header;
  try {
    header = json::parse(line);
  } catch (const json::exception& e) {
    throw IoError(path + ": malformed checkpoint header: " + e.what());
  }
  if (header.value("format", "") != kCheckpointFormat) {
    throw IoError(path + ": not a checkpoint file (format tag mismatch)");
  }

  const Setting setting = setting_from_string(header.at("setting").get<std::string>());
  const auto seed = header.at("seed").get<std::uint64_t>();
  if (header.at("arch") != architecture_descriptor(setting)) {
    throw IoError(path + ": stored architecture does not match this build");
  }

  Network net = Network::build(setting, seed);
  std::map<std::string, nn::ParamRef<float>> by_name;
  for (auto& p : net.params()) by_name.emplace(p.name, p);

  for (const auto& name_json : header.at("params")) {
    const auto name = name_json.get<std::string>();
    Tensor t = read_bmt_f32(is);
    auto it = by_name.find(name);
    if (it == by_name.end()) throw IoError(path + ": unknown parameter " + name);
    if (!it->second.value->same_shape(t)) {
      throw IoError(path + ": parameter " + name + " has shape " + t.shape_str() +
                    ", expected " + it->second.value->shape_str());
    }
    *it->second.value = std::move(t);
  }

  if (opt != nullptr) {
    for (const auto& name_json : header.at("velocities")) {
      const auto name = name_json.get<std::string>();
      Tensor v = read_bmt_f32(is);
      auto it = by_name.find(name);
      if (it == by_name.end()) throw IoError(path + ": velocity for unknown parameter " + name);
      if (!it->second.value->same_shape(v)) {
        throw IoError(path + ": velocity " + name + " has shape " + v.shape_str());
      }
      opt->velocities()[name] = std::move(v);
    }
  }

  Checkpoint out{std::move(net), header.at("epoch").get<int>(), header.at("metrics")};
  return out;
}

std::uint64_t network_param_hash(Network& net) {
  std::uint64_t h = kFnvOffset;
  for (const auto& p : net.params()) {
    h = fnv1a64(p.name, h);
    h = fnv1a64(p.value->data(), p.value->size() * sizeof(float), h);
  }
  return h;
}

}  // namespace senfuse::model
