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

// Checkpoint container: one JSON header line (format tag, setting, seed,
// epoch, metric snapshot, architecture descriptor, ordered tensor names)
// followed by the named tensors as concatenated "BMT1" records, parameters
// first, then optimizer velocities.

#ifndef SENFUSE_CHECKPOINT_HPP_
#define SENFUSE_CHECKPOINT_HPP_

#include <string>

#include <json.hpp>

#include "senfuse/model.hpp"
#include "senfuse/nn/optimizer.hpp"

namespace senfuse::model {

inline constexpr const char* kCheckpointFormat = "SFCK1";

void save_checkpoint(const std::string& path, Network& net,
                     const nn::SgdNesterov<float>* opt, int epoch,
                     const nlohmann::json& metrics);

struct Checkpoint {
  Network net;
  int epoch = 0;
  nlohmann::json metrics;
};

// Rebuilds the network from the stored setting and seed, then overwrites every
// parameter from the tensor section. Velocities are restored when `opt` is
// given. The stored descriptor must match the current architecture.
Checkpoint load_checkpoint(const std::string& path, nn::SgdNesterov<float>* opt = nullptr);

// Order-sensitive hash over every parameter's name and bytes.
std::uint64_t network_param_hash(Network& net);

}  // namespace senfuse::model

#endif  // SENFUSE_CHECKPOINT_HPP_
