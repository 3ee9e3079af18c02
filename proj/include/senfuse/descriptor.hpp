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

#ifndef SENFUSE_DESCRIPTOR_HPP_
#define SENFUSE_DESCRIPTOR_HPP_

#include <string>

#include <json.hpp>

#include "senfuse/model.hpp"

namespace senfuse::model {

// Static layer-by-layer description of a setting's architecture: every layer
// with its per-example output shape and trainable parameter count. Stored in
// checkpoint headers and rendered by `describe`.
nlohmann::json architecture_descriptor(Setting setting);

// Sum of the "params" fields across all layers of a descriptor.
std::size_t descriptor_param_count(const nlohmann::json& descriptor);

// Human-readable rendering of the descriptor.
std::string describe(Setting setting);

}  // namespace senfuse::model

#endif  // SENFUSE_DESCRIPTOR_HPP_
