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

#ifndef SENFUSE_TENSOR_IO_HPP_
#define SENFUSE_TENSOR_IO_HPP_

#include <iosfwd>
#include <string>

#include "senfuse/tensor.hpp"

namespace senfuse {

// Binary tensor container:
//   magic "BMT1" | u8 dtype (0 = float32, 1 = float64) | u8 rank |
//   rank x u32 little-endian dims | raw little-endian values, row-major.
// Used for cached features and for the tensor section of checkpoints.

void write_bmt(std::ostream& os, const Tensor& t);
void write_bmt(std::ostream& os, const Tensor64& t);
Tensor read_bmt_f32(std::istream& is);
Tensor64 read_bmt_f64(std::istream& is);

void save_tensor(const std::string& path, const Tensor& t);
Tensor load_tensor_f32(const std::string& path);

}  // namespace senfuse

#endif  // SENFUSE_TENSOR_IO_HPP_
