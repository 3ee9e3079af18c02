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

#ifndef SENFUSE_HASH_HPP_
#define SENFUSE_HASH_HPP_

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <string>

namespace senfuse {

inline constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ull;

inline std::uint64_t fnv1a64(const void* data, std::size_t n,
                             std::uint64_t state = kFnvOffset) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    state ^= bytes[i];
    state *= kFnvPrime;
  }
  return state;
}

inline std::uint64_t fnv1a64(const std::string& s, std::uint64_t state = kFnvOffset) {
  return fnv1a64(s.data(), s.size(), state);
}

inline std::string hex_u64(std::uint64_t v) {
  char buf[2 * sizeof(v) + 1];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace senfuse

#endif  // SENFUSE_HASH_HPP_
