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

#ifndef SENFUSE_PRNG_HPP_
#define SENFUSE_PRNG_HPP_

#include <cstdint>
#include <string_view>

namespace senfuse {

// Deterministic 64-bit generator (splitmix64). Pure integer arithmetic, so an
// identical seed yields the identical stream on every platform. Substreams are
// derived from string keys so each layer / epoch / worker draws independently
// of the order in which other consumers advance their own streams.
class Prng {
 public:
  explicit Prng(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  float next_float() { return static_cast<float>(next_u64() >> 40) * 0x1.0p-24f; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform integer in [0, bound) via 128-bit multiply-shift.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  // Independent substream for `key`. Derivation depends only on this
  // generator's seed (not its current position), so split order is irrelevant.
  Prng split(std::string_view key) const {
    std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a 64
    for (char c : key) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ull;
    }
    std::uint64_t z = seed_ ^ (h + 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return Prng(z ^ (z >> 31));
  }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace senfuse

#endif  // SENFUSE_PRNG_HPP_
