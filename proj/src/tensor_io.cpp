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

#include "senfuse/tensor_io.hpp"

#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace senfuse {
namespace {

constexpr char kMagic[4] = {'B', 'M', 'T', '1'};

void put_u32le(std::ostream& os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32le(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

template <typename T>
void write_values(std::ostream& os, const T* data, std::size_t n) {
  static_assert(sizeof(T) == 4 || sizeof(T) == 8);
  // Hosts this builds on are little-endian; serialize bytes explicitly anyway.
  for (std::size_t i = 0; i < n; ++i) {
    if constexpr (sizeof(T) == 4) {
      std::uint32_t bits;
      std::memcpy(&bits, &data[i], 4);
      put_u32le(os, bits);
    } else {
      std::uint64_t bits;
      std::memcpy(&bits, &data[i], 8);
      put_u32le(os, static_cast<std::uint32_t>(bits & 0xffffffffull));
      put_u32le(os, static_cast<std::uint32_t>(bits >> 32));
    }
  }
}

template <typename T>
void write_bmt_impl(std::ostream& os, const TensorT<T>& t, std::uint8_t dtype) {
  os.write(kMagic, 4);
  os.put(static_cast<char>(dtype));
  if (t.rank() > 255) throw IoError("tensor rank too large for container");
  os.put(static_cast<char>(t.rank()));
  for (std::size_t d : t.shape()) {
    if (d > 0xffffffffull) throw IoError("tensor dimension exceeds u32");
    put_u32le(os, static_cast<std::uint32_t>(d));
  }
  write_values(os, t.data(), t.size());
  if (!os) throw IoError("failed writing tensor stream");
}

template <typename T>
TensorT<T> read_bmt_impl(std::istream& is, std::uint8_t want_dtype) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0) {
    throw IoError("bad tensor magic (expected BMT1)");
  }
  const int dtype = is.get();
  const int rank = is.get();
  if (dtype != want_dtype) {
    throw IoError("tensor dtype code " + std::to_string(dtype) + ", expected " +
                  std::to_string(int(want_dtype)));
  }
  if (rank < 0) throw IoError("truncated tensor header");
  typename TensorT<T>::Shape shape(static_cast<std::size_t>(rank));
  std::size_t n = 1;
  for (auto& d : shape) {
    d = get_u32le(is);
    n *= d;
  }
  std::vector<T> data(n);
  for (std::size_t i = 0; i < n; ++i) {
    if constexpr (sizeof(T) == 4) {
      const std::uint32_t bits = get_u32le(is);
      std::memcpy(&data[i], &bits, 4);
    } else {
      const std::uint64_t lo = get_u32le(is);
      const std::uint64_t hi = get_u32le(is);
      const std::uint64_t bits = lo | (hi << 32);
      std::memcpy(&data[i], &bits, 8);
    }
  }
  if (!is) throw IoError("truncated tensor payload");
  return TensorT<T>::from_data(std::move(shape), std::move(data));
}

}  // namespace

void write_bmt(std::ostream& os, const Tensor& t) { write_bmt_impl(os, t, 0); }
void write_bmt(std::ostream& os, const Tensor64& t) { write_bmt_impl(os, t, 1); }
Tensor read_bmt_f32(std::istream& is) { return read_bmt_impl<float>(is, 0); }
Tensor64 read_bmt_f64(std::istream& is) { return read_bmt_impl<double>(is, 1); }

void save_tensor(const std::string& path, const Tensor& t) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path + " for writing");
  write_bmt(os, t);
}

Tensor load_tensor_f32(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path);
  return read_bmt_f32(is);
}

}  // namespace senfuse
