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

#ifndef SENFUSE_TENSOR_HPP_
#define SENFUSE_TENSOR_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "senfuse/error.hpp"

namespace senfuse {

// Dense row-major N-dimensional array. float for training, double for
// finite-difference work; both instantiations share every code path.
//
// Values are immutable once built except for the explicit in-place updates the
// optimizer performs, so read-only sharing across threads is safe.
template <typename T>
class TensorT {
 public:
  using Shape = std::vector<std::size_t>;

  TensorT() = default;

  explicit TensorT(Shape shape, T fill = T{})
      : shape_(std::move(shape)), data_(checked_numel(shape_), fill) {}

  static TensorT zeros(Shape shape) { return TensorT(std::move(shape)); }

  static TensorT full(Shape shape, T value) { return TensorT(std::move(shape), value); }

  static TensorT from_data(Shape shape, std::vector<T> data) {
    if (data.size() != checked_numel(shape)) {
      throw ShapeError("tensor data length " + std::to_string(data.size()) +
                       " does not match shape " + shape_string(shape));
    }
    TensorT t;
    t.shape_ = std::move(shape);
    t.data_ = std::move(data);
    return t;
  }

  const Shape& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return data_.size(); }
  std::size_t dim(std::size_t axis) const { return shape_.at(axis); }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  std::vector<T>& vec() { return data_; }
  const std::vector<T>& vec() const { return data_; }

  T& operator[](std::size_t i) { return data_[i]; }
  T operator[](std::size_t i) const { return data_[i]; }

  T& operator()(std::size_t i) { return data_[i]; }
  T operator()(std::size_t i) const { return data_[i]; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * shape_[1] + j]; }
  T operator()(std::size_t i, std::size_t j) const { return data_[i * shape_[1] + j]; }
  T& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return data_[(i * shape_[1] + j) * shape_[2] + k];
  }
  T operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * shape_[1] + j) * shape_[2] + k];
  }
  T& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return data_[((i * shape_[1] + j) * shape_[2] + k) * shape_[3] + l];
  }
  T operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return data_[((i * shape_[1] + j) * shape_[2] + k) * shape_[3] + l];
  }
  T& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l,
                std::size_t m) {
    return data_[(((i * shape_[1] + j) * shape_[2] + k) * shape_[3] + l) * shape_[4] +
                 m];
  }
  T operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l,
               std::size_t m) const {
    return data_[(((i * shape_[1] + j) * shape_[2] + k) * shape_[3] + l) * shape_[4] +
                 m];
  }

  // Metadata-only: the flat buffer is neither reallocated nor reordered.
  TensorT& reshape(Shape new_shape) {
    if (checked_numel(new_shape) != data_.size()) {
      throw ShapeError("cannot reshape " + shape_string(shape_) + " (" +
                       std::to_string(data_.size()) + " values) to " +
                       shape_string(new_shape));
    }
    shape_ = std::move(new_shape);
    return *this;
  }

  TensorT reshaped(Shape new_shape) const& {
    TensorT t = *this;
    t.reshape(std::move(new_shape));
    return t;
  }

  TensorT reshaped(Shape new_shape) && {
    reshape(std::move(new_shape));
    return std::move(*this);
  }

  void fill(T value) { std::fill(data_.begin(), data_.end(), value); }
  void zero() { fill(T{}); }

  bool same_shape(const TensorT& other) const { return shape_ == other.shape_; }

  std::string shape_str() const { return shape_string(shape_); }

  static std::string shape_string(const Shape& s) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << ']';
    return os.str();
  }

  static std::size_t numel(const Shape& s) {
    std::size_t n = 1;
    for (std::size_t d : s) n *= d;
    return n;
  }

 private:
  static std::size_t checked_numel(const Shape& s) {
    for (std::size_t d : s) {
      if (d == 0) throw ShapeError("zero-sized dimension in shape " + shape_string(s));
    }
    return numel(s);
  }

  Shape shape_;
  std::vector<T> data_;
};

using Tensor = TensorT<float>;
using Tensor64 = TensorT<double>;

namespace tensor {

template <typename T>
void ensure_finite(const TensorT<T>& t, const char* op) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!std::isfinite(t[i])) {
      throw NumericError(std::string(op) + " produced a non-finite value at index " +
                         std::to_string(i));
    }
  }
}

// ---- GEMM kernels ------------------------------------------------------------
//
// All three variants accumulate each output element along a fixed serial k
// order, so results are bit-reproducible and independent of blocking. The
// i-blocking exists only to keep the C rows of a block resident while the B
// rows stream through.

inline constexpr std::size_t kGemmRowBlock = 8;

// C[M x N] (+)= A[M x K] * B[K x N]
template <typename T>
void gemm_nn(const T* a, std::size_t m, std::size_t k, const T* b, std::size_t n,
             T* c, bool accumulate) {
  if (!accumulate) std::fill(c, c + m * n, T{});
  for (std::size_t i0 = 0; i0 < m; i0 += kGemmRowBlock) {
    const std::size_t i1 = std::min(m, i0 + kGemmRowBlock);
    for (std::size_t p = 0; p < k; ++p) {
      const T* brow = b + p * n;
      for (std::size_t i = i0; i < i1; ++i) {
        const T av = a[i * k + p];
        T* crow = c + i * n;
        for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
      }
    }
  }
}

// C[M x N] (+)= A[M x K] * B^T, with B stored [N x K]. Eight dot products
// run per pass; their chains are independent, which hides the FMA latency
// the single-accumulator form serializes on.
template <typename T>
void gemm_nt(const T* a, std::size_t m, std::size_t k, const T* b, std::size_t n,
             T* c, bool accumulate) {
  for (std::size_t i = 0; i < m; ++i) {
    const T* arow = a + i * k;
    T* crow = c + i * n;
    std::size_t j = 0;
    for (; j + 8 <= n; j += 8) {
      const T* b0 = b + (j + 0) * k;
      const T* b1 = b + (j + 1) * k;
      const T* b2 = b + (j + 2) * k;
      const T* b3 = b + (j + 3) * k;
      const T* b4 = b + (j + 4) * k;
      const T* b5 = b + (j + 5) * k;
      const T* b6 = b + (j + 6) * k;
      const T* b7 = b + (j + 7) * k;
      T s0{}, s1{}, s2{}, s3{}, s4{}, s5{}, s6{}, s7{};
      for (std::size_t p = 0; p < k; ++p) {
        const T av = arow[p];
        s0 += av * b0[p];
        s1 += av * b1[p];
        s2 += av * b2[p];
        s3 += av * b3[p];
        s4 += av * b4[p];
        s5 += av * b5[p];
        s6 += av * b6[p];
        s7 += av * b7[p];
      }
      if (accumulate) {
        crow[j + 0] += s0; crow[j + 1] += s1; crow[j + 2] += s2; crow[j + 3] += s3;
        crow[j + 4] += s4; crow[j + 5] += s5; crow[j + 6] += s6; crow[j + 7] += s7;
      } else {
        crow[j + 0] = s0; crow[j + 1] = s1; crow[j + 2] = s2; crow[j + 3] = s3;
        crow[j + 4] = s4; crow[j + 5] = s5; crow[j + 6] = s6; crow[j + 7] = s7;
      }
    }
    for (; j < n; ++j) {
      const T* brow = b + j * k;
      T acc{};
      for (std::size_t p = 0; p < k; ++p) acc += arow[p] * brow[p];
      crow[j] = accumulate ? crow[j] + acc : acc;
    }
  }
}

// C[M x N] (+)= A^T * B, with A stored [K x M], B stored [K x N]
template <typename T>
void gemm_tn(const T* a, std::size_t m, std::size_t k, const T* b, std::size_t n,
             T* c, bool accumulate) {
  if (!accumulate) std::fill(c, c + m * n, T{});
  for (std::size_t p0 = 0; p0 < k; p0 += kGemmRowBlock) {
    const std::size_t p1 = std::min(k, p0 + kGemmRowBlock);
    for (std::size_t i = 0; i < m; ++i) {
      T* crow = c + i * n;
      for (std::size_t p = p0; p < p1; ++p) {
        const T av = a[p * m + i];
        const T* brow = b + p * n;
        for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
      }
    }
  }
}

// ---- tensor-level operations -------------------------------------------------

template <typename T>
TensorT<T> matmul(const TensorT<T>& a, const TensorT<T>& b) {
  if (a.rank() != 2 || b.rank() != 2 || a.dim(1) != b.dim(0)) {
    throw ShapeError("matmul dimension mismatch: " + a.shape_str() + " x " +
                     b.shape_str());
  }
  TensorT<T> c({a.dim(0), b.dim(1)});
  gemm_nn(a.data(), a.dim(0), a.dim(1), b.data(), b.dim(1), c.data(), false);
  ensure_finite(c, "matmul");
  return c;
}

enum class BinaryOp { kAdd, kSub, kMul, kMax, kXorBinary };

template <typename T>
TensorT<T> elementwise(BinaryOp op, const TensorT<T>& a, const TensorT<T>& b) {
  if (!a.same_shape(b)) {
    throw ShapeError("elementwise shape mismatch: " + a.shape_str() + " vs " +
                     b.shape_str());
  }
  TensorT<T> out(a.shape());
  const std::size_t n = a.size();
  switch (op) {
    case BinaryOp::kAdd:
      for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
      break;
    case BinaryOp::kSub:
      for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
      break;
    case BinaryOp::kMul:
      for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
      break;
    case BinaryOp::kMax:
      for (std::size_t i = 0; i < n; ++i) out[i] = a[i] > b[i] ? a[i] : b[i];
      break;
    case BinaryOp::kXorBinary:
      for (std::size_t i = 0; i < n; ++i) {
        const bool abit = a[i] == T{1}, bbit = b[i] == T{1};
        if ((!abit && a[i] != T{0}) || (!bbit && b[i] != T{0})) {
          throw DomainError("xor_binary requires entries in {0,1}, found " +
                            std::to_string(static_cast<double>(abit ? b[i] : a[i])) +
                            " at index " + std::to_string(i));
        }
        out[i] = static_cast<T>(abit != bbit);
      }
      break;
  }
  ensure_finite(out, "elementwise");
  return out;
}

template <typename T>
TensorT<T> add(const TensorT<T>& a, const TensorT<T>& b) {
  return elementwise(BinaryOp::kAdd, a, b);
}
template <typename T>
TensorT<T> sub(const TensorT<T>& a, const TensorT<T>& b) {
  return elementwise(BinaryOp::kSub, a, b);
}
template <typename T>
TensorT<T> mul(const TensorT<T>& a, const TensorT<T>& b) {
  return elementwise(BinaryOp::kMul, a, b);
}
template <typename T>
TensorT<T> max(const TensorT<T>& a, const TensorT<T>& b) {
  return elementwise(BinaryOp::kMax, a, b);
}
template <typename T>
TensorT<T> xor_binary(const TensorT<T>& a, const TensorT<T>& b) {
  return elementwise(BinaryOp::kXorBinary, a, b);
}

// Concatenate along the last axis; all leading dimensions must agree.
template <typename T>
TensorT<T> concat(const TensorT<T>& a, const TensorT<T>& b) {
  if (a.rank() != b.rank() || a.rank() == 0) {
    throw ShapeError("concat rank mismatch: " + a.shape_str() + " vs " + b.shape_str());
  }
  for (std::size_t i = 0; i + 1 < a.rank(); ++i) {
    if (a.dim(i) != b.dim(i)) {
      throw ShapeError("concat leading dimension mismatch: " + a.shape_str() + " vs " +
                       b.shape_str());
    }
  }
  const std::size_t last = a.rank() - 1;
  const std::size_t pa = a.dim(last), pb = b.dim(last);
  const std::size_t rows = a.size() / pa;
  typename TensorT<T>::Shape shape = a.shape();
  shape[last] = pa + pb;
  TensorT<T> out(shape);
  for (std::size_t r = 0; r < rows; ++r) {
    T* dst = out.data() + r * (pa + pb);
    std::copy(a.data() + r * pa, a.data() + (r + 1) * pa, dst);
    std::copy(b.data() + r * pb, b.data() + (r + 1) * pb, dst + pa);
  }
  ensure_finite(out, "concat");
  return out;
}

template <typename T>
TensorT<T> scale(const TensorT<T>& a, T s) {
  TensorT<T> out(a.shape());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
  ensure_finite(out, "scale");
  return out;
}

template <typename T>
T sum(const TensorT<T>& a) {
  T acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i];
  return acc;
}

template <typename T>
T sum_squares(const TensorT<T>& a) {
  T acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * a[i];
  return acc;
}

// Stack equally shaped tensors into one with a new leading axis.
template <typename T>
TensorT<T> stack(const std::vector<const TensorT<T>*>& parts) {
  if (parts.empty()) throw ShapeError("stack of zero tensors");
  const auto& head = *parts.front();
  typename TensorT<T>::Shape shape;
  shape.push_back(parts.size());
  for (std::size_t d : head.shape()) shape.push_back(d);
  TensorT<T> out(shape);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!parts[i]->same_shape(head)) {
      throw ShapeError("stack element " + std::to_string(i) + " has shape " +
                       parts[i]->shape_str() + ", expected " + head.shape_str());
    }
    std::copy(parts[i]->data(), parts[i]->data() + head.size(),
              out.data() + i * head.size());
  }
  return out;
}

}  // namespace tensor
}  // namespace senfuse

#endif  // SENFUSE_TENSOR_HPP_
