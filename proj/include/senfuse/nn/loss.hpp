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

#ifndef SENFUSE_NN_LOSS_HPP_
#define SENFUSE_NN_LOSS_HPP_

#include <cmath>

#include "senfuse/error.hpp"
#include "senfuse/tensor.hpp"

namespace senfuse::nn {

inline constexpr double kBceEpsilon = 1e-7;

// Binary cross entropy averaged over every element of [B x L] predictions.
// Probabilities are clipped to [1e-7, 1-1e-7] before the logs; labels must
// be exactly 0 or 1. The gradient is evaluated at the clipped probability.
template <typename T>
T bce_loss(const TensorT<T>& p, const TensorT<T>& y, TensorT<T>* dp = nullptr) {
  if (!p.same_shape(y)) {
    throw ShapeError("bce_loss shape mismatch: " + p.shape_str() + " vs " + y.shape_str());
  }
  if (dp != nullptr) *dp = TensorT<T>(p.shape());
  const auto n = static_cast<double>(p.size());
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double label = y[i];
    if (label != 0.0 && label != 1.0) {
      throw DomainError("bce_loss: label " + std::to_string(label) + " is not binary");
    }
    const double q =
        std::min(1.0 - kBceEpsilon, std::max(kBceEpsilon, static_cast<double>(p[i])));
    total -= label * std::log(q) + (1.0 - label) * std::log(1.0 - q);
    if (dp != nullptr) {
      (*dp)[i] = static_cast<T>((-label / q + (1.0 - label) / (1.0 - q)) / n);
    }
  }
  return static_cast<T>(total / n);
}

}  // namespace senfuse::nn

#endif  // SENFUSE_NN_LOSS_HPP_
