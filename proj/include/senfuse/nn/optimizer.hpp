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

#ifndef SENFUSE_NN_OPTIMIZER_HPP_
#define SENFUSE_NN_OPTIMIZER_HPP_

#include <map>
#include <string>
#include <vector>

#include "senfuse/nn/layers.hpp"

namespace senfuse::nn {

// Stochastic gradient descent with Nesterov momentum, applied at the current
// parameters:
//   v <- mu*v - eta*g
//   theta <- theta + mu*v - eta*g
// Velocities are kept per parameter name so they can ride along in
// checkpoints.
template <typename T>
class SgdNesterov {
 public:
  SgdNesterov(double learning_rate = 0.01, double momentum = 0.9)
      : lr_(learning_rate), momentum_(momentum) {}

  void step(const std::vector<ParamRef<T>>& params) {
    for (const auto& p : params) {
      if (p.grad == nullptr) continue;
      if (!p.value->same_shape(*p.grad)) {
        throw ShapeError(p.name + ": gradient shape " + p.grad->shape_str() +
                         " does not match parameter " + p.value->shape_str());
      }
      TensorT<T>& v = velocity_for(p);
      const auto mu = static_cast<T>(momentum_);
      const auto eta = static_cast<T>(lr_);
      for (std::size_t i = 0; i < v.size(); ++i) {
        const T g = (*p.grad)[i];
        v[i] = mu * v[i] - eta * g;
        (*p.value)[i] += mu * v[i] - eta * g;
      }
    }
  }

  std::map<std::string, TensorT<T>>& velocities() { return velocity_; }
  const std::map<std::string, TensorT<T>>& velocities() const { return velocity_; }

  double learning_rate() const { return lr_; }
  double momentum() const { return momentum_; }

 private:
  TensorT<T>& velocity_for(const ParamRef<T>& p) {
    auto it = velocity_.find(p.name);
    if (it == velocity_.end()) {
      it = velocity_.emplace(p.name, TensorT<T>(p.value->shape())).first;
    } else if (!it->second.same_shape(*p.value)) {
      throw ShapeError(p.name + ": stored velocity shape " + it->second.shape_str() +
                       " does not match parameter " + p.value->shape_str());
    }
    return it->second;
  }

  double lr_, momentum_;
  std::map<std::string, TensorT<T>> velocity_;
};

}  // namespace senfuse::nn

#endif  // SENFUSE_NN_OPTIMIZER_HPP_
