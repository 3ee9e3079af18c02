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

// LSTM over a [B, T, K] sequence returning the final hidden state [B, H].
//
// Gates are packed into [., 4H] matrices in i|f|g|o column order: input gate,
// forget gate, candidate, output gate. Sigmoid gates, tanh candidate and cell
// activation, zero initial state, forget-gate bias 1. Backward is full
// backpropagation through time.

#ifndef SENFUSE_NN_LSTM_HPP_
#define SENFUSE_NN_LSTM_HPP_

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "senfuse/nn/layers.hpp"

namespace senfuse::nn {

template <typename T>
class Lstm : public Layer<T> {
 public:
  Lstm(std::string name, std::size_t in, std::size_t cells, Prng rng)
      : name_(std::move(name)),
        in_(in),
        cells_(cells),
        w_({in, 4 * cells}),
        u_({cells, 4 * cells}),
        b_({4 * cells}),
        gw_({in, 4 * cells}),
        gu_({cells, 4 * cells}),
        gb_({4 * cells}) {
    Prng wrng = rng.split("w");
    Prng urng = rng.split("u");
    fan_in_uniform(w_, in, wrng);
    fan_in_uniform(u_, cells, urng);
    for (std::size_t j = 0; j < cells_; ++j) b_[cells_ + j] = T{1};
  }

  TensorT<T> forward(const TensorT<T>& x, Mode) override {
    if (x.rank() != 3 || x.dim(2) != in_) {
      throw ShapeError(name_ + ": input " + x.shape_str() + " does not match " +
                       std::to_string(in_) + " features");
    }
    const std::size_t batch = x.dim(0), steps = x.dim(1);
    gates_.assign(steps, TensorT<T>({batch, 4 * cells_}));
    cell_.assign(steps + 1, TensorT<T>({batch, cells_}));
    tanh_cell_.assign(steps, TensorT<T>({batch, cells_}));
    hidden_.assign(steps + 1, TensorT<T>({batch, cells_}));

    TensorT<T> xt({batch, in_});
    for (std::size_t t = 0; t < steps; ++t) {
      slice_step(x, t, xt);
      TensorT<T>& z = gates_[t];
      tensor::gemm_nn(xt.data(), batch, in_, w_.data(), 4 * cells_, z.data(), false);
      tensor::gemm_nn(hidden_[t].data(), batch, cells_, u_.data(), 4 * cells_, z.data(),
                      true);
      for (std::size_t r = 0; r < batch; ++r) {
        T* zrow = z.data() + r * 4 * cells_;
        const T* cprev = cell_[t].data() + r * cells_;
        T* cnow = cell_[t + 1].data() + r * cells_;
        T* tc = tanh_cell_[t].data() + r * cells_;
        T* hnow = hidden_[t + 1].data() + r * cells_;
        for (std::size_t j = 0; j < cells_; ++j) {
          const T ig = sigmoid(zrow[j] + b_[j]);
          const T fg = sigmoid(zrow[cells_ + j] + b_[cells_ + j]);
          const T gg = static_cast<T>(std::tanh(zrow[2 * cells_ + j] + b_[2 * cells_ + j]));
          const T og = sigmoid(zrow[3 * cells_ + j] + b_[3 * cells_ + j]);
          zrow[j] = ig;
          zrow[cells_ + j] = fg;
          zrow[2 * cells_ + j] = gg;
          zrow[3 * cells_ + j] = og;
          cnow[j] = fg * cprev[j] + ig * gg;
          tc[j] = static_cast<T>(std::tanh(cnow[j]));
          hnow[j] = og * tc[j];
        }
      }
    }
    return hidden_[steps];
  }

  TensorT<T> backward(const TensorT<T>& x, const TensorT<T>&,
                      const TensorT<T>& dy) override {
    const std::size_t batch = x.dim(0), steps = x.dim(1);
    if (gates_.size() != steps || dy.rank() != 2 || dy.dim(0) != batch ||
        dy.dim(1) != cells_) {
      throw ShapeError(name_ + ": backward without matching forward");
    }
    TensorT<T> dx(x.shape());
    TensorT<T> dh = dy;
    TensorT<T> dc({batch, cells_});
    TensorT<T> dz({batch, 4 * cells_});
    TensorT<T> xt({batch, in_});
    TensorT<T> dxt({batch, in_});

    for (std::size_t t = steps; t-- > 0;) {
      const TensorT<T>& z = gates_[t];
      for (std::size_t r = 0; r < batch; ++r) {
        const T* zrow = z.data() + r * 4 * cells_;
        const T* cprev = cell_[t].data() + r * cells_;
        const T* tc = tanh_cell_[t].data() + r * cells_;
        const T* dhrow = dh.data() + r * cells_;
        T* dcrow = dc.data() + r * cells_;
        T* dzrow = dz.data() + r * 4 * cells_;
        for (std::size_t j = 0; j < cells_; ++j) {
          const T ig = zrow[j], fg = zrow[cells_ + j];
          const T gg = zrow[2 * cells_ + j], og = zrow[3 * cells_ + j];
          const T d_og = dhrow[j] * tc[j];
          const T d_c = dcrow[j] + dhrow[j] * og * (T{1} - tc[j] * tc[j]);
          const T d_ig = d_c * gg;
          const T d_gg = d_c * ig;
          const T d_fg = d_c * cprev[j];
          dcrow[j] = d_c * fg;  // flows to step t-1
          dzrow[j] = d_ig * ig * (T{1} - ig);
          dzrow[cells_ + j] = d_fg * fg * (T{1} - fg);
          dzrow[2 * cells_ + j] = d_gg * (T{1} - gg * gg);
          dzrow[3 * cells_ + j] = d_og * og * (T{1} - og);
        }
      }
      slice_step(x, t, xt);
      tensor::gemm_tn(xt.data(), in_, batch, dz.data(), 4 * cells_, gw_.data(), true);
      tensor::gemm_tn(hidden_[t].data(), cells_, batch, dz.data(), 4 * cells_, gu_.data(),
                      true);
      for (std::size_t r = 0; r < batch; ++r) {
        const T* dzrow = dz.data() + r * 4 * cells_;
        for (std::size_t j = 0; j < 4 * cells_; ++j) gb_[j] += dzrow[j];
      }
      tensor::gemm_nt(dz.data(), batch, 4 * cells_, w_.data(), in_, dxt.data(), false);
      for (std::size_t r = 0; r < batch; ++r) {
        std::copy(dxt.data() + r * in_, dxt.data() + (r + 1) * in_,
                  dx.data() + (r * steps + t) * in_);
      }
      tensor::gemm_nt(dz.data(), batch, 4 * cells_, u_.data(), cells_, dh.data(), false);
    }
    return dx;
  }

  void collect_params(std::vector<ParamRef<T>>& out) override {
    out.push_back({name_ + "/w", &w_, &gw_});
    out.push_back({name_ + "/u", &u_, &gu_});
    out.push_back({name_ + "/b", &b_, &gb_});
  }

  TensorT<T>& input_weights() { return w_; }
  TensorT<T>& recurrent_weights() { return u_; }
  TensorT<T>& bias() { return b_; }

 private:
  static T sigmoid(T v) {
    return static_cast<T>(1.0 / (1.0 + std::exp(-static_cast<double>(v))));
  }

  void slice_step(const TensorT<T>& x, std::size_t t, TensorT<T>& out) const {
    const std::size_t batch = x.dim(0), steps = x.dim(1);
    for (std::size_t r = 0; r < batch; ++r) {
      std::copy(x.data() + (r * steps + t) * in_, x.data() + (r * steps + t + 1) * in_,
                out.data() + r * in_);
    }
  }

  std::string name_;
  std::size_t in_, cells_;
  TensorT<T> w_, u_, b_, gw_, gu_, gb_;
  std::vector<TensorT<T>> gates_, cell_, tanh_cell_, hidden_;
};

}  // namespace senfuse::nn

#endif  // SENFUSE_NN_LSTM_HPP_
