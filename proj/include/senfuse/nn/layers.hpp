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

// Neural network layers with hand-written backward rules.
//
// Conventions:
//   - Activations are channels-last: [B, H, W, C] for images, [B, K] for
//     vectors. Convolution weights are [KH, KW, Cin, F].
//   - forward(x, mode) caches whatever the matching backward needs (pool
//     argmax, batchnorm statistics, dropout mask), so backward must follow
//     the forward it belongs to.
//   - backward(x, y, dy) receives the layer's own forward input and output
//     plus dL/dy; it returns dL/dx and accumulates parameter gradients.
//   - Everything is templated on the scalar type: float for training,
//     double for finite-difference verification.

#ifndef SENFUSE_NN_LAYERS_HPP_
#define SENFUSE_NN_LAYERS_HPP_

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "senfuse/error.hpp"
#include "senfuse/prng.hpp"
#include "senfuse/tensor.hpp"

namespace senfuse::nn {

enum class Mode { kTrain, kEval };

// Named view of one parameter tensor. grad is null for state that is saved
// in checkpoints but never touched by the optimizer (batchnorm running
// statistics).
template <typename T>
struct ParamRef {
  std::string name;
  TensorT<T>* value;
  TensorT<T>* grad;
};

template <typename T>
class Layer {
 public:
  virtual ~Layer() = default;

  virtual TensorT<T> forward(const TensorT<T>& x, Mode mode) = 0;
  virtual TensorT<T> backward(const TensorT<T>& x, const TensorT<T>& y,
                              const TensorT<T>& dy) = 0;

  virtual void collect_params(std::vector<ParamRef<T>>& /*out*/) {}

  void zero_grads() {
    std::vector<ParamRef<T>> refs;
    collect_params(refs);
    for (auto& r : refs) {
      if (r.grad != nullptr) r.grad->zero();
    }
  }
};

// ---- initialization ----------------------------------------------------------

template <typename T>
void glorot_uniform(TensorT<T>& w, std::size_t fan_in, std::size_t fan_out, Prng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = static_cast<T>(rng.uniform(-limit, limit));
  }
}

template <typename T>
void fan_in_uniform(TensorT<T>& w, std::size_t fan_in, Prng& rng) {
  const double limit = 1.0 / std::sqrt(static_cast<double>(fan_in));
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = static_cast<T>(rng.uniform(-limit, limit));
  }
}

// ---- dense -------------------------------------------------------------------

template <typename T>
class Dense : public Layer<T> {
 public:
  Dense(std::string name, std::size_t in, std::size_t out, Prng rng)
      : name_(std::move(name)),
        w_({in, out}),
        b_({out}),
        gw_({in, out}),
        gb_({out}) {
    glorot_uniform(w_, in, out, rng);
  }

  TensorT<T> forward(const TensorT<T>& x, Mode) override {
    check_input(x);
    const std::size_t batch = x.dim(0), in = w_.dim(0), out = w_.dim(1);
    TensorT<T> y({batch, out});
    tensor::gemm_nn(x.data(), batch, in, w_.data(), out, y.data(), false);
    for (std::size_t i = 0; i < batch; ++i) {
      T* row = y.data() + i * out;
      for (std::size_t j = 0; j < out; ++j) row[j] += b_[j];
    }
    return y;
  }

  TensorT<T> backward(const TensorT<T>& x, const TensorT<T>&,
                      const TensorT<T>& dy) override {
    check_input(x);
    const std::size_t batch = x.dim(0), in = w_.dim(0), out = w_.dim(1);
    if (dy.rank() != 2 || dy.dim(0) != batch || dy.dim(1) != out) {
      throw ShapeError(name_ + ": upstream gradient shape " + dy.shape_str());
    }
    tensor::gemm_tn(x.data(), in, batch, dy.data(), out, gw_.data(), true);
    for (std::size_t i = 0; i < batch; ++i) {
      const T* row = dy.data() + i * out;
      for (std::size_t j = 0; j < out; ++j) gb_[j] += row[j];
    }
    TensorT<T> dx({batch, in});
    tensor::gemm_nt(dy.data(), batch, out, w_.data(), in, dx.data(), false);
    return dx;
  }

  void collect_params(std::vector<ParamRef<T>>& out) override {
    out.push_back({name_ + "/w", &w_, &gw_});
    out.push_back({name_ + "/b", &b_, &gb_});
  }

  TensorT<T>& weights() { return w_; }
  TensorT<T>& bias() { return b_; }

 private:
  void check_input(const TensorT<T>& x) const {
    if (x.rank() != 2 || x.dim(1) != w_.dim(0)) {
      throw ShapeError(name_ + ": input " + x.shape_str() + " does not match weights " +
                       w_.shape_str());
    }
  }

  std::string name_;
  TensorT<T> w_, b_, gw_, gb_;
};

// ---- conv2d ------------------------------------------------------------------

enum class Padding { kValid, kSame };

template <typename T>
class Conv2d : public Layer<T> {
 public:
  Conv2d(std::string name, std::size_t kh, std::size_t kw, std::size_t cin,
         std::size_t filters, Padding padding, Prng rng)
      : name_(std::move(name)),
        kh_(kh),
        kw_(kw),
        cin_(cin),
        filters_(filters),
        padding_(padding),
        w_({kh, kw, cin, filters}),
        b_({filters}),
        gw_({kh, kw, cin, filters}),
        gb_({filters}) {
    glorot_uniform(w_, kh * kw * cin, kh * kw * filters, rng);
  }

  // Forward and backward both run through an im2col patch matrix so the hot
  // loops are register-tiled row updates over contiguous filter rows. The
  // per-element accumulation order (bias, then kernel taps ascending) matches
  // a direct tap-by-tap walk, with padded taps contributing an exact 0.
  TensorT<T> forward(const TensorT<T>& x, Mode) override {
    const auto [oh, ow, pt, pl] = geometry(x);
    const std::size_t batch = x.dim(0), h = x.dim(1), w = x.dim(2);
    const std::size_t m = oh * ow, k = kh_ * kw_ * cin_;
    TensorT<T> y({batch, oh, ow, filters_});
    std::vector<T> cols(m * k);
    for (std::size_t b = 0; b < batch; ++b) {
      im2col(x.data() + b * h * w * cin_, h, w, oh, ow, pt, pl, cols.data());
      matmul_rows(cols.data(), m, k, w_.data(), filters_, b_.data(),
                  y.data() + b * m * filters_);
    }
    return y;
  }

  TensorT<T> backward(const TensorT<T>& x, const TensorT<T>&,
                      const TensorT<T>& dy) override {
    const auto [oh, ow, pt, pl] = geometry(x);
    const std::size_t batch = x.dim(0), h = x.dim(1), w = x.dim(2);
    if (dy.rank() != 4 || dy.dim(0) != batch || dy.dim(1) != oh || dy.dim(2) != ow ||
        dy.dim(3) != filters_) {
      throw ShapeError(name_ + ": upstream gradient shape " + dy.shape_str());
    }
    const std::size_t m = oh * ow, k = kh_ * kw_ * cin_;
    TensorT<T> dx(x.shape());
    std::vector<T> wt(filters_ * k);
    for (std::size_t kk = 0; kk < k; ++kk) {
      for (std::size_t f = 0; f < filters_; ++f) {
        wt[f * k + kk] = w_[kk * filters_ + f];
      }
    }
    std::vector<T> cols(m * k), dcols(m * k);
    for (std::size_t b = 0; b < batch; ++b) {
      const T* dyb = dy.data() + b * m * filters_;
      for (std::size_t i = 0; i < m; ++i) {
        const T* dyrow = dyb + i * filters_;
        for (std::size_t f = 0; f < filters_; ++f) gb_[f] += dyrow[f];
      }
      im2col(x.data() + b * h * w * cin_, h, w, oh, ow, pt, pl, cols.data());
      accumulate_weight_grad(cols.data(), dyb, m, k);
      std::fill(dcols.begin(), dcols.end(), T{});
      matmul_rows(dyb, m, filters_, wt.data(), k, nullptr, dcols.data());
      col2im(dcols.data(), h, w, oh, ow, pt, pl, dx.data() + b * h * w * cin_);
    }
    return dx;
  }

  void collect_params(std::vector<ParamRef<T>>& out) override {
    out.push_back({name_ + "/w", &w_, &gw_});
    out.push_back({name_ + "/b", &b_, &gb_});
  }

  TensorT<T>& weights() { return w_; }
  TensorT<T>& bias() { return b_; }

 private:
  // Patch matrix layout: row (oi * ow + oj), column (u * kw + v) * cin + c.
  void im2col(const T* img, std::size_t h, std::size_t w, std::size_t oh,
              std::size_t ow, std::ptrdiff_t pt, std::ptrdiff_t pl,
              T* cols) const {
    for (std::size_t oi = 0; oi < oh; ++oi) {
      for (std::size_t oj = 0; oj < ow; ++oj) {
        T* row = cols + (oi * ow + oj) * kh_ * kw_ * cin_;
        for (std::size_t u = 0; u < kh_; ++u) {
          const std::ptrdiff_t ii = static_cast<std::ptrdiff_t>(oi + u) - pt;
          for (std::size_t v = 0; v < kw_; ++v) {
            const std::ptrdiff_t jj = static_cast<std::ptrdiff_t>(oj + v) - pl;
            T* dst = row + (u * kw_ + v) * cin_;
            if (ii < 0 || ii >= static_cast<std::ptrdiff_t>(h) || jj < 0 ||
                jj >= static_cast<std::ptrdiff_t>(w)) {
              std::fill(dst, dst + cin_, T{});
            } else {
              const T* src = img + (static_cast<std::size_t>(ii) * w +
                                    static_cast<std::size_t>(jj)) * cin_;
              std::copy(src, src + cin_, dst);
            }
          }
        }
      }
    }
  }

  void col2im(const T* dcols, std::size_t h, std::size_t w, std::size_t oh,
              std::size_t ow, std::ptrdiff_t pt, std::ptrdiff_t pl,
              T* dimg) const {
    for (std::size_t oi = 0; oi < oh; ++oi) {
      for (std::size_t oj = 0; oj < ow; ++oj) {
        const T* row = dcols + (oi * ow + oj) * kh_ * kw_ * cin_;
        for (std::size_t u = 0; u < kh_; ++u) {
          const std::ptrdiff_t ii = static_cast<std::ptrdiff_t>(oi + u) - pt;
          if (ii < 0 || ii >= static_cast<std::ptrdiff_t>(h)) continue;
          for (std::size_t v = 0; v < kw_; ++v) {
            const std::ptrdiff_t jj = static_cast<std::ptrdiff_t>(oj + v) - pl;
            if (jj < 0 || jj >= static_cast<std::ptrdiff_t>(w)) continue;
            const T* src = row + (u * kw_ + v) * cin_;
            T* dst = dimg + (static_cast<std::size_t>(ii) * w +
                             static_cast<std::size_t>(jj)) * cin_;
            for (std::size_t c = 0; c < cin_; ++c) dst[c] += src[c];
          }
        }
      }
    }
  }

  // out[m x n] = a[m x depth] * bmat[depth x n] (+ bias per row when given),
  // four output rows per pass so each bmat row is reused from registers.
  static void matmul_rows(const T* a, std::size_t m, std::size_t depth,
                          const T* bmat, std::size_t n, const T* bias, T* out) {
    std::size_t i0 = 0;
    for (; i0 + 4 <= m; i0 += 4) {
      T* o0 = out + (i0 + 0) * n;
      T* o1 = out + (i0 + 1) * n;
      T* o2 = out + (i0 + 2) * n;
      T* o3 = out + (i0 + 3) * n;
      if (bias != nullptr) {
        std::copy(bias, bias + n, o0);
        std::copy(bias, bias + n, o1);
        std::copy(bias, bias + n, o2);
        std::copy(bias, bias + n, o3);
      }
      const T* a0 = a + (i0 + 0) * depth;
      const T* a1 = a + (i0 + 1) * depth;
      const T* a2 = a + (i0 + 2) * depth;
      const T* a3 = a + (i0 + 3) * depth;
      for (std::size_t d = 0; d < depth; ++d) {
        const T v0 = a0[d], v1 = a1[d], v2 = a2[d], v3 = a3[d];
        const T* brow = bmat + d * n;
        for (std::size_t j = 0; j < n; ++j) {
          const T bj = brow[j];
          o0[j] += v0 * bj;
          o1[j] += v1 * bj;
          o2[j] += v2 * bj;
          o3[j] += v3 * bj;
        }
      }
    }
    for (; i0 < m; ++i0) {
      T* orow = out + i0 * n;
      if (bias != nullptr) std::copy(bias, bias + n, orow);
      const T* arow = a + i0 * depth;
      for (std::size_t d = 0; d < depth; ++d) {
        const T v = arow[d];
        const T* brow = bmat + d * n;
        for (std::size_t j = 0; j < n; ++j) orow[j] += v * brow[j];
      }
    }
  }

  // gw[k x filters] += cols^T * dy, four weight rows per pass over the
  // pixels so each dy row is read once per tile.
  void accumulate_weight_grad(const T* cols, const T* dyb, std::size_t m,
                              std::size_t k) {
    std::size_t k0 = 0;
    for (; k0 + 4 <= k; k0 += 4) {
      T* g0 = gw_.data() + (k0 + 0) * filters_;
      T* g1 = gw_.data() + (k0 + 1) * filters_;
      T* g2 = gw_.data() + (k0 + 2) * filters_;
      T* g3 = gw_.data() + (k0 + 3) * filters_;
      for (std::size_t i = 0; i < m; ++i) {
        const T* crow = cols + i * k + k0;
        const T v0 = crow[0], v1 = crow[1], v2 = crow[2], v3 = crow[3];
        const T* dyrow = dyb + i * filters_;
        for (std::size_t f = 0; f < filters_; ++f) {
          const T dyf = dyrow[f];
          g0[f] += v0 * dyf;
          g1[f] += v1 * dyf;
          g2[f] += v2 * dyf;
          g3[f] += v3 * dyf;
        }
      }
    }
    for (; k0 < k; ++k0) {
      T* grow = gw_.data() + k0 * filters_;
      for (std::size_t i = 0; i < m; ++i) {
        const T v = cols[i * k + k0];
        const T* dyrow = dyb + i * filters_;
        for (std::size_t f = 0; f < filters_; ++f) grow[f] += v * dyrow[f];
      }
    }
  }

  struct Geometry {
    std::size_t oh, ow;
    std::ptrdiff_t pad_top, pad_left;
  };

  Geometry geometry(const TensorT<T>& x) const {
    if (x.rank() != 4 || x.dim(3) != cin_) {
      throw ShapeError(name_ + ": input " + x.shape_str() + " does not match " +
                       std::to_string(cin_) + " input channels");
    }
    const std::size_t h = x.dim(1), w = x.dim(2);
    if (padding_ == Padding::kValid) {
      if (h < kh_ || w < kw_) {
        throw ShapeError(name_ + ": kernel " + std::to_string(kh_) + "x" +
                         std::to_string(kw_) + " larger than input " + x.shape_str());
      }
      return {h - kh_ + 1, w - kw_ + 1, 0, 0};
    }
    return {h, w, static_cast<std::ptrdiff_t>((kh_ - 1) / 2),
            static_cast<std::ptrdiff_t>((kw_ - 1) / 2)};
  }

  std::string name_;
  std::size_t kh_, kw_, cin_, filters_;
  Padding padding_;
  TensorT<T> w_, b_, gw_, gb_;
};

// ---- max pooling -------------------------------------------------------------

template <typename T>
class MaxPool2d : public Layer<T> {
 public:
  MaxPool2d(std::string name, std::size_t ph, std::size_t pw, std::size_t sh,
            std::size_t sw)
      : name_(std::move(name)), ph_(ph), pw_(pw), sh_(sh), sw_(sw) {}

  TensorT<T> forward(const TensorT<T>& x, Mode) override {
    if (x.rank() != 4) throw ShapeError(name_ + ": expected rank-4 input");
    const std::size_t batch = x.dim(0), h = x.dim(1), w = x.dim(2), ch = x.dim(3);
    if (h < ph_ || w < pw_) {
      throw ShapeError(name_ + ": pool " + std::to_string(ph_) + "x" +
                       std::to_string(pw_) + " larger than input " + x.shape_str());
    }
    const std::size_t oh = (h - ph_) / sh_ + 1;
    const std::size_t ow = (w - pw_) / sw_ + 1;
    TensorT<T> y({batch, oh, ow, ch});
    argmax_.assign(y.size(), 0);
    std::vector<T> best(ch);
    std::vector<std::size_t> best_at(ch);
    for (std::size_t b = 0; b < batch; ++b) {
      for (std::size_t oi = 0; oi < oh; ++oi) {
        for (std::size_t oj = 0; oj < ow; ++oj) {
          bool first = true;
          for (std::size_t u = 0; u < ph_; ++u) {
            const std::size_t ii = oi * sh_ + u;
            for (std::size_t v = 0; v < pw_; ++v) {
              const std::size_t jj = oj * sw_ + v;
              const std::size_t off = ((b * h + ii) * w + jj) * ch;
              const T* row = x.data() + off;
              if (first) {
                for (std::size_t c = 0; c < ch; ++c) {
                  best[c] = row[c];
                  best_at[c] = off + c;
                }
                first = false;
              } else {
                // Strict comparison keeps the first (row-major) maximum on ties.
                for (std::size_t c = 0; c < ch; ++c) {
                  if (row[c] > best[c]) {
                    best[c] = row[c];
                    best_at[c] = off + c;
                  }
                }
              }
            }
          }
          const std::size_t yoff = ((b * oh + oi) * ow + oj) * ch;
          for (std::size_t c = 0; c < ch; ++c) {
            y[yoff + c] = best[c];
            argmax_[yoff + c] = best_at[c];
          }
        }
      }
    }
    return y;
  }

  TensorT<T> backward(const TensorT<T>& x, const TensorT<T>& y,
                      const TensorT<T>& dy) override {
    if (!dy.same_shape(y) || argmax_.size() != y.size()) {
      throw ShapeError(name_ + ": backward without matching forward");
    }
    TensorT<T> dx(x.shape());
    // Windows may overlap when stride < pool, so gradients accumulate.
    for (std::size_t e = 0; e < dy.size(); ++e) dx[argmax_[e]] += dy[e];
    return dx;
  }

 private:
  std::string name_;
  std::size_t ph_, pw_, sh_, sw_;
  std::vector<std::size_t> argmax_;
};

// ---- batch normalization -----------------------------------------------------

template <typename T>
class BatchNorm : public Layer<T> {
 public:
  BatchNorm(std::string name, std::size_t channels, double eps = 1e-5,
            double momentum = 0.99)
      : name_(std::move(name)),
        eps_(eps),
        momentum_(momentum),
        gamma_({channels}, T{1}),
        beta_({channels}),
        run_mean_({channels}),
        run_var_({channels}, T{1}),
        ggamma_({channels}),
        gbeta_({channels}) {}

  TensorT<T> forward(const TensorT<T>& x, Mode mode) override {
    const std::size_t ch = channels();
    if (x.rank() < 2 || x.shape().back() != ch) {
      throw ShapeError(name_ + ": input " + x.shape_str() + " does not end in " +
                       std::to_string(ch) + " channels");
    }
    const std::size_t rows = x.size() / ch;
    if (mode == Mode::kTrain && x.dim(0) < 2) {
      throw DomainError(name_ + ": batch of " + std::to_string(x.dim(0)) +
                        " cannot be normalized in train mode");
    }
    last_mode_ = mode;
    mean_.assign(ch, 0.0);
    inv_std_.assign(ch, 0.0);

    if (mode == Mode::kTrain) {
      std::vector<double> var(ch, 0.0);
      for (std::size_t r = 0; r < rows; ++r) {
        const T* row = x.data() + r * ch;
        for (std::size_t c = 0; c < ch; ++c) mean_[c] += row[c];
      }
      for (std::size_t c = 0; c < ch; ++c) mean_[c] /= static_cast<double>(rows);
      for (std::size_t r = 0; r < rows; ++r) {
        const T* row = x.data() + r * ch;
        for (std::size_t c = 0; c < ch; ++c) {
          const double d = row[c] - mean_[c];
          var[c] += d * d;
        }
      }
      for (std::size_t c = 0; c < ch; ++c) {
        var[c] /= static_cast<double>(rows);
        inv_std_[c] = 1.0 / std::sqrt(var[c] + eps_);
        run_mean_[c] = static_cast<T>(momentum_ * run_mean_[c] + (1.0 - momentum_) * mean_[c]);
        run_var_[c] = static_cast<T>(momentum_ * run_var_[c] + (1.0 - momentum_) * var[c]);
      }
    } else {
      for (std::size_t c = 0; c < ch; ++c) {
        mean_[c] = run_mean_[c];
        inv_std_[c] = 1.0 / std::sqrt(static_cast<double>(run_var_[c]) + eps_);
      }
    }

    x_hat_ = TensorT<T>(x.shape());
    TensorT<T> y(x.shape());
    for (std::size_t r = 0; r < rows; ++r) {
      const T* row = x.data() + r * ch;
      T* hrow = x_hat_.data() + r * ch;
      T* yrow = y.data() + r * ch;
      for (std::size_t c = 0; c < ch; ++c) {
        const T h = static_cast<T>((row[c] - mean_[c]) * inv_std_[c]);
        hrow[c] = h;
        yrow[c] = gamma_[c] * h + beta_[c];
      }
    }
    return y;
  }

  TensorT<T> backward(const TensorT<T>& x, const TensorT<T>&,
                      const TensorT<T>& dy) override {
    const std::size_t ch = channels();
    if (!dy.same_shape(x) || !x_hat_.same_shape(x)) {
      throw ShapeError(name_ + ": backward without matching forward");
    }
    const std::size_t rows = x.size() / ch;
    std::vector<double> sum_dy(ch, 0.0), sum_dy_h(ch, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
      const T* dyrow = dy.data() + r * ch;
      const T* hrow = x_hat_.data() + r * ch;
      for (std::size_t c = 0; c < ch; ++c) {
        sum_dy[c] += dyrow[c];
        sum_dy_h[c] += dyrow[c] * static_cast<double>(hrow[c]);
      }
    }
    for (std::size_t c = 0; c < ch; ++c) {
      ggamma_[c] += static_cast<T>(sum_dy_h[c]);
      gbeta_[c] += static_cast<T>(sum_dy[c]);
    }

    TensorT<T> dx(x.shape());
    const double m = static_cast<double>(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      const T* dyrow = dy.data() + r * ch;
      const T* hrow = x_hat_.data() + r * ch;
      T* dxrow = dx.data() + r * ch;
      for (std::size_t c = 0; c < ch; ++c) {
        const double g = gamma_[c];
        if (last_mode_ == Mode::kTrain) {
          dxrow[c] = static_cast<T>(g * inv_std_[c] / m *
                                    (m * dyrow[c] - sum_dy[c] - hrow[c] * sum_dy_h[c]));
        } else {
          dxrow[c] = static_cast<T>(g * inv_std_[c] * dyrow[c]);
        }
      }
    }
    return dx;
  }

  void collect_params(std::vector<ParamRef<T>>& out) override {
    out.push_back({name_ + "/gamma", &gamma_, &ggamma_});
    out.push_back({name_ + "/beta", &beta_, &gbeta_});
    out.push_back({name_ + "/running_mean", &run_mean_, nullptr});
    out.push_back({name_ + "/running_var", &run_var_, nullptr});
  }

 private:
  std::size_t channels() const { return gamma_.dim(0); }

  std::string name_;
  double eps_, momentum_;
  TensorT<T> gamma_, beta_, run_mean_, run_var_, ggamma_, gbeta_;
  TensorT<T> x_hat_;
  std::vector<double> mean_, inv_std_;
  Mode last_mode_ = Mode::kEval;
};

// ---- dropout -----------------------------------------------------------------

template <typename T>
class Dropout : public Layer<T> {
 public:
  Dropout(std::string name, double rate, Prng rng)
      : name_(std::move(name)), rate_(rate), rng_(rng) {
    if (rate < 0.0 || rate >= 1.0) {
      throw DomainError(name_ + ": dropout rate must lie in [0,1)");
    }
  }

  TensorT<T> forward(const TensorT<T>& x, Mode mode) override {
    if (mode == Mode::kEval || rate_ == 0.0) {
      mask_.clear();
      return x;
    }
    const T keep_scale = static_cast<T>(1.0 / (1.0 - rate_));
    mask_.resize(x.size());
    TensorT<T> y(x.shape());
    for (std::size_t i = 0; i < x.size(); ++i) {
      mask_[i] = rng_.next_double() < rate_ ? T{} : keep_scale;
      y[i] = x[i] * mask_[i];
    }
    return y;
  }

  TensorT<T> backward(const TensorT<T>& x, const TensorT<T>&,
                      const TensorT<T>& dy) override {
    if (mask_.empty()) return dy;  // eval or rate 0: identity
    if (dy.size() != mask_.size()) {
      throw ShapeError(name_ + ": backward without matching forward");
    }
    TensorT<T> dx(x.shape());
    for (std::size_t i = 0; i < dy.size(); ++i) dx[i] = dy[i] * mask_[i];
    return dx;
  }

  void set_rng(Prng rng) { rng_ = rng; }

 private:
  std::string name_;
  double rate_;
  Prng rng_;
  std::vector<T> mask_;
};

// ---- activations -------------------------------------------------------------

template <typename T>
class ReLU : public Layer<T> {
 public:
  TensorT<T> forward(const TensorT<T>& x, Mode) override {
    TensorT<T> y(x.shape());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] > T{} ? x[i] : T{};
    return y;
  }

  TensorT<T> backward(const TensorT<T>& x, const TensorT<T>&,
                      const TensorT<T>& dy) override {
    TensorT<T> dx(x.shape());
    for (std::size_t i = 0; i < x.size(); ++i) dx[i] = x[i] > T{} ? dy[i] : T{};
    return dx;
  }
};

template <typename T>
class Sigmoid : public Layer<T> {
 public:
  TensorT<T> forward(const TensorT<T>& x, Mode) override {
    TensorT<T> y(x.shape());
    for (std::size_t i = 0; i < x.size(); ++i) {
      y[i] = static_cast<T>(1.0 / (1.0 + std::exp(-static_cast<double>(x[i]))));
    }
    return y;
  }

  TensorT<T> backward(const TensorT<T>&, const TensorT<T>& y,
                      const TensorT<T>& dy) override {
    TensorT<T> dx(y.shape());
    for (std::size_t i = 0; i < y.size(); ++i) dx[i] = dy[i] * y[i] * (T{1} - y[i]);
    return dx;
  }
};

// ---- flatten -----------------------------------------------------------------

template <typename T>
class Flatten : public Layer<T> {
 public:
  TensorT<T> forward(const TensorT<T>& x, Mode) override {
    if (x.rank() < 2) throw ShapeError("flatten: expected at least rank 2");
    return x.reshaped({x.dim(0), x.size() / x.dim(0)});
  }

  TensorT<T> backward(const TensorT<T>& x, const TensorT<T>&,
                      const TensorT<T>& dy) override {
    return dy.reshaped(x.shape());
  }
};

// ---- sequential container ----------------------------------------------------

// Owns a layer pipeline and the activation chain of the last forward pass, so
// a single backward call walks the whole stack.
template <typename T>
class Sequential : public Layer<T> {
 public:
  Sequential() = default;

  template <typename L>
  L* add(L layer) {
    auto owned = std::make_unique<L>(std::move(layer));
    L* raw = owned.get();
    layers_.push_back(std::move(owned));
    return raw;
  }

  TensorT<T> forward(const TensorT<T>& x, Mode mode) override {
    chain_.clear();
    chain_.reserve(layers_.size() + 1);
    chain_.push_back(x);
    for (auto& layer : layers_) {
      chain_.push_back(layer->forward(chain_.back(), mode));
    }
    return chain_.back();
  }

  TensorT<T> backward(const TensorT<T>&, const TensorT<T>&,
                      const TensorT<T>& dy) override {
    if (chain_.size() != layers_.size() + 1) {
      throw ShapeError("sequential backward without matching forward");
    }
    TensorT<T> g = dy;
    for (std::size_t i = layers_.size(); i-- > 0;) {
      g = layers_[i]->backward(chain_[i], chain_[i + 1], g);
    }
    return g;
  }

  void collect_params(std::vector<ParamRef<T>>& out) override {
    for (auto& layer : layers_) layer->collect_params(out);
  }

  // Activations are a large share of peak memory; drop them between steps.
  void release_chain() { chain_.clear(); }

  std::size_t layer_count() const { return layers_.size(); }

 private:
  std::vector<std::unique_ptr<Layer<T>>> layers_;
  std::vector<TensorT<T>> chain_;
};

}  // namespace senfuse::nn

#endif  // SENFUSE_NN_LAYERS_HPP_
