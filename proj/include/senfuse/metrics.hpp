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

// Multi-label classification metrics over [examples x labels] binary
// matrices: micro-averaged F1, exact match ratio, Hamming loss, and
// per-label contingency counts. Exact match ratio is reported as a fraction
// in [0,1].

#ifndef SENFUSE_METRICS_HPP_
#define SENFUSE_METRICS_HPP_

#include <string>
#include <vector>

#include <json.hpp>

#include "senfuse/tensor.hpp"

namespace senfuse::metrics {

struct LabelCounts {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
};

// binarized = probs >= threshold, elementwise.
Tensor binarize(const Tensor& probs, float threshold = 0.5f);

// 2*sum(x AND y) / (sum(x) + sum(y)); defined as 1.0 when both matrices are
// all-zero.
double micro_f1(const Tensor& x, const Tensor& y);

// Fraction of rows predicted exactly.
double exact_match_ratio(const Tensor& x, const Tensor& y);

// Mean over rows of |xor(x_i, y_i)| / labels.
double hamming_loss(const Tensor& x, const Tensor& y);

// One (TP, FP, TN, FN) row per label column.
std::vector<LabelCounts> per_label_counts(const Tensor& x, const Tensor& y);

LabelCounts totals(const std::vector<LabelCounts>& rows);

struct EvalReport {
  double micro_f1 = 0.0;
  double hamming_loss = 0.0;
  double exact_match_ratio = 0.0;
  float threshold = 0.5f;
  std::size_t examples = 0;
  std::vector<std::string> labels;
  std::vector<LabelCounts> per_label;

  nlohmann::json to_json() const;
  // Label,TP,FP,TN,FN rows plus a Total row.
  std::string to_csv() const;
};

EvalReport evaluate(const Tensor& probs, const Tensor& truth, float threshold,
                    std::vector<std::string> labels);

}  // namespace senfuse::metrics

#endif  // SENFUSE_METRICS_HPP_
