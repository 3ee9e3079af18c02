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

#include "senfuse/metrics.hpp"

#include <sstream>

#include "senfuse/error.hpp"

namespace senfuse::metrics {
namespace {

void check_binary_pair(const Tensor& x, const Tensor& y) {
  if (x.rank() != 2 || y.rank() != 2 || !x.same_shape(y)) {
    throw ShapeError("metric inputs must be equal-shaped [examples x labels] matrices, got " +
                     x.shape_str() + " and " + y.shape_str());
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if ((x[i] != 0.0f && x[i] != 1.0f) || (y[i] != 0.0f && y[i] != 1.0f)) {
      throw DomainError("metric inputs must be binary, found " +
                        std::to_string(x[i] != 0.0f && x[i] != 1.0f ? x[i] : y[i]) +
                        " at index " + std::to_string(i));
    }
  }
}

}  // namespace

Tensor binarize(const Tensor& probs, float threshold) {
  Tensor out(probs.shape());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    out[i] = probs[i] >= threshold ? 1.0f : 0.0f;
  }
  return out;
}

double micro_f1(const Tensor& x, const Tensor& y) {
  check_binary_pair(x, y);
  std::size_t inter = 0, sum_x = 0, sum_y = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    inter += x[i] == 1.0f && y[i] == 1.0f;
    sum_x += x[i] == 1.0f;
    sum_y += y[i] == 1.0f;
  }
  if (sum_x + sum_y == 0) return 1.0;
  return 2.0 * static_cast<double>(inter) / static_cast<double>(sum_x + sum_y);
}

double exact_match_ratio(const Tensor& x, const Tensor& y) {
  check_binary_pair(x, y);
  const std::size_t rows = x.dim(0), cols = x.dim(1);
  std::size_t exact = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    bool match = true;
    for (std::size_t c = 0; c < cols; ++c) {
      if (x(r, c) != y(r, c)) {
        match = false;
        break;
      }
    }
    exact += match;
  }
  return static_cast<double>(exact) / static_cast<double>(rows);
}

double hamming_loss(const Tensor& x, const Tensor& y) {
  check_binary_pair(x, y);
  const std::size_t rows = x.dim(0), cols = x.dim(1);
  double total = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    std::size_t wrong = 0;
    for (std::size_t c = 0; c < cols; ++c) wrong += x(r, c) != y(r, c);
    total += static_cast<double>(wrong) / static_cast<double>(cols);
  }
  return total / static_cast<double>(rows);
}

std::vector<LabelCounts> per_label_counts(const Tensor& x, const Tensor& y) {
  check_binary_pair(x, y);
  const std::size_t rows = x.dim(0), cols = x.dim(1);
  std::vector<LabelCounts> out(cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const bool pred = x(r, c) == 1.0f, truth = y(r, c) == 1.0f;
      if (pred && truth) ++out[c].tp;
      else if (pred && !truth) ++out[c].fp;
      else if (!pred && !truth) ++out[c].tn;
      else ++out[c].fn;
    }
  }
  return out;
}

LabelCounts totals(const std::vector<LabelCounts>& rows) {
  LabelCounts t;
  for (const auto& r : rows) {
    t.tp += r.tp;
    t.fp += r.fp;
    t.tn += r.tn;
    t.fn += r.fn;
  }
  return t;
}

nlohmann::json EvalReport::to_json() const {
  nlohmann::json per = nlohmann::json::array();
  for (std::size_t i = 0; i < per_label.size(); ++i) {
    per.push_back({{"label", i < labels.size() ? labels[i] : std::to_string(i)},
                   {"tp", per_label[i].tp},
                   {"fp", per_label[i].fp},
                   {"tn", per_label[i].tn},
                   {"fn", per_label[i].fn}});
  }
  const LabelCounts t = totals(per_label);
  return nlohmann::json{{"micro_f1", micro_f1},
                        {"hamming_loss", hamming_loss},
                        {"exact_match_ratio", exact_match_ratio},
                        {"threshold", threshold},
                        {"examples", examples},
                        {"per_label", per},
                        {"total", {{"tp", t.tp}, {"fp", t.fp}, {"tn", t.tn}, {"fn", t.fn}}}};
}

std::string EvalReport::to_csv() const {
  std::ostringstream os;
  os << "Label,TP,FP,TN,FN\n";
  for (std::size_t i = 0; i < per_label.size(); ++i) {
    os << (i < labels.size() ? labels[i] : std::to_string(i)) << ',' << per_label[i].tp
       << ',' << per_label[i].fp << ',' << per_label[i].tn << ',' << per_label[i].fn
       << '\n';
  }
  const LabelCounts t = totals(per_label);
  os << "Total," << t.tp << ',' << t.fp << ',' << t.tn << ',' << t.fn << '\n';
  return os.str();
}

EvalReport evaluate(const Tensor& probs, const Tensor& truth, float threshold,
                    std::vector<std::string> labels) {
  const Tensor x = binarize(probs, threshold);
  EvalReport report;
  report.micro_f1 = micro_f1(x, truth);
  report.hamming_loss = hamming_loss(x, truth);
  report.exact_match_ratio = exact_match_ratio(x, truth);
  report.threshold = threshold;
  report.examples = x.dim(0);
  report.labels = std::move(labels);
  report.per_label = per_label_counts(x, truth);
  return report;
}

}  // namespace senfuse::metrics
