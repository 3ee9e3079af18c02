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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "senfuse/error.hpp"
#include "senfuse/metrics.hpp"
#include "senfuse/prng.hpp"
#include "senfuse/tensor.hpp"

using namespace senfuse;

namespace {

struct OracleResult {
  double micro_f1 = 0.0;
  double hamming = 0.0;
  double exact = 0.0;
  std::vector<metrics::LabelCounts> per_label;
};

// Independent loop-based recomputation of every metric from first principles.
OracleResult oracle(const Tensor& x, const Tensor& y) {
  const std::size_t rows = x.dim(0), cols = x.dim(1);
  OracleResult r;
  r.per_label.resize(cols);
  std::size_t inter = 0, sum_x = 0, sum_y = 0, exact_rows = 0;
  double ham_acc = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    std::size_t wrong = 0;
    bool all_equal = true;
    for (std::size_t j = 0; j < cols; ++j) {
      const bool px = x(i, j) == 1.0f, py = y(i, j) == 1.0f;
      inter += px && py;
      sum_x += px;
      sum_y += py;
      wrong += px != py;
      all_equal = all_equal && px == py;
      auto& c = r.per_label[j];
      if (px && py) ++c.tp;
      else if (px && !py) ++c.fp;
      else if (!px && !py) ++c.tn;
      else ++c.fn;
    }
    ham_acc += static_cast<double>(wrong) / static_cast<double>(cols);
    exact_rows += all_equal;
  }
  r.micro_f1 = (sum_x + sum_y == 0)
                   ? 1.0
                   : 2.0 * static_cast<double>(inter) / static_cast<double>(sum_x + sum_y);
  r.hamming = ham_acc / static_cast<double>(rows);
  r.exact = static_cast<double>(exact_rows) / static_cast<double>(rows);
  return r;
}

}  // namespace

TEST_CASE("worked multilabel example is reproduced to 1e-12") {
  Tensor x = Tensor::from_data({2, 3}, {1, 1, 0, 0, 0, 1});
  Tensor y = Tensor::from_data({2, 3}, {1, 0, 1, 0, 0, 1});
  CHECK(std::abs(metrics::micro_f1(x, y) - 4.0 / 6.0) < 1e-12);
  CHECK(std::abs(metrics::hamming_loss(x, y) - 1.0 / 3.0) < 1e-12);
  CHECK(std::abs(metrics::exact_match_ratio(x, y) - 0.5) < 1e-12);
}

TEST_CASE("1000 random fixtures match the loop oracle exactly") {
  Prng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t rows = 1 + rng.below(8);
    const std::size_t cols = 7;
    Tensor x = Tensor::zeros({rows, cols});
    Tensor y = Tensor::zeros({rows, cols});
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = rng.below(2) ? 1.0f : 0.0f;
      y[i] = rng.below(2) ? 1.0f : 0.0f;
    }
    const OracleResult want = oracle(x, y);
    CHECK(metrics::micro_f1(x, y) == want.micro_f1);
    CHECK(metrics::hamming_loss(x, y) == want.hamming);
    CHECK(metrics::exact_match_ratio(x, y) == want.exact);

    const auto got = metrics::per_label_counts(x, y);
    REQUIRE(got.size() == cols);
    for (std::size_t j = 0; j < cols; ++j) {
      CHECK(got[j].tp == want.per_label[j].tp);
      CHECK(got[j].fp == want.per_label[j].fp);
      CHECK(got[j].tn == want.per_label[j].tn);
      CHECK(got[j].fn == want.per_label[j].fn);
      CHECK(got[j].tp + got[j].fp + got[j].tn + got[j].fn == rows);
    }
  }
}

TEST_CASE("micro f1 of two all-zero matrices is one") {
  Tensor x = Tensor::zeros({3, 7});
  Tensor y = Tensor::zeros({3, 7});
  CHECK(metrics::micro_f1(x, y) == 1.0);
  CHECK(metrics::hamming_loss(x, y) == 0.0);
  CHECK(metrics::exact_match_ratio(x, y) == 1.0);
}

TEST_CASE("binarize thresholds inclusively") {
  Tensor p = Tensor::from_data({1, 4}, {0.49f, 0.5f, 0.51f, 0.0f});
  Tensor b = metrics::binarize(p, 0.5f);
  CHECK(b[0] == 0.0f);
  CHECK(b[1] == 1.0f);  // >= threshold predicts positive
  CHECK(b[2] == 1.0f);
  CHECK(b[3] == 0.0f);

  Tensor strict = metrics::binarize(p, 0.75f);
  CHECK(strict[1] == 0.0f);
}

TEST_CASE("metrics validate their inputs") {
  Tensor x = Tensor::zeros({2, 3});
  Tensor y = Tensor::zeros({3, 2});
  CHECK_THROWS_AS(metrics::micro_f1(x, y), ShapeError);
  Tensor flat = Tensor::zeros({6});
  CHECK_THROWS_AS(metrics::hamming_loss(flat, flat), ShapeError);
  Tensor soft = Tensor::full({2, 3}, 0.5f);
  CHECK_THROWS_AS(metrics::exact_match_ratio(soft, Tensor::zeros({2, 3})), DomainError);
}

TEST_CASE("totals aggregates per-label counts") {
  std::vector<metrics::LabelCounts> rows(3);
  rows[0] = {5, 1, 10, 2};
  rows[1] = {3, 0, 12, 3};
  rows[2] = {1, 4, 9, 4};
  const metrics::LabelCounts t = metrics::totals(rows);
  CHECK(t.tp == 9);
  CHECK(t.fp == 5);
  CHECK(t.tn == 31);
  CHECK(t.fn == 9);
}

TEST_CASE("evaluate composes binarization and all metrics") {
  Prng rng(55);
  const std::size_t rows = 20, cols = 7;
  Tensor probs = Tensor::zeros({rows, cols});
  Tensor truth = Tensor::zeros({rows, cols});
  for (std::size_t i = 0; i < probs.size(); ++i) {
    probs[i] = rng.next_float();
    truth[i] = rng.below(2) ? 1.0f : 0.0f;
  }
  std::vector<std::string> names = {"Wind", "Thunder",   "Rain",           "Ocean",
                                    "Fire", "Explosion", "Gunshot-gunfire"};
  const metrics::EvalReport report = metrics::evaluate(probs, truth, 0.5f, names);

  const Tensor pred = metrics::binarize(probs, 0.5f);
  CHECK(report.micro_f1 == metrics::micro_f1(pred, truth));
  CHECK(report.hamming_loss == metrics::hamming_loss(pred, truth));
  CHECK(report.exact_match_ratio == metrics::exact_match_ratio(pred, truth));
  CHECK(report.examples == rows);
  CHECK(report.labels == names);
  CHECK(report.threshold == 0.5f);
  REQUIRE(report.per_label.size() == cols);

  // a full count table across 532 examples adds up across labels
  std::size_t grand = 0;
  for (const auto& c : report.per_label) grand += c.tp + c.fp + c.tn + c.fn;
  CHECK(grand == rows * cols);

  const auto j = report.to_json();
  CHECK(j.at("micro_f1").get<double>() == report.micro_f1);
  CHECK(j.at("per_label").size() == cols);
  CHECK(j.at("per_label")[4].at("label").get<std::string>() == "Fire");

  const std::string csv = report.to_csv();
  CHECK(csv.find("Label,TP,FP,TN,FN") != std::string::npos);
  CHECK(csv.find("Gunshot-gunfire") != std::string::npos);
}

TEST_CASE("count table scale check on a 532-example split") {
  // 532 examples x 7 labels = 3724 cells; a fixed confusion budget must fill it.
  const std::size_t tp = 333, fp = 316, fn = 324, tn = 2751;
  CHECK(tp + fp + fn + tn == 3724);
  CHECK(3724 == 532 * 7);

  // build a prediction/truth pair realizing those totals, one label at a time
  const std::size_t rows = 532, cols = 7;
  Tensor x = Tensor::zeros({rows, cols});
  Tensor y = Tensor::zeros({rows, cols});
  std::size_t placed_tp = 0, placed_fp = 0, placed_fn = 0;
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < rows; ++i) {
      if (placed_tp < tp) {
        x(i, j) = 1.0f;
        y(i, j) = 1.0f;
        ++placed_tp;
      } else if (placed_fp < fp) {
        x(i, j) = 1.0f;
        ++placed_fp;
      } else if (placed_fn < fn) {
        y(i, j) = 1.0f;
        ++placed_fn;
      }
    }
  }
  const metrics::LabelCounts t = metrics::totals(metrics::per_label_counts(x, y));
  CHECK(t.tp == tp);
  CHECK(t.fp == fp);
  CHECK(t.fn == fn);
  CHECK(t.tn == tn);
  // micro f1 from the same totals
  const double f1 = 2.0 * static_cast<double>(t.tp) /
                    static_cast<double>(2 * t.tp + t.fp + t.fn);
  CHECK(metrics::micro_f1(x, y) == doctest::Approx(f1).epsilon(1e-15));
}
