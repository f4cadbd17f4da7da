// Copyright 2026 The dltest Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dlt/dataset.hpp"
#include "dlt/model.hpp"

namespace dlt {

struct TrainConfig {
  int epochs = 10;
  int batch_size = 64;
  float learning_rate = 0.01f;
  float momentum = 0.9f;
  std::uint64_t seed = 0;
  std::string architecture = "baseline_cnn";
  void validate() const;
  std::string to_json() const;
};

struct EpochStats {
  double loss = 0.0;
  double accuracy = 0.0;  // training accuracy, percent
};

/// Applied to each training image before the forward pass; fresh draws per
/// epoch make standard augmentation semantics. Identity when empty.
using AugmentFn = std::function<Tensor(const Tensor& image, std::size_t index, int epoch)>;

struct TrainResult {
  Model model;
  std::vector<EpochStats> history;
};

/// SGD with momentum on mean cross-entropy. Deterministic given
/// (config.seed, dataset order). Aborts with a diagnostic on non-finite loss.
TrainResult train(Model model, const Dataset& train_set, const TrainConfig& config,
                  const AugmentFn& augment = nullptr);

/// Convenience: build the architecture, then train.
TrainResult train_new(const std::string& architecture, const Dataset& train_set,
                      const TrainConfig& config, const AugmentFn& augment = nullptr);

struct EvalResult {
  double accuracy = 0.0;  // percent
  double error = 0.0;     // percent, accuracy + error == 100 exactly
  std::vector<int> per_class_correct = std::vector<int>(10, 0);
  std::vector<int> per_class_total = std::vector<int>(10, 0);
  std::size_t count = 0;
};

EvalResult evaluate(const Model& m, const Dataset& test_set);

/// Predicted labels for a whole dataset, batched internally.
std::vector<int> predict_dataset(const Model& m, const Dataset& ds);

/// Softmax probabilities for a whole dataset: [n, classes].
Tensor predict_probs(const Model& m, const Dataset& ds);

}  // namespace dlt
