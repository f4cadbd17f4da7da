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

#include <utility>

#include "dlt/cache.hpp"
#include "dlt/train.hpp"
#include "dlt/transforms.hpp"

namespace dlt {

/// Which side of the train/test split receives the metamorphic transforms.
enum class Regime { WithoutAug, TrainAugOnly, TestAugOnly, TrainAndTestAug };

std::string regime_name(Regime r);
Regime regime_from_name(const std::string& name);

struct MtResult {
  Regime regime = Regime::WithoutAug;
  std::string mr_config;  // e.g. "rotation_60" or "rotation_30+shift_0.1"
  double accuracy = 0.0;
  double error = 0.0;
  std::uint64_t seed = 0;
};

/// Augmented copy of a dataset: one seeded draw per image, so the result is a
/// fixed, reproducible set.
Dataset augment_dataset(const Dataset& ds, const std::vector<TransformSpec>& mrs,
                        std::uint64_t seed);

/// Trains under the regime (train-side transforms get fresh draws per epoch)
/// and evaluates on the regime's test side. Deterministic given cfg.seed.
MtResult run_mt(const TrainConfig& cfg, const Dataset& train_set, const Dataset& test_set,
                const std::vector<TransformSpec>& mrs, Regime regime,
                ModelCache* cache = nullptr);

/// Oracle-free per-input check: does the prediction survive the transform?
struct MrCheck {
  bool violation = false;
  int label_orig = -1;
  int label_transformed = -1;
};
MrCheck check_mr(const Model& m, const Tensor& x, const TransformSpec& spec,
                 std::uint64_t draw_seed);

/// Percent of inputs whose label changes under the transform.
double mr_violation_rate(const Model& m, const Dataset& test_set, const TransformSpec& spec,
                         std::uint64_t seed);

}  // namespace dlt
