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

#include <string>
#include <vector>

#include "dlt/cache.hpp"
#include "dlt/train.hpp"

namespace dlt {

struct Variant {
  std::uint64_t seed = 0;
  std::string architecture;  // empty = base architecture
};

struct EnsembleMember {
  Model model;
  Variant variant;
};

struct Ensemble {
  std::vector<EnsembleMember> members;
  std::vector<std::string> warnings;  // e.g. duplicate variants
};

/// Trains one model per variant (seed and/or architecture override).
Ensemble train_ensemble(const TrainConfig& base, const std::vector<Variant>& variants,
                        const Dataset& train_set, ModelCache* cache = nullptr);

struct Disagreement {
  std::size_t input_id = 0;
  std::vector<int> labels;        // one per member
  int majority = -1;              // -1 when no strict plurality
  std::vector<float> confidences; // max softmax per member
  int distinct = 0;
  double mean_confidence = 0.0;
};

/// Inputs on which members disagree, ranked by (distinct labels desc,
/// mean confidence asc, input id asc).
std::vector<Disagreement> find_disagreements(const Ensemble& ens, const Dataset& inputs);

struct RetrainReport {
  double before_clean = 0.0, after_clean = 0.0;
  double before_pool = 0.0, after_pool = 0.0;  // against majority labels
  int used = 0, skipped = 0;
  bool retrained = false;
  std::string warning;
  std::string to_json() const;
};

/// Fine-tunes the target on majority-voted labels of the disagreement pool;
/// inputs without a strict majority are skipped. No-op on an empty pool.
std::pair<Model, RetrainReport> retrain_with_disagreements(
    const Model& target, const Dataset& pool, const std::vector<Disagreement>& disagreements,
    const TrainConfig& cfg, const Dataset& clean_test);

}  // namespace dlt
