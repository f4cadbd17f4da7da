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

#include "dlt/dataset.hpp"
#include "dlt/model.hpp"

namespace dlt {

/// Content-addressed store of trained models. Training is deterministic, so a
/// model is fully identified by the canonical description of its training job;
/// campaigns reuse earlier trainings across runs.
class ModelCache {
 public:
  ModelCache() = default;  // disabled
  explicit ModelCache(std::string dir);

  bool enabled() const { return !dir_.empty(); }

  /// Loads the model stored under `description`, or runs train_fn, stores the
  /// result, and returns it. The description must uniquely determine the
  /// training job (config, dataset provenance, augmentation).
  Model get_or_train(const std::string& description, const std::function<Model()>& train_fn);

 private:
  std::string dir_;
};

/// Canonical one-line fingerprint of a dataset for cache keys.
std::string dataset_fingerprint(const Dataset& ds);

}  // namespace dlt
