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

#include <set>

#include "dlt/config.hpp"
#include "dlt/report.hpp"

namespace dlt {

struct RunResult {
  ExperimentReport report;
  std::vector<std::string> artifacts;  // paths written under out_dir
  bool ok() const { return report.failures.empty(); }
};

/// Executes the configured techniques in the order train -> coverage -> mt ->
/// mut -> ct -> dt -> apt. A technique failure is recorded and the remaining
/// techniques still run. Rerunning with the same config and seed reproduces
/// bit-identical CSV artifacts. `only` restricts execution to a subset of
/// {"coverage","mt","mut","ct","dt","apt"}; empty means all configured.
RunResult run_experiment(const ExperimentConfig& config,
                         const std::set<std::string>& only = {});

/// Loads the train/test pair named by the config (IDX files or the synthetic
/// source), applying train_limit/limit subsampling.
std::pair<Dataset, Dataset> resolve_datasets(const ExperimentConfig& config);

/// Covering-array CSV -> one MT transform list per row. Recognized domain
/// names: rotation, shift, shear, zoom (level "lo:hi"), hflip (level on/off).
std::vector<std::vector<TransformSpec>> mt_configs_from_ca_csv(const std::string& path);

/// Covering-array CSV with domains "kind" and "ratio" -> sweep cells.
std::vector<std::pair<MutKind, double>> mut_cells_from_ca_csv(const std::string& path);

}  // namespace dlt
