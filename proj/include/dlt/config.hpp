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

#include <optional>
#include <string>
#include <vector>

#include "dlt/combinatorial.hpp"
#include "dlt/differential.hpp"
#include "dlt/metamorphic.hpp"
#include "dlt/mutation.hpp"
#include "dlt/train.hpp"
#include "dlt/transforms.hpp"

namespace dlt {

struct DatasetConfig {
  std::string train_images, train_labels, test_images, test_labels;
  // synthetic source used when no paths are given
  bool synthetic = false;
  std::size_t synth_train = 20000, synth_test = 10000;
  std::uint64_t synth_seed = 53561;
  std::size_t limit = 0;        // test-set cap, 0 = all
  std::size_t train_limit = 0;  // train-set cap, 0 = all
};

struct CoverageSection {
  double threshold = 0.75;
  int k = 2;
  int sample = 500;            // test inputs traced
  int dsa_train_sample = 1000; // training traces indexed
  double dsa_lo = 0.0, dsa_hi = 2.0;
  int select_n = 20;
};

struct MtSection {
  std::vector<Regime> regimes;
  std::vector<std::vector<TransformSpec>> configs;
};

struct MutSection {
  std::vector<MutKind> kinds;
  std::vector<double> ratios;
  int layer_seeds = 5;
  int score_mutants = 10;
  double kill_threshold = 0.8;
  int lcr_mutants = 50;
  double lcr_ratio = 0.005;
  int lcr_sample = 200;
  std::string lcr_corpus;  // optional adversarial corpus to score
};

struct CtSection {
  std::vector<ParameterDomain> domains;
  int strength = 2;
  int neuron_t = 2;
  double neuron_threshold = 0.5;
  int neuron_sample = 100;  // traces used for neuron-interaction coverage
};

struct DtSection {
  std::vector<Variant> variants;
  std::string pool = "clean";  // clean | mt | apt
  std::vector<TransformSpec> pool_transforms;
  std::string pool_corpus;  // apt pool: adversarial corpus path
  int retrain_epochs = 2;
  float retrain_lr = 0.01f;
};

struct AptSection {
  std::string kind = "fgsm";  // fgsm | ifgsm | deepfool
  std::vector<double> epsilons = {0.0, 0.05, 0.1, 0.2, 0.3};
  int subset = 1000;
  int steps = 10;
  double step_size = 0.05;
  int max_iter = 50;
  double overshoot = 0.02;
  bool write_corpus = true;
  double corpus_eps = 0.2;
};

struct ExperimentConfig {
  std::uint64_t seed = 0;
  std::string out_dir = "runs/out";
  DatasetConfig dataset;
  TrainConfig train;
  std::optional<CoverageSection> coverage;
  std::optional<MtSection> mt;
  std::optional<MutSection> mut;
  std::optional<CtSection> ct;
  std::optional<DtSection> dt;
  std::optional<AptSection> apt;

  void validate() const;  // at least one technique section, invariants
};

/// Strict parse: unknown keys, type mismatches, and invariant violations
/// raise errors naming the JSON path.
ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

/// Canonical serialization; parse(serialize(c)) == c.
std::string config_to_json(const ExperimentConfig& c);

std::string transform_to_json(const TransformSpec& spec);
TransformSpec transform_from_json_text(const std::string& text);

}  // namespace dlt
