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

#include "dlt/dataset.hpp"
#include "dlt/model.hpp"
#include "dlt/train.hpp"

namespace dlt {

enum class MutKind : std::uint8_t {
  GaussianFuzz,
  WeightShuffle,
  NeuronEffectBlock,
  NeuronActInverse,
  NeuronSwitch,
  LayerDeactivation,
  LayerAddition,
  ActivationRemoval,
};

std::string mut_kind_name(MutKind k);
MutKind mut_kind_from_name(const std::string& name);
bool is_neuron_level(MutKind k);

/// One model-level mutation. Neuron-level kinds act on a seeded uniform
/// sample of ceil(ratio * eligible) neurons (dense units and conv output
/// channels); layer-level kinds pick one eligible layer.
struct MutationOperator {
  MutKind kind = MutKind::GaussianFuzz;
  double ratio = 0.0;  // neuron-level kinds only
  std::uint64_t seed = 0;
  void validate() const;
  std::string describe() const;
};

struct Mutant {
  Model model;
  MutationOperator op;
  std::size_t weights_changed = 0;   // float slots that differ from the original
  std::vector<int> layers_touched;
};

/// Applies the operator to a copy; the original is never aliased.
Mutant mutate(const Model& m, const MutationOperator& op);

struct MutCell {
  MutKind kind;
  double ratio;
  std::uint64_t seed;
  double accuracy;
  double error;
};

/// One seeded mutant per (kind, ratio) cell, evaluated on the test set.
std::vector<MutCell> run_mut_sweep(const Model& m, const Dataset& test_set,
                                   const std::vector<MutKind>& kinds,
                                   const std::vector<double>& ratios, std::uint64_t base_seed);

struct LayerMutRow {
  MutKind kind;
  std::uint64_t seed;
  double accuracy;
  double error;
};

/// Layer-level operators (deactivation, addition, activation removal), one
/// row per (kind, seed).
std::vector<LayerMutRow> run_layer_mutants(const Model& m, const Dataset& test_set,
                                           const std::vector<std::uint64_t>& seeds);

struct MutantVerdict {
  bool killed = false;
  bool excluded = false;  // accuracy below threshold * original accuracy
  double accuracy = 0.0;
  long first_killing_input = -1;
};

struct MutationScore {
  int killed = 0;
  int considered = 0;
  int excluded = 0;
  double score = 0.0;  // killed / considered
  std::vector<MutantVerdict> detail;
};

/// A mutant is killed iff some test input is classified differently from the
/// original model. Mutants below threshold * original accuracy are excluded
/// from the score as trivially broken.
MutationScore mutation_score(const Model& original, const std::vector<Mutant>& mutants,
                             const Dataset& test_set, double kill_threshold = 0.8);

/// Pre-built Gaussian-fuzzing mutants for label-change-rate detection.
struct MutantBank {
  std::vector<Model> mutants;
  MutationOperator op;  // op.seed is the bank seed; mutant i uses hash(seed, i)
};
MutantBank make_gf_bank(const Model& m, int count, double ratio, std::uint64_t seed);

/// Fraction of bank mutants whose label on x differs from the original's.
double lcr(const MutantBank& bank, const Model& original, const Tensor& x);

/// Batched LCR over a dataset (one pass per mutant).
std::vector<double> lcr_dataset(const MutantBank& bank, const Model& original, const Dataset& ds);

struct LcrDetection {
  double lcr = 0.0;
  bool adversarial = false;
};

/// Builds M seeded GF mutants and flags x when its label-change rate exceeds
/// tau. Deterministic given (model, op.seed, M, x).
LcrDetection lcr_detect(const Model& m, const Tensor& x, int mutant_count,
                        const MutationOperator& op, double tau);

/// tau calibration: the q-th percentile (nearest-rank) of clean-slice LCRs.
double lcr_percentile(std::vector<double> values, double q);

}  // namespace dlt
