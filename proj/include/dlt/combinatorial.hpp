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

#include "dlt/model.hpp"

namespace dlt {

struct ParameterDomain {
  std::string name;
  std::vector<std::string> levels;  // >= 2 unique values
  void validate() const;
};

struct CoveringArray {
  std::vector<ParameterDomain> domains;
  int strength = 2;
  std::vector<std::vector<int>> rows;  // level indices per domain
  std::string to_csv() const;
};

/// Greedy one-row-at-a-time construction: each row is the best of `candidates`
/// seeded candidates by newly covered t-tuples. Deterministic given seed; the
/// result always verifies clean.
CoveringArray generate_covering_array(const std::vector<ParameterDomain>& domains, int t,
                                      std::uint64_t seed = 0, int candidates = 50);

struct MissingTuple {
  std::vector<int> domains;  // t domain indices, ascending
  std::vector<int> levels;   // corresponding level indices
};

/// Exhaustive check of the covering invariant; empty result means valid.
std::vector<MissingTuple> verify_covering_array(const CoveringArray& ca);

/// Fraction of (neuron t-subset, on/off pattern) tuples observed across the
/// traces at one weighted layer. Activations binarize by per-layer min-max
/// scaling against `threshold`. Layers wider than `width_cap` use a seeded
/// sample of width_cap neurons.
double neuron_tuple_coverage(const std::vector<ActivationTrace>& traces, const Model& m,
                             int weighted_layer, int t, double threshold, int width_cap = 24,
                             std::uint64_t sample_seed = 0);

struct SmokeCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SmokeReport {
  std::vector<SmokeCheck> checks;
  bool all_pass() const;
};

/// Boundary-value and sanity checks: extreme inputs keep softmax finite and
/// normalized, one training step keeps the loss finite, prediction repeats
/// deterministically.
SmokeReport smoke_test(const Model& m);

}  // namespace dlt
