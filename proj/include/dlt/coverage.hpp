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

#include <limits>
#include <string>
#include <vector>

#include "dlt/dataset.hpp"
#include "dlt/model.hpp"

namespace dlt {

struct CoverageReport {
  std::string metric;  // "neuron_coverage" | "top_k_coverage"
  double value = 0.0;  // in [0,1]
  double threshold = 0.0;
  int k = 0;
  struct PerLayer {
    int layer;
    int covered;
    int total;
  };
  std::vector<PerLayer> per_layer;
  std::string to_json() const;
};

/// Neuron counted iff its per-layer min-max-scaled activation exceeds t for
/// at least one trace; scaling bounds come from the evaluated trace set.
CoverageReport neuron_coverage(const std::vector<ActivationTrace>& traces, double t);

/// Neuron counted iff it ranks in its layer's top-k activations for some
/// trace; ties break toward the lowest neuron index.
CoverageReport top_k_coverage(const std::vector<ActivationTrace>& traces, int k);

/// Per-class activation traces of the training set at the reference layer
/// (the penultimate weighted layer's post-activation).
struct TraceIndex {
  int layer = -1;
  std::vector<std::vector<std::vector<float>>> by_class;  // [class][sample][unit]
  std::size_t total() const;
};

TraceIndex build_trace_index(const Model& m, const Dataset& train_set);

/// Distance-based surprise: ||a(x) - a_nn|| / ||a_nn - b_nn|| where a_nn is
/// the nearest same-class training trace and b_nn its nearest other-class
/// trace. A zero denominator yields +infinity.
double dsa(const Model& m, const TraceIndex& index, const Tensor& x, int class_hint = -1);

constexpr double kDsaInfinity = std::numeric_limits<double>::infinity();

/// Indices of up to n candidates with DSA in [lo,hi], ranked descending.
std::vector<int> select_surprising(const Model& m, const TraceIndex& index,
                                   const Dataset& candidates, double lo, double hi, int n);

}  // namespace dlt
