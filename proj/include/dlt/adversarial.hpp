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

#include "dlt/dataset.hpp"
#include "dlt/model.hpp"

namespace dlt {

struct AdversarialResult {
  Tensor x_adv;            // [1,28,28], clipped to [0,1]
  bool success = false;    // prediction changed vs the original input
  double linf = 0.0;
  double l2 = 0.0;
  int iterations = 0;
  int label_orig = -1;
  int label_adv = -1;
  std::string warning;
};

/// x_adv = clip(x + eps * sign(d loss / d x)); untargeted by default, or
/// descends toward `target` when target >= 0.
AdversarialResult fgsm(const Model& m, const Tensor& x, int y_true, double eps, int target = -1);

/// Iterated sign steps with per-step L-inf projection onto the eps ball and
/// [0,1] clipping; stops early once the label flips.
AdversarialResult ifgsm(const Model& m, const Tensor& x, int y_true, double eps, int steps,
                        double step_size, int target = -1);

/// Iterative linearization toward the nearest decision boundary among the
/// other classes; the accumulated perturbation is scaled by (1 + overshoot)
/// and clipped at the end.
AdversarialResult deepfool(const Model& m, const Tensor& x, int max_iter = 50,
                           double overshoot = 0.02);

enum class AttackKind { Fgsm, Ifgsm };

/// Accuracy under attack per epsilon; the grid must start at 0 (which
/// reproduces the clean accuracy exactly).
std::vector<std::pair<double, double>> robustness_curve(const Model& m, const Dataset& subset,
                                                        AttackKind kind,
                                                        const std::vector<double>& eps_grid);

/// Adversarial corpus record (little-endian binary file format).
struct AdvRecord {
  std::uint32_t input_id = 0;
  float eps = 0.0f;
  std::uint8_t success = 0;
  std::vector<float> pixels;  // 784
};

void write_adv_corpus(const std::string& path, const std::vector<AdvRecord>& records);
std::vector<AdvRecord> read_adv_corpus(const std::string& path);

}  // namespace dlt
