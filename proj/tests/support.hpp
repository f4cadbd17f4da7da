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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "dlt/common.hpp"
#include "dlt/model.hpp"
#include "dlt/tensor.hpp"

namespace dlt::test {

inline Tensor random_tensor(std::vector<int> shape, std::uint64_t seed, float lo = -1.0f,
                            float hi = 1.0f) {
  Tensor t(std::move(shape));
  Rng rng(seed);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = rng.uniform(lo, hi);
  return t;
}

inline void randomize_weights(Model& m, std::uint64_t seed, float scale = 0.5f) {
  Rng rng(seed);
  for (Layer& l : m.layers) {
    for (std::size_t i = 0; i < l.weights.size(); ++i) l.weights[i] = rng.uniform(-scale, scale);
    for (std::size_t i = 0; i < l.bias.size(); ++i) l.bias[i] = rng.uniform(-scale, scale);
  }
}

inline double max_rel_err(const float* got, const float* want, std::size_t n,
                          double floor = 1e-4) {
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double denom = std::max(floor, std::abs(static_cast<double>(want[i])));
    worst = std::max(worst, std::abs(static_cast<double>(got[i]) - want[i]) / denom);
  }
  return worst;
}

inline double max_abs_err(const float* got, const float* want, std::size_t n) {
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    worst = std::max(worst, std::abs(static_cast<double>(got[i]) - want[i]));
  return worst;
}

// unique temp path under the build tree
inline std::string temp_path(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "dltest_tests";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

/// Small random architectures used by gradient and coverage property tests.
inline Model random_small_model(std::uint64_t seed) {
  Rng rng(seed);
  const int pick = rng.uniform_int(0, 3);
  Model m;
  switch (pick) {
    case 0:
      m = ModelBuilder({1, 6, 6}).conv2d(3, 3, 3).relu().flatten().dense(5).softmax().build(
          "t_conv", seed);
      break;
    case 1:
      m = ModelBuilder({2, 6, 6})
              .conv2d(4, 3, 3)
              .relu()
              .maxpool(2)
              .flatten()
              .dense(5)
              .softmax()
              .build("t_conv_pool", seed);
      break;
    case 2:
      m = ModelBuilder({1, 6, 6}).flatten().dense(8).relu().dense(5).softmax().build("t_mlp",
                                                                                     seed);
      break;
    default:
      m = ModelBuilder({1, 6, 6})
              .conv2d(2, 2, 2)
              .relu()
              .flatten()
              .dense(6)
              .relu()
              .dense(5)
              .softmax()
              .build("t_deep", seed);
      break;
  }
  randomize_weights(m, hash_combine(seed, 7), 0.6f);
  return m;
}

}  // namespace dlt::test
