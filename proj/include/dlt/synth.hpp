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

#include <cstdint>

#include "dlt/dataset.hpp"

namespace dlt {

/// Deterministic procedural 28x28 digit images: stroke skeletons with
/// per-sample jitter (rotation, shear, scale, translation, thickness, shape
/// noise). Classes are balanced to within one item; order is seed-shuffled.
/// Stands in for handwritten-digit data when no IDX files are available.
Dataset synth_digits(std::size_t n, std::uint64_t seed);

/// Renders one jittered digit into a [1,28,28] tensor (exposed for tests).
Tensor synth_digit_image(int digit, std::uint64_t sample_seed);

}  // namespace dlt
