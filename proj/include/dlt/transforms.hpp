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
#include <string>
#include <vector>

#include "dlt/tensor.hpp"

namespace dlt {

enum class TransformKind : std::uint8_t { Rotation, Shift, Shear, Zoom, HFlip, Compose };
enum class SampleMode : std::uint8_t { Fixed, Random };
enum class Interp : std::uint8_t { Bilinear, Nearest };

/// A parameterized affine image transform used as a metamorphic relation.
/// Scalar magnitudes follow the augmentation-range convention: in Random mode
/// the realized parameter is drawn uniformly from [-max, +max] (zoom: from
/// [lo, hi]) as a pure function of (seed, draw_seed); Fixed mode realizes the
/// nominal magnitude itself (zoom: the midpoint).
struct TransformSpec {
  TransformKind kind = TransformKind::Rotation;
  float p0 = 0.0f;  // rotation/shear: max degrees; shift: fraction x; zoom: lo
  float p1 = 0.0f;  // shift: fraction y; zoom: hi
  SampleMode mode = SampleMode::Random;
  Interp interp = Interp::Bilinear;
  std::uint64_t seed = 0;
  std::vector<TransformSpec> children;  // Compose only, applied in order

  void validate() const;
  std::string describe() const;
};

TransformSpec rotation(float max_degrees, SampleMode mode = SampleMode::Random,
                       std::uint64_t seed = 0);
TransformSpec shift(float fraction_x, float fraction_y, SampleMode mode = SampleMode::Random,
                    std::uint64_t seed = 0);
TransformSpec shear(float max_degrees, SampleMode mode = SampleMode::Random,
                    std::uint64_t seed = 0);
TransformSpec zoom(float lo, float hi, SampleMode mode = SampleMode::Random,
                   std::uint64_t seed = 0);
TransformSpec hflip_spec();

/// Sequential composition; empty list is the identity.
TransformSpec compose(std::vector<TransformSpec> specs);

/// Applies the transform to a [1,28,28] image in [0,1]; same shape out,
/// out-of-frame pixels filled with 0.
Tensor apply(const TransformSpec& spec, const Tensor& image, std::uint64_t draw_seed);

/// Column reversal; involution.
Tensor hflip(const Tensor& image);

}  // namespace dlt
