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

/// Labeled image set. Images are [n,1,28,28] with pixel values in [0,1].
struct Dataset {
  Tensor images;
  std::vector<int> labels;
  struct Provenance {
    std::string images_path, labels_path;
    std::string images_sha256, labels_sha256;
    std::string note;
  } provenance;

  std::size_t size() const { return labels.size(); }
  /// Copy of image i as [1,28,28].
  Tensor image(std::size_t i) const;
  /// Gathered batch [k,1,28,28] for the given indices.
  Tensor gather(const std::vector<int>& indices) const;
  Dataset take(const std::vector<int>& indices) const;
  void validate() const;
};

/// Reads the classic IDX pair (big-endian headers, u8 pixels); pixels are
/// scaled to [0,1] by division by 255.
Dataset load_idx(const std::string& images_path, const std::string& labels_path);

/// Inverse of load_idx for round-trip tests and synthetic data emission.
void write_idx(const Dataset& ds, const std::string& images_path, const std::string& labels_path);

/// Deterministic stratified subsample: per-class proportional allocation
/// (largest remainder), per-class seeded selection, seeded final order.
Dataset subsample(const Dataset& ds, std::size_t n, std::uint64_t seed);

}  // namespace dlt
