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

#include "dlt/model.hpp"

namespace dlt {

// Weights file: magic "NNPB", u32 version=1, u32 layer count, per layer a
// kind tag (u8), dim list (u32 count + u32 values), then weights and bias as
// little-endian float32. A metadata trailer (architecture, seed, epochs)
// follows the layers. All integers little-endian.

void save_model(const Model& m, const std::string& path);
Model load_model(const std::string& path);

}  // namespace dlt
