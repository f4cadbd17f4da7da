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

#include "dlt/cache.hpp"

#include <filesystem>
#include <fstream>

#include "dlt/serialize.hpp"
#include "dlt/sha256.hpp"

namespace dlt {

ModelCache::ModelCache(std::string dir) : dir_(std::move(dir)) {
  if (!dir_.empty()) std::filesystem::create_directories(dir_);
}

// bump when training or transform semantics change, so stale entries from
// older binaries can never satisfy a new key
constexpr const char* kCacheSchema = "cs3;";

Model ModelCache::get_or_train(const std::string& description,
                               const std::function<Model()>& train_fn) {
  if (dir_.empty()) return train_fn();
  const std::string key = sha256_hex(kCacheSchema + description);
  const std::string path = (std::filesystem::path(dir_) / (key + ".nnpb")).string();
  if (std::filesystem::exists(path)) return load_model(path);
  Model m = train_fn();
  save_model(m, path);
  std::ofstream side(path + ".key");
  side << description << "\n";
  return m;
}

std::string dataset_fingerprint(const Dataset& ds) {
  return "n=" + std::to_string(ds.size()) + ";img=" + ds.provenance.images_sha256 +
         ";lab=" + ds.provenance.labels_sha256 + ";note=" + ds.provenance.note;
}

}  // namespace dlt
