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

#include "dlt/dataset.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>

#include "dlt/common.hpp"
#include "dlt/sha256.hpp"

namespace dlt {

namespace {

constexpr std::uint32_t kImagesMagic = 0x00000803;
constexpr std::uint32_t kLabelsMagic = 0x00000801;

std::uint32_t read_u32_be(std::ifstream& f, const std::string& path) {
  std::uint8_t b[4];
  f.read(reinterpret_cast<char*>(b), 4);
  require(f.gcount() == 4, "truncated IDX file (header): " + path);
  return (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) | (std::uint32_t(b[2]) << 8) |
         std::uint32_t(b[3]);
}

void write_u32_be(std::ofstream& f, std::uint32_t v) {
  std::uint8_t b[4] = {static_cast<std::uint8_t>(v >> 24), static_cast<std::uint8_t>(v >> 16),
                       static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)};
  f.write(reinterpret_cast<const char*>(b), 4);
}

}  // namespace

Tensor Dataset::image(std::size_t i) const {
  const std::size_t per = 28 * 28;
  Tensor out({1, 28, 28});
  std::memcpy(out.data(), images.data() + i * per, per * sizeof(float));
  return out;
}

Tensor Dataset::gather(const std::vector<int>& indices) const {
  const std::size_t per = 28 * 28;
  Tensor out({static_cast<int>(indices.size()), 1, 28, 28});
  for (std::size_t k = 0; k < indices.size(); ++k)
    std::memcpy(out.data() + k * per, images.data() + static_cast<std::size_t>(indices[k]) * per,
                per * sizeof(float));
  return out;
}

Dataset Dataset::take(const std::vector<int>& indices) const {
  Dataset out;
  out.images = gather(indices);
  out.labels.reserve(indices.size());
  for (int i : indices) out.labels.push_back(labels[static_cast<std::size_t>(i)]);
  out.provenance = provenance;
  return out;
}

void Dataset::validate() const {
  require(images.rank() == 4 && images.dim(1) == 1 && images.dim(2) == 28 && images.dim(3) == 28,
          "dataset images must be [n,1,28,28], got " + images.shape_str());
  require(static_cast<std::size_t>(images.dim(0)) == labels.size(),
          "image count " + std::to_string(images.dim(0)) + " != label count " +
              std::to_string(labels.size()));
  for (int l : labels) require(l >= 0 && l <= 9, "label out of range [0,9]: " + std::to_string(l));
  for (std::size_t i = 0; i < images.size(); ++i)
    require(images[i] >= 0.0f && images[i] <= 1.0f, "pixel value outside [0,1]");
}

Dataset load_idx(const std::string& images_path, const std::string& labels_path) {
  std::ifstream fi(images_path, std::ios::binary);
  require(fi.good(), "cannot open images file: " + images_path);
  std::ifstream fl(labels_path, std::ios::binary);
  require(fl.good(), "cannot open labels file: " + labels_path);

  const std::uint32_t im = read_u32_be(fi, images_path);
  require(im == kImagesMagic,
          "wrong magic in images file " + images_path + ": expected 0x00000803, got 0x" +
              [&] { char b[16]; std::snprintf(b, sizeof b, "%08x", im); return std::string(b); }());
  const std::uint32_t n_img = read_u32_be(fi, images_path);
  const std::uint32_t rows = read_u32_be(fi, images_path);
  const std::uint32_t cols = read_u32_be(fi, images_path);
  require(rows == 28 && cols == 28, "expected 28x28 images, got " + std::to_string(rows) + "x" +
                                        std::to_string(cols));

  const std::uint32_t lm = read_u32_be(fl, labels_path);
  require(lm == kLabelsMagic,
          "wrong magic in labels file " + labels_path + ": expected 0x00000801, got 0x" +
              [&] { char b[16]; std::snprintf(b, sizeof b, "%08x", lm); return std::string(b); }());
  const std::uint32_t n_lab = read_u32_be(fl, labels_path);
  require(n_img == n_lab, "count mismatch between images (" + std::to_string(n_img) +
                              ") and labels (" + std::to_string(n_lab) + ")");

  const std::size_t px = static_cast<std::size_t>(n_img) * rows * cols;
  std::vector<std::uint8_t> raw(px);
  fi.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(px));
  require(static_cast<std::size_t>(fi.gcount()) == px, "truncated IDX file (pixels): " + images_path);

  std::vector<std::uint8_t> rawl(n_lab);
  fl.read(reinterpret_cast<char*>(rawl.data()), static_cast<std::streamsize>(n_lab));
  require(static_cast<std::size_t>(fl.gcount()) == n_lab,
          "truncated IDX file (labels): " + labels_path);

  Dataset ds;
  ds.images = Tensor({static_cast<int>(n_img), 1, 28, 28});
  for (std::size_t i = 0; i < px; ++i) ds.images[i] = static_cast<float>(raw[i]) / 255.0f;
  ds.labels.reserve(n_lab);
  for (std::uint8_t l : rawl) {
    require(l <= 9, "label byte out of range [0,9]: " + std::to_string(int(l)));
    ds.labels.push_back(static_cast<int>(l));
  }
  ds.provenance.images_path = images_path;
  ds.provenance.labels_path = labels_path;
  ds.provenance.images_sha256 = sha256_file_hex(images_path);
  ds.provenance.labels_sha256 = sha256_file_hex(labels_path);
  return ds;
}

void write_idx(const Dataset& ds, const std::string& images_path, const std::string& labels_path) {
  std::ofstream fi(images_path, std::ios::binary);
  require(fi.good(), "cannot open images file for writing: " + images_path);
  write_u32_be(fi, kImagesMagic);
  write_u32_be(fi, static_cast<std::uint32_t>(ds.size()));
  write_u32_be(fi, 28);
  write_u32_be(fi, 28);
  std::vector<std::uint8_t> raw(ds.images.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const float v = std::min(1.0f, std::max(0.0f, ds.images[i]));
    raw[i] = static_cast<std::uint8_t>(std::lround(v * 255.0f));
  }
  fi.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));

  std::ofstream fl(labels_path, std::ios::binary);
  require(fl.good(), "cannot open labels file for writing: " + labels_path);
  write_u32_be(fl, kLabelsMagic);
  write_u32_be(fl, static_cast<std::uint32_t>(ds.size()));
  for (int l : ds.labels) {
    const std::uint8_t b = static_cast<std::uint8_t>(l);
    fl.write(reinterpret_cast<const char*>(&b), 1);
  }
}

Dataset subsample(const Dataset& ds, std::size_t n, std::uint64_t seed) {
  require(n >= 1 && n <= ds.size(),
          "subsample size " + std::to_string(n) + " out of range [1," + std::to_string(ds.size()) + "]");
  std::vector<std::vector<int>> by_class(10);
  for (std::size_t i = 0; i < ds.size(); ++i)
    by_class[static_cast<std::size_t>(ds.labels[i])].push_back(static_cast<int>(i));

  // largest-remainder allocation of n across classes
  std::vector<std::size_t> want(10, 0);
  std::vector<std::pair<double, int>> frac;
  std::size_t assigned = 0;
  for (int c = 0; c < 10; ++c) {
    const double exact = static_cast<double>(n) * by_class[c].size() / ds.size();
    want[c] = static_cast<std::size_t>(exact);
    assigned += want[c];
    frac.push_back({exact - static_cast<double>(want[c]), c});
  }
  std::sort(frac.begin(), frac.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  for (std::size_t i = 0; assigned < n; ++i, ++assigned) want[frac[i % 10].second] += 1;
  // cap at availability, spill deterministically
  for (int c = 0; c < 10; ++c) {
    if (want[c] > by_class[c].size()) {
      std::size_t spill = want[c] - by_class[c].size();
      want[c] = by_class[c].size();
      for (int d = 0; d < 10 && spill > 0; ++d) {
        const std::size_t room = by_class[d].size() - want[d];
        const std::size_t add = std::min(room, spill);
        want[d] += add;
        spill -= add;
      }
    }
  }

  std::vector<int> chosen;
  chosen.reserve(n);
  for (int c = 0; c < 10; ++c) {
    Rng rng(hash_combine(seed, static_cast<std::uint64_t>(c) + 101));
    rng.shuffle(by_class[c]);
    chosen.insert(chosen.end(), by_class[c].begin(), by_class[c].begin() + static_cast<long>(want[c]));
  }
  Rng order(hash_combine(seed, 0x5b5e7ull));
  order.shuffle(chosen);
  Dataset out = ds.take(chosen);
  out.provenance.note = "subsample n=" + std::to_string(n) + " seed=" + std::to_string(seed);
  return out;
}

}  // namespace dlt
