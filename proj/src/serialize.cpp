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

#include "dlt/serialize.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "dlt/common.hpp"

namespace dlt {

namespace {

constexpr char kMagic[4] = {'N', 'N', 'P', 'B'};
constexpr std::uint32_t kVersion = 1;

// layer kind tags on the wire
enum : std::uint8_t {
  kTagDense = 0,
  kTagConv2d = 1,
  kTagMaxPool = 2,
  kTagFlatten = 3,
  kTagRelu = 4,
  kTagSoftmax = 5,
  kTagIdentity = 6,
};

void put_u32(std::ofstream& f, std::uint32_t v) {
  std::uint8_t b[4] = {static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v >> 8),
                       static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>(v >> 24)};
  f.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ofstream& f, std::uint64_t v) {
  put_u32(f, static_cast<std::uint32_t>(v));
  put_u32(f, static_cast<std::uint32_t>(v >> 32));
}

void put_f32(std::ofstream& f, float v) { put_u32(f, std::bit_cast<std::uint32_t>(v)); }

struct Reader {
  std::ifstream f;
  std::string path;

  std::uint32_t u32() {
    std::uint8_t b[4];
    f.read(reinterpret_cast<char*>(b), 4);
    require(f.gcount() == 4, "truncated weights file: " + path);
    return std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) | (std::uint32_t(b[2]) << 16) |
           (std::uint32_t(b[3]) << 24);
  }
  std::uint64_t u64() {
    const std::uint64_t lo = u32();
    return lo | (static_cast<std::uint64_t>(u32()) << 32);
  }
  std::uint8_t u8() {
    char c;
    f.read(&c, 1);
    require(f.gcount() == 1, "truncated weights file: " + path);
    return static_cast<std::uint8_t>(c);
  }
  float f32() { return std::bit_cast<float>(u32()); }
  void floats(float* dst, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = f32();
  }
};

std::uint8_t tag_of(const Layer& l) {
  switch (l.kind) {
    case LayerKind::Dense: return kTagDense;
    case LayerKind::Conv2d: return kTagConv2d;
    case LayerKind::MaxPool2d: return kTagMaxPool;
    case LayerKind::Flatten: return kTagFlatten;
    case LayerKind::Activation:
      switch (l.act) {
        case ActKind::Relu: return kTagRelu;
        case ActKind::Softmax: return kTagSoftmax;
        case ActKind::Identity: return kTagIdentity;
      }
  }
  fail("unserializable layer kind");
}

// per-layer dim list fully determining the layer
std::vector<int> dims_of(const Layer& l) {
  switch (l.kind) {
    case LayerKind::Dense:
      return l.weights.shape();  // [out, in]
    case LayerKind::Conv2d: {
      std::vector<int> d = l.weights.shape();  // [oc, ic, kh, kw]
      d.push_back(l.input_shape[1]);
      d.push_back(l.input_shape[2]);
      return d;
    }
    case LayerKind::MaxPool2d: {
      std::vector<int> d = l.input_shape;  // [c, h, w]
      d.push_back(l.pool);
      return d;
    }
    case LayerKind::Flatten:
    case LayerKind::Activation:
      return l.input_shape;
  }
  return {};
}

}  // namespace

void save_model(const Model& m, const std::string& path) {
  m.validate();
  std::ofstream f(path, std::ios::binary);
  require(f.good(), "cannot open weights file for writing: " + path);
  f.write(kMagic, 4);
  put_u32(f, kVersion);
  put_u32(f, static_cast<std::uint32_t>(m.layers.size()));
  for (const Layer& l : m.layers) {
    const std::uint8_t tag = tag_of(l);
    f.write(reinterpret_cast<const char*>(&tag), 1);
    const std::vector<int> dims = dims_of(l);
    put_u32(f, static_cast<std::uint32_t>(dims.size()));
    for (int d : dims) put_u32(f, static_cast<std::uint32_t>(d));
    for (std::size_t i = 0; i < l.weights.size(); ++i) put_f32(f, l.weights[i]);
    for (std::size_t i = 0; i < l.bias.size(); ++i) put_f32(f, l.bias[i]);
  }
  put_u32(f, static_cast<std::uint32_t>(m.meta.architecture.size()));
  f.write(m.meta.architecture.data(), static_cast<std::streamsize>(m.meta.architecture.size()));
  put_u64(f, m.meta.seed);
  put_u32(f, static_cast<std::uint32_t>(m.meta.epochs));
  require(f.good(), "write failed: " + path);
}

Model load_model(const std::string& path) {
  Reader r;
  r.path = path;
  r.f.open(path, std::ios::binary);
  require(r.f.good(), "cannot open weights file: " + path);

  char magic[4];
  r.f.read(magic, 4);
  require(r.f.gcount() == 4, "truncated weights file: " + path);
  require(std::memcmp(magic, kMagic, 4) == 0, "bad magic in weights file: " + path);
  const std::uint32_t version = r.u32();
  require(version == kVersion, "unsupported weights file version " + std::to_string(version) +
                                   " (expected " + std::to_string(kVersion) + "): " + path);

  const std::uint32_t n_layers = r.u32();
  require(n_layers > 0 && n_layers < 10000, "implausible layer count: " + std::to_string(n_layers));

  Model m;
  std::vector<int> cur;  // running shape
  for (std::uint32_t i = 0; i < n_layers; ++i) {
    const std::uint8_t tag = r.u8();
    const std::uint32_t nd = r.u32();
    require(nd <= 8, "implausible dim count in layer " + std::to_string(i));
    std::vector<int> dims(nd);
    for (auto& d : dims) d = static_cast<int>(r.u32());

    Layer l;
    switch (tag) {
      case kTagDense: {
        require(dims.size() == 2, "dense layer needs 2 dims");
        l.kind = LayerKind::Dense;
        l.input_shape = {dims[1]};
        l.output_shape = {dims[0]};
        l.weights = Tensor({dims[0], dims[1]});
        l.bias = Tensor({dims[0]});
        break;
      }
      case kTagConv2d: {
        require(dims.size() == 6, "conv2d layer needs 6 dims");
        l.kind = LayerKind::Conv2d;
        l.input_shape = {dims[1], dims[4], dims[5]};
        l.output_shape = {dims[0], dims[4] - dims[2] + 1, dims[5] - dims[3] + 1};
        l.weights = Tensor({dims[0], dims[1], dims[2], dims[3]});
        l.bias = Tensor({dims[0]});
        break;
      }
      case kTagMaxPool: {
        require(dims.size() == 4, "maxpool layer needs 4 dims");
        l.kind = LayerKind::MaxPool2d;
        l.pool = dims[3];
        l.input_shape = {dims[0], dims[1], dims[2]};
        l.output_shape = {dims[0], dims[1] / l.pool, dims[2] / l.pool};
        break;
      }
      case kTagFlatten: {
        l.kind = LayerKind::Flatten;
        l.input_shape = dims;
        l.output_shape = {static_cast<int>(shape_numel(dims))};
        break;
      }
      case kTagRelu:
      case kTagSoftmax:
      case kTagIdentity: {
        l.kind = LayerKind::Activation;
        l.act = tag == kTagRelu ? ActKind::Relu
                                : (tag == kTagSoftmax ? ActKind::Softmax : ActKind::Identity);
        l.input_shape = dims;
        l.output_shape = dims;
        break;
      }
      default:
        fail("unknown layer tag " + std::to_string(int(tag)) + " in " + path);
    }
    require(cur.empty() || cur == l.input_shape,
            "layer " + std::to_string(i) + " does not chain in " + path);
    cur = l.output_shape;
    r.floats(l.weights.data(), l.weights.size());
    r.floats(l.bias.data(), l.bias.size());
    m.layers.push_back(std::move(l));
  }

  const std::uint32_t name_len = r.u32();
  require(name_len < 4096, "implausible architecture name length");
  std::string name(name_len, '\0');
  r.f.read(name.data(), name_len);
  require(static_cast<std::uint32_t>(r.f.gcount()) == name_len, "truncated weights file: " + path);
  m.meta.architecture = name;
  m.meta.seed = r.u64();
  m.meta.epochs = static_cast<int>(r.u32());
  m.validate();
  return m;
}

}  // namespace dlt
