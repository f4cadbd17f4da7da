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

#include "dlt/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dlt/kernels.hpp"

namespace dlt {

std::string layer_kind_name(LayerKind k) {
  switch (k) {
    case LayerKind::Dense: return "dense";
    case LayerKind::Conv2d: return "conv2d";
    case LayerKind::MaxPool2d: return "maxpool2d";
    case LayerKind::Flatten: return "flatten";
    case LayerKind::Activation: return "activation";
  }
  return "?";
}

std::string act_kind_name(ActKind a) {
  switch (a) {
    case ActKind::Relu: return "relu";
    case ActKind::Softmax: return "softmax";
    case ActKind::Identity: return "identity";
  }
  return "?";
}

std::string Layer::describe() const {
  std::string s = layer_kind_name(kind);
  if (kind == LayerKind::Activation) s += "(" + act_kind_name(act) + ")";
  return s + " " + shape_to_string(input_shape) + "->" + shape_to_string(output_shape);
}

std::vector<int> Model::weighted_layers() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < layers.size(); ++i)
    if (layers[i].has_weights()) out.push_back(static_cast<int>(i));
  return out;
}

void Model::validate() const {
  require(!layers.empty(), "model has no layers");
  for (std::size_t i = 0; i + 1 < layers.size(); ++i) {
    require(layers[i].output_shape == layers[i + 1].input_shape,
            "layer " + std::to_string(i) + " output " + shape_to_string(layers[i].output_shape) +
                " does not chain into layer " + std::to_string(i + 1) + " input " +
                shape_to_string(layers[i + 1].input_shape));
  }
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const Layer& l = layers[i];
    if (l.kind == LayerKind::Dense) {
      require(l.weights.rank() == 2 && l.weights.dim(0) == l.output_shape.back() &&
                  l.weights.dim(1) == l.input_shape.back(),
              "dense layer " + std::to_string(i) + " weight shape mismatch");
    } else if (l.kind == LayerKind::Conv2d) {
      require(l.weights.rank() == 4 && l.weights.dim(0) == l.output_shape[0] &&
                  l.weights.dim(1) == l.input_shape[0],
              "conv layer " + std::to_string(i) + " weight shape mismatch");
    }
  }
}

std::size_t Model::parameter_count() const {
  std::size_t n = 0;
  for (const Layer& l : layers) n += l.weights.size() + l.bias.size();
  return n;
}

ModelBuilder::ModelBuilder(std::vector<int> input_shape) : cur_(std::move(input_shape)) {}

ModelBuilder& ModelBuilder::conv2d(int oc, int kh, int kw) {
  require(cur_.size() == 3, "conv2d needs [C,H,W] input, got " + shape_to_string(cur_));
  require(cur_[1] >= kh && cur_[2] >= kw, "conv2d kernel larger than input");
  Layer l;
  l.kind = LayerKind::Conv2d;
  l.input_shape = cur_;
  l.output_shape = {oc, cur_[1] - kh + 1, cur_[2] - kw + 1};
  l.weights = Tensor({oc, cur_[0], kh, kw});
  l.bias = Tensor({oc});
  layers_.push_back(std::move(l));
  cur_ = layers_.back().output_shape;
  return *this;
}

ModelBuilder& ModelBuilder::maxpool(int k) {
  require(cur_.size() == 3, "maxpool needs [C,H,W] input");
  Layer l;
  l.kind = LayerKind::MaxPool2d;
  l.pool = k;
  l.input_shape = cur_;
  l.output_shape = {cur_[0], cur_[1] / k, cur_[2] / k};
  layers_.push_back(std::move(l));
  cur_ = layers_.back().output_shape;
  return *this;
}

ModelBuilder& ModelBuilder::flatten() {
  Layer l;
  l.kind = LayerKind::Flatten;
  l.input_shape = cur_;
  l.output_shape = {static_cast<int>(shape_numel(cur_))};
  layers_.push_back(std::move(l));
  cur_ = layers_.back().output_shape;
  return *this;
}

ModelBuilder& ModelBuilder::dense(int out) {
  require(cur_.size() == 1, "dense needs flat input, got " + shape_to_string(cur_));
  Layer l;
  l.kind = LayerKind::Dense;
  l.input_shape = cur_;
  l.output_shape = {out};
  l.weights = Tensor({out, cur_[0]});
  l.bias = Tensor({out});
  layers_.push_back(std::move(l));
  cur_ = layers_.back().output_shape;
  return *this;
}

ModelBuilder& ModelBuilder::relu() {
  Layer l;
  l.kind = LayerKind::Activation;
  l.act = ActKind::Relu;
  l.input_shape = cur_;
  l.output_shape = cur_;
  layers_.push_back(std::move(l));
  return *this;
}

ModelBuilder& ModelBuilder::softmax() {
  require(cur_.size() == 1, "softmax needs flat input");
  Layer l;
  l.kind = LayerKind::Activation;
  l.act = ActKind::Softmax;
  l.input_shape = cur_;
  l.output_shape = cur_;
  layers_.push_back(std::move(l));
  return *this;
}

Model ModelBuilder::build(const std::string& arch_name, std::uint64_t seed) {
  Model m;
  m.layers = layers_;
  m.meta.architecture = arch_name;
  m.meta.seed = seed;
  for (std::size_t i = 0; i < m.layers.size(); ++i) {
    Layer& l = m.layers[i];
    if (!l.has_weights()) continue;
    int fan_in = l.kind == LayerKind::Dense
                     ? l.input_shape.back()
                     : l.input_shape[0] * l.weights.dim(2) * l.weights.dim(3);
    const float limit = std::sqrt(6.0f / static_cast<float>(fan_in));
    Rng rng(hash_combine(seed, i));
    for (std::size_t j = 0; j < l.weights.size(); ++j) l.weights[j] = rng.uniform(-limit, limit);
  }
  m.validate();
  return m;
}

Model make_architecture(const std::string& name, std::uint64_t seed) {
  if (name == "baseline_cnn") {
    // compact on purpose: individual neurons carry enough function that
    // model-level mutation operators produce measurable damage, as they do
    // on classic small digit classifiers
    return ModelBuilder({1, 28, 28})
        .conv2d(8, 3, 3).relu().maxpool(2)
        .conv2d(16, 3, 3).relu().maxpool(2)
        .flatten()
        .dense(84).relu()
        .dense(84).relu()
        .dense(10).softmax()
        .build(name, seed);
  }
  if (name == "wide_cnn") {
    return ModelBuilder({1, 28, 28})
        .conv2d(32, 3, 3).relu().maxpool(2)
        .conv2d(64, 3, 3).relu().maxpool(2)
        .flatten()
        .dense(128).relu()
        .dense(128).relu()
        .dense(10).softmax()
        .build(name, seed);
  }
  if (name == "tiny_cnn") {
    return ModelBuilder({1, 28, 28})
        .conv2d(8, 3, 3).relu().maxpool(2)
        .flatten()
        .dense(10).softmax()
        .build(name, seed);
  }
  if (name == "mlp") {
    return ModelBuilder({1, 28, 28})
        .flatten()
        .dense(128).relu()
        .dense(10).softmax()
        .build(name, seed);
  }
  if (name == "linear") {
    return ModelBuilder({1, 28, 28}).flatten().dense(10).softmax().build(name, seed);
  }
  fail("unknown architecture '" + name + "'");
}

bool is_known_architecture(const std::string& name) {
  return name == "baseline_cnn" || name == "wide_cnn" || name == "tiny_cnn" || name == "mlp" || name == "linear";
}

std::size_t ActivationTrace::total_units() const {
  std::size_t n = 0;
  for (const auto& a : acts) n += a.size();
  return n;
}

const Tensor& ForwardContext::logits(const Model& m) const {
  const Layer& last = m.layers.back();
  if (last.kind == LayerKind::Activation && last.act == ActKind::Softmax && outputs.size() >= 2)
    return outputs[outputs.size() - 2];
  return outputs.back();
}

namespace {

std::vector<int> batched(int n, const std::vector<int>& shape) {
  std::vector<int> s;
  s.reserve(shape.size() + 1);
  s.push_back(n);
  s.insert(s.end(), shape.begin(), shape.end());
  return s;
}

void check_batch_shape(const Tensor& batch, const std::vector<int>& expect, std::size_t layer_idx) {
  bool ok = batch.rank() == static_cast<int>(expect.size()) + 1;
  if (ok)
    for (std::size_t i = 0; i < expect.size(); ++i)
      ok = ok && batch.dim(static_cast<int>(i) + 1) == expect[i];
  require(ok, "layer " + std::to_string(layer_idx) + ": input shape " + batch.shape_str() +
                  " does not match expected [N]+" + shape_to_string(expect));
}

}  // namespace

namespace {
bool g_checked_mode = false;
}  // namespace

void set_checked_mode(bool on) { g_checked_mode = on; }
bool checked_mode() { return g_checked_mode; }

Tensor forward_ctx(const Model& m, const Tensor& batch, ForwardContext& ctx) {
  require(!m.layers.empty(), "empty model");
  check_batch_shape(batch, m.input_shape(), 0);
  const int n = batch.dim(0);
  ctx.input = batch;
  ctx.outputs.assign(m.layers.size(), Tensor());
  ctx.pool_argmax.assign(m.layers.size(), {});

  const Tensor* x = &ctx.input;
  for (std::size_t i = 0; i < m.layers.size(); ++i) {
    const Layer& l = m.layers[i];
    check_batch_shape(*x, l.input_shape, i);
    Tensor y(batched(n, l.output_shape));
    switch (l.kind) {
      case LayerKind::Dense:
        kernels::dense_forward(x->data(), n, l.input_shape[0], l.weights.data(),
                               l.output_shape[0], l.bias.data(), y.data());
        break;
      case LayerKind::Conv2d:
        kernels::conv2d_forward(x->data(), n, l.input_shape[0], l.input_shape[1],
                                l.input_shape[2], l.weights.data(), l.output_shape[0],
                                l.weights.dim(2), l.weights.dim(3), l.bias.data(), y.data());
        break;
      case LayerKind::MaxPool2d: {
        ctx.pool_argmax[i].resize(y.size());
        kernels::maxpool_forward(x->data(), n, l.input_shape[0], l.input_shape[1],
                                 l.input_shape[2], l.pool, y.data(), ctx.pool_argmax[i].data());
        break;
      }
      case LayerKind::Flatten:
        y = x->reshaped(batched(n, l.output_shape));
        break;
      case LayerKind::Activation:
        switch (l.act) {
          case ActKind::Relu:
            kernels::relu_forward(x->data(), x->size(), y.data());
            break;
          case ActKind::Softmax:
            kernels::softmax_forward(x->data(), n, l.output_shape.back(), y.data());
            break;
          case ActKind::Identity:
            y = *x;
            break;
        }
        break;
    }
    if (g_checked_mode)
      require(y.all_finite(), "layer " + std::to_string(i) + " (" + l.describe() +
                                  ") produced a non-finite value");
    ctx.outputs[i] = std::move(y);
    x = &ctx.outputs[i];
  }
  return ctx.outputs.back();
}

std::vector<ActivationTrace> extract_traces(const Model& m, const ForwardContext& ctx) {
  const int n = ctx.input.dim(0);
  std::vector<int> wl = m.weighted_layers();
  std::vector<ActivationTrace> traces(static_cast<std::size_t>(n));
  for (auto& t : traces) t.layers = wl;
  for (int li : wl) {
    // post-activation: the following Activation layer's output when present
    std::size_t src = static_cast<std::size_t>(li);
    if (src + 1 < m.layers.size() && m.layers[src + 1].kind == LayerKind::Activation)
      src += 1;
    const Tensor& out = ctx.outputs[src];
    const std::size_t per = out.size() / static_cast<std::size_t>(n);
    for (int s = 0; s < n; ++s) {
      const float* base = out.data() + static_cast<std::size_t>(s) * per;
      traces[static_cast<std::size_t>(s)].acts.emplace_back(base, base + per);
    }
  }
  return traces;
}

ForwardResult forward(const Model& m, const Tensor& batch, bool trace) {
  ForwardContext ctx;
  ForwardResult r;
  r.logits = forward_ctx(m, batch, ctx);
  if (trace) r.traces = extract_traces(m, ctx);
  return r;
}

void Gradients::init_like(const Model& m) {
  w.assign(m.layers.size(), Tensor());
  b.assign(m.layers.size(), Tensor());
  for (std::size_t i = 0; i < m.layers.size(); ++i) {
    if (m.layers[i].has_weights()) {
      w[i] = Tensor(m.layers[i].weights.shape());
      b[i] = Tensor(m.layers[i].bias.shape());
    }
  }
}

Tensor backward_from_logits(const Model& m, const ForwardContext& ctx, const Tensor& dlogits,
                            Gradients* grads, bool need_dx) {
  const int n = ctx.input.dim(0);
  int start = static_cast<int>(m.layers.size()) - 1;
  const Layer& last = m.layers.back();
  if (last.kind == LayerKind::Activation && last.act == ActKind::Softmax) start -= 1;

  Tensor dout = dlogits;
  for (int i = start; i >= 0; --i) {
    const Layer& l = m.layers[static_cast<std::size_t>(i)];
    const Tensor& x = i == 0 ? ctx.input : ctx.outputs[static_cast<std::size_t>(i - 1)];
    const bool want_dx = need_dx || i > 0;
    Tensor din;
    if (want_dx && l.kind != LayerKind::Flatten) din = Tensor(x.shape());
    switch (l.kind) {
      case LayerKind::Dense:
        kernels::dense_backward(x.data(), n, l.input_shape[0], l.weights.data(),
                                l.output_shape[0], dout.data(), want_dx ? din.data() : nullptr,
                                grads ? grads->w[static_cast<std::size_t>(i)].data() : nullptr,
                                grads ? grads->b[static_cast<std::size_t>(i)].data() : nullptr);
        break;
      case LayerKind::Conv2d:
        kernels::conv2d_backward(x.data(), n, l.input_shape[0], l.input_shape[1], l.input_shape[2],
                                 l.weights.data(), l.output_shape[0], l.weights.dim(2),
                                 l.weights.dim(3), dout.data(), want_dx ? din.data() : nullptr,
                                 grads ? grads->w[static_cast<std::size_t>(i)].data() : nullptr,
                                 grads ? grads->b[static_cast<std::size_t>(i)].data() : nullptr);
        break;
      case LayerKind::MaxPool2d:
        if (want_dx)
          kernels::maxpool_backward(dout.data(), ctx.pool_argmax[static_cast<std::size_t>(i)].data(),
                                    dout.size(), din.data());
        break;
      case LayerKind::Flatten:
        if (want_dx) din = dout.reshaped(x.shape());
        break;
      case LayerKind::Activation:
        if (want_dx) {
          switch (l.act) {
            case ActKind::Relu:
              kernels::relu_backward(x.data(), dout.data(), x.size(), din.data());
              break;
            case ActKind::Softmax:
              kernels::softmax_backward(ctx.outputs[static_cast<std::size_t>(i)].data(),
                                        dout.data(), n, l.output_shape.back(), din.data());
              break;
            case ActKind::Identity:
              din = dout;
              break;
          }
        }
        break;
    }
    if (!want_dx) return Tensor();
    dout = std::move(din);
  }
  return dout;
}

double ce_loss_and_dlogits(const Tensor& probs, const std::vector<int>& labels, Tensor& dlogits) {
  const int n = probs.dim(0);
  const int c = probs.dim(1);
  require(static_cast<std::size_t>(n) == labels.size(), "probs/labels count mismatch");
  dlogits = probs;
  double loss = 0.0;
  const float inv_n = 1.0f / static_cast<float>(n);
  for (int i = 0; i < n; ++i) {
    const int y = labels[static_cast<std::size_t>(i)];
    require(y >= 0 && y < c, "label " + std::to_string(y) + " out of range");
    // no clamp: a vanished or non-finite probability must surface as a
    // non-finite loss so training divergence is caught
    loss -= std::log(static_cast<double>(probs.at2(i, y)));
    dlogits.at2(i, y) -= 1.0f;
  }
  for (std::size_t j = 0; j < dlogits.size(); ++j) dlogits[j] *= inv_n;
  return loss / n;
}

Tensor input_gradient(const Model& m, const Tensor& x, const LossSpec& spec) {
  Tensor batch = x;
  const auto& in_shape = m.input_shape();
  if (x.rank() == static_cast<int>(in_shape.size()))
    batch = x.reshaped(batched(1, in_shape));
  ForwardContext ctx;
  Tensor probs = forward_ctx(m, batch, ctx);
  const Tensor& logits = ctx.logits(m);
  const int c = logits.dim(1);
  Tensor dlogits({1, c});
  if (spec.kind == LossSpec::Kind::CrossEntropy) {
    require(spec.index >= 0 && spec.index < c, "loss label out of range");
    const Layer& lastl = m.layers.back();
    Tensor p = probs;
    if (!(lastl.kind == LayerKind::Activation && lastl.act == ActKind::Softmax)) {
      p = Tensor({1, c});
      kernels::softmax_forward(logits.data(), 1, c, p.data());
    }
    for (int j = 0; j < c; ++j) dlogits.at2(0, j) = p.at2(0, j);
    dlogits.at2(0, spec.index) -= 1.0f;
  } else {
    require(spec.index >= 0 && spec.index < c, "logit index out of range");
    dlogits.at2(0, spec.index) = 1.0f;
  }
  Tensor dx = backward_from_logits(m, ctx, dlogits, nullptr, true);
  return x.rank() == dx.rank() ? dx : dx.reshaped(x.shape());
}

std::vector<int> predict(const Model& m, const Tensor& batch) {
  ForwardContext ctx;
  Tensor out = forward_ctx(m, batch, ctx);
  const int n = out.dim(0);
  const int c = out.dim(1);
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    int best = 0;
    for (int j = 1; j < c; ++j)
      if (out.at2(i, j) > out.at2(i, best)) best = j;
    labels[static_cast<std::size_t>(i)] = best;
  }
  return labels;
}

int predict_one(const Model& m, const Tensor& image) {
  Tensor batch = image;
  if (image.rank() == static_cast<int>(m.input_shape().size()))
    batch = image.reshaped(batched(1, m.input_shape()));
  return predict(m, batch)[0];
}

}  // namespace dlt
