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

enum class LayerKind : std::uint8_t { Dense = 0, Conv2d = 1, MaxPool2d = 2, Flatten = 3, Activation = 4 };
enum class ActKind : std::uint8_t { Relu = 0, Softmax = 1, Identity = 2 };

std::string layer_kind_name(LayerKind k);
std::string act_kind_name(ActKind a);

/// One network layer. Shapes exclude the batch dimension.
struct Layer {
  LayerKind kind = LayerKind::Dense;
  ActKind act = ActKind::Identity;  // Activation layers only
  int pool = 2;                     // MaxPool2d window == stride
  Tensor weights;                   // Dense [out,in]; Conv2d [oc,ic,kh,kw]
  Tensor bias;                      // [out] / [oc]
  std::vector<int> input_shape;
  std::vector<int> output_shape;

  bool has_weights() const { return kind == LayerKind::Dense || kind == LayerKind::Conv2d; }
  bool shape_preserving() const { return input_shape == output_shape; }
  std::string describe() const;
};

struct ModelMeta {
  std::string architecture;
  std::uint64_t seed = 0;
  int epochs = 0;
};

struct Model {
  std::vector<Layer> layers;
  ModelMeta meta;

  const std::vector<int>& input_shape() const { return layers.front().input_shape; }
  int num_classes() const { return layers.back().output_shape.back(); }
  std::vector<int> weighted_layers() const;
  /// Shape chaining and weight-shape invariants; throws on violation.
  void validate() const;
  std::size_t parameter_count() const;
};

/// Incrementally builds a model, inferring shapes layer by layer.
class ModelBuilder {
 public:
  explicit ModelBuilder(std::vector<int> input_shape);
  ModelBuilder& conv2d(int out_channels, int kh, int kw);
  ModelBuilder& maxpool(int k);
  ModelBuilder& flatten();
  ModelBuilder& dense(int out);
  ModelBuilder& relu();
  ModelBuilder& softmax();
  /// He-uniform init of all weights, seeded; biases zero.
  Model build(const std::string& arch_name, std::uint64_t seed);

 private:
  std::vector<int> cur_;
  std::vector<Layer> layers_;
};

/// Named architectures: "baseline_cnn", "tiny_cnn", "mlp", "linear".
Model make_architecture(const std::string& name, std::uint64_t seed);
bool is_known_architecture(const std::string& name);

// ---- forward / backward ----

/// Per-layer post-activation values for a single input, recorded for the
/// weighted (dense/conv) layers.
struct ActivationTrace {
  std::vector<int> layers;                 // weighted layer indices
  std::vector<std::vector<float>> acts;    // flattened post-activation values
  std::size_t total_units() const;
};

struct ForwardContext {
  Tensor input;
  std::vector<Tensor> outputs;             // one per layer
  std::vector<std::vector<int>> pool_argmax;
  /// Pre-softmax scores: output of the layer feeding the final softmax.
  const Tensor& logits(const Model& m) const;
};

/// Forward pass over a batch [N, ...]; returns final layer output.
Tensor forward_ctx(const Model& m, const Tensor& batch, ForwardContext& ctx);

/// Checked mode: every layer output is validated for NaN/inf during forward
/// passes (and an error names the offending layer). Off by default.
void set_checked_mode(bool on);
bool checked_mode();

struct ForwardResult {
  Tensor logits;                           // final output, [N, classes] after softmax
  std::vector<ActivationTrace> traces;     // one per batch item when traced
};
ForwardResult forward(const Model& m, const Tensor& batch, bool trace);

std::vector<ActivationTrace> extract_traces(const Model& m, const ForwardContext& ctx);

struct Gradients {
  std::vector<Tensor> w, b;                // parallel to model.layers
  void init_like(const Model& m);
};

/// Backprop from d(pre-softmax logits); fills grads (if non-null) and returns
/// d(input) when need_dx.
Tensor backward_from_logits(const Model& m, const ForwardContext& ctx, const Tensor& dlogits,
                            Gradients* grads, bool need_dx);

/// Mean cross-entropy of softmax probs against labels; writes d(logits) for
/// the mean loss into dlogits.
double ce_loss_and_dlogits(const Tensor& probs, const std::vector<int>& labels, Tensor& dlogits);

struct LossSpec {
  enum class Kind { CrossEntropy, Logit } kind = Kind::CrossEntropy;
  int index = 0;  // CE: true label; Logit: logit position
  static LossSpec ce(int label) { return {Kind::CrossEntropy, label}; }
  static LossSpec logit(int k) { return {Kind::Logit, k}; }
};

/// d loss / d x for one input ([C,H,W] or [1,C,H,W]); same shape as x.
Tensor input_gradient(const Model& m, const Tensor& x, const LossSpec& spec);

std::vector<int> predict(const Model& m, const Tensor& batch);
int predict_one(const Model& m, const Tensor& image);

}  // namespace dlt
