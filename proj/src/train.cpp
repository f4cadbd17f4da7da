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

#include "dlt/train.hpp"

#include <cmath>
#include <cstring>
#include <sstream>

namespace dlt {

void TrainConfig::validate() const {
  require(epochs >= 1, "epochs must be >= 1, got " + std::to_string(epochs));
  require(batch_size >= 1, "batch_size must be >= 1");
  require(learning_rate > 0.0f, "learning_rate must be > 0");
  require(momentum >= 0.0f && momentum < 1.0f, "momentum must be in [0,1)");
}

std::string TrainConfig::to_json() const {
  std::ostringstream os;
  os << "{\"epochs\":" << epochs << ",\"batch_size\":" << batch_size
     << ",\"learning_rate\":" << learning_rate << ",\"momentum\":" << momentum
     << ",\"seed\":" << seed << ",\"architecture\":\"" << architecture << "\"}";
  return os.str();
}

TrainResult train(Model model, const Dataset& train_set, const TrainConfig& config,
                  const AugmentFn& augment) {
  config.validate();
  require(train_set.size() > 0, "training set is empty");
  train_set.validate();
  model.validate();

  const int n = static_cast<int>(train_set.size());
  const int bs = config.batch_size;
  const std::size_t img_px = 28 * 28;

  Gradients grads, velocity;
  grads.init_like(model);
  velocity.init_like(model);

  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;

  TrainResult result;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    Rng shuffle_rng(hash_combine(config.seed, 0xe90c000ull + static_cast<std::uint64_t>(epoch)));
    shuffle_rng.shuffle(order);

    double loss_sum = 0.0;
    long correct = 0;
    for (int start = 0; start < n; start += bs) {
      const int b = std::min(bs, n - start);
      Tensor batch({b, 1, 28, 28});
      std::vector<int> labels(static_cast<std::size_t>(b));
      for (int k = 0; k < b; ++k) {
        const int idx = order[static_cast<std::size_t>(start + k)];
        labels[static_cast<std::size_t>(k)] = train_set.labels[static_cast<std::size_t>(idx)];
        if (augment) {
          Tensor img = augment(train_set.image(static_cast<std::size_t>(idx)),
                               static_cast<std::size_t>(idx), epoch);
          std::memcpy(batch.data() + static_cast<std::size_t>(k) * img_px, img.data(),
                      img_px * sizeof(float));
        } else {
          std::memcpy(batch.data() + static_cast<std::size_t>(k) * img_px,
                      train_set.images.data() + static_cast<std::size_t>(idx) * img_px,
                      img_px * sizeof(float));
        }
      }

      ForwardContext ctx;
      Tensor probs = forward_ctx(model, batch, ctx);
      Tensor dlogits;
      const double loss = ce_loss_and_dlogits(probs, labels, dlogits);
      if (!std::isfinite(loss))
        fail("training diverged: non-finite loss at epoch " + std::to_string(epoch + 1) +
             " (try a lower learning rate)");
      loss_sum += loss * b;
      for (int k = 0; k < b; ++k) {
        int best = 0;
        for (int j = 1; j < probs.dim(1); ++j)
          if (probs.at2(k, j) > probs.at2(k, best)) best = j;
        if (best == labels[static_cast<std::size_t>(k)]) ++correct;
      }

      backward_from_logits(model, ctx, dlogits, &grads, false);

      for (std::size_t li = 0; li < model.layers.size(); ++li) {
        Layer& l = model.layers[li];
        if (!l.has_weights()) continue;
        float* w = l.weights.data();
        float* bw = l.bias.data();
        float* gw = grads.w[li].data();
        float* gb = grads.b[li].data();
        float* vw = velocity.w[li].data();
        float* vb = velocity.b[li].data();
        const float lr = config.learning_rate;
        const float mu = config.momentum;
        for (std::size_t j = 0; j < l.weights.size(); ++j) {
          vw[j] = mu * vw[j] - lr * gw[j];
          w[j] += vw[j];
        }
        for (std::size_t j = 0; j < l.bias.size(); ++j) {
          vb[j] = mu * vb[j] - lr * gb[j];
          bw[j] += vb[j];
        }
      }
    }
    result.history.push_back(
        {loss_sum / n, 100.0 * static_cast<double>(correct) / static_cast<double>(n)});
  }

  model.meta.epochs += config.epochs;
  model.meta.seed = config.seed;
  result.model = std::move(model);
  return result;
}

TrainResult train_new(const std::string& architecture, const Dataset& train_set,
                      const TrainConfig& config, const AugmentFn& augment) {
  Model m = make_architecture(architecture, config.seed);
  return train(std::move(m), train_set, config, augment);
}

EvalResult evaluate(const Model& m, const Dataset& test_set) {
  require(test_set.size() > 0, "test set is empty");
  EvalResult r;
  r.count = test_set.size();
  const std::vector<int> pred = predict_dataset(m, test_set);
  long correct = 0;
  for (std::size_t i = 0; i < test_set.size(); ++i) {
    const int y = test_set.labels[i];
    r.per_class_total[static_cast<std::size_t>(y)] += 1;
    if (pred[i] == y) {
      correct += 1;
      r.per_class_correct[static_cast<std::size_t>(y)] += 1;
    }
  }
  r.accuracy = 100.0 * static_cast<double>(correct) / static_cast<double>(test_set.size());
  r.error = 100.0 - r.accuracy;
  return r;
}

std::vector<int> predict_dataset(const Model& m, const Dataset& ds) {
  const int n = static_cast<int>(ds.size());
  constexpr int kBatch = 256;
  std::vector<int> out;
  out.reserve(ds.size());
  std::vector<int> idx(kBatch);
  for (int start = 0; start < n; start += kBatch) {
    const int b = std::min(kBatch, n - start);
    idx.resize(static_cast<std::size_t>(b));
    for (int k = 0; k < b; ++k) idx[static_cast<std::size_t>(k)] = start + k;
    const std::vector<int> labels = predict(m, ds.gather(idx));
    out.insert(out.end(), labels.begin(), labels.end());
  }
  return out;
}

Tensor predict_probs(const Model& m, const Dataset& ds) {
  const int n = static_cast<int>(ds.size());
  const int c = m.num_classes();
  Tensor probs({n, c});
  constexpr int kBatch = 256;
  std::vector<int> idx;
  for (int start = 0; start < n; start += kBatch) {
    const int b = std::min(kBatch, n - start);
    idx.resize(static_cast<std::size_t>(b));
    for (int k = 0; k < b; ++k) idx[static_cast<std::size_t>(k)] = start + k;
    ForwardContext ctx;
    Tensor p = forward_ctx(m, ds.gather(idx), ctx);
    std::memcpy(probs.data() + static_cast<std::size_t>(start) * c, p.data(),
                static_cast<std::size_t>(b) * c * sizeof(float));
  }
  return probs;
}

}  // namespace dlt
