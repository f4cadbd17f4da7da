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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dlt/synth.hpp"
#include "dlt/train.hpp"
#include "support.hpp"

using namespace dlt;

namespace {

TrainConfig quick_cfg(int epochs, std::uint64_t seed, const std::string& arch = "mlp") {
  TrainConfig cfg;
  cfg.epochs = epochs;
  cfg.batch_size = 16;
  cfg.learning_rate = 0.05f;
  cfg.momentum = 0.9f;
  cfg.seed = seed;
  cfg.architecture = arch;
  return cfg;
}

}  // namespace

TEST_CASE("10-sample subset is memorized after 50 epochs") {
  Dataset ds = synth_digits(10, 77);
  TrainResult r = train_new("mlp", ds, quick_cfg(50, 1));
  EvalResult ev = evaluate(r.model, ds);
  CHECK(ev.accuracy == doctest::Approx(100.0));
  CHECK(r.history.size() == 50);
}

TEST_CASE("epochs must be at least 1") {
  Dataset ds = synth_digits(10, 77);
  TrainConfig cfg = quick_cfg(0, 1);
  CHECK_THROWS_WITH_AS(train_new("mlp", ds, cfg), doctest::Contains("epochs"), Error);
}

TEST_CASE("training is reproducible: same seed and data give identical weights") {
  Dataset ds = synth_digits(60, 5);
  TrainResult a = train_new("mlp", ds, quick_cfg(3, 42));
  TrainResult b = train_new("mlp", ds, quick_cfg(3, 42));
  REQUIRE(a.model.layers.size() == b.model.layers.size());
  for (std::size_t i = 0; i < a.model.layers.size(); ++i) {
    CHECK(a.model.layers[i].weights == b.model.layers[i].weights);
    CHECK(a.model.layers[i].bias == b.model.layers[i].bias);
  }
  TrainResult c = train_new("mlp", ds, quick_cfg(3, 43));
  bool all_equal = true;
  for (std::size_t i = 0; i < a.model.layers.size(); ++i)
    all_equal = all_equal && a.model.layers[i].weights == c.model.layers[i].weights;
  CHECK_FALSE(all_equal);
}

TEST_CASE("divergent learning rate aborts with a diagnostic") {
  Dataset ds = synth_digits(40, 9);
  TrainConfig cfg = quick_cfg(8, 2);
  cfg.learning_rate = 1e6f;
  CHECK_THROWS_WITH_AS(train_new("mlp", ds, cfg), doctest::Contains("non-finite"), Error);
}

TEST_CASE("evaluate: constant model scores the class share, accuracy+error=100") {
  Dataset ds = synth_digits(200, 3);
  Model m = make_architecture("linear", 0);
  for (Layer& l : m.layers)
    for (std::size_t i = 0; i < l.weights.size(); ++i) l.weights[i] = 0.0f;
  m.layers[1].bias[7] = 5.0f;  // constant class 7
  EvalResult ev = evaluate(m, ds);
  CHECK(ev.accuracy == doctest::Approx(10.0).epsilon(0.01));
  CHECK(ev.accuracy + ev.error == doctest::Approx(100.0));
  int pred_as_7 = ev.per_class_correct[7];
  CHECK(pred_as_7 == ev.per_class_total[7]);
}

TEST_CASE("evaluate is deterministic") {
  Dataset ds = synth_digits(50, 11);
  Model m = make_architecture("mlp", 4);
  EvalResult a = evaluate(m, ds);
  EvalResult b = evaluate(m, ds);
  CHECK(a.accuracy == b.accuracy);
}

TEST_CASE("augment hook sees fresh draws per epoch and keeps determinism") {
  Dataset ds = synth_digits(30, 13);
  std::vector<std::pair<std::size_t, int>> seen;
  AugmentFn aug = [&](const Tensor& img, std::size_t idx, int epoch) {
    seen.push_back({idx, epoch});
    return img;
  };
  TrainResult r = train_new("mlp", ds, quick_cfg(2, 21), aug);
  CHECK(seen.size() == 60);  // every image, every epoch
  TrainResult plain = train_new("mlp", ds, quick_cfg(2, 21));
  for (std::size_t i = 0; i < r.model.layers.size(); ++i)
    CHECK(r.model.layers[i].weights == plain.model.layers[i].weights);
}
