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

#include <cmath>

#include "dlt/adversarial.hpp"
#include "dlt/synth.hpp"
#include "dlt/train.hpp"
#include "support.hpp"

using namespace dlt;
using test::temp_path;

namespace {

// two-logit linear model: f0 - f1 = w.x + b, class 0 iff w.x + b > 0
Model binary_linear(const std::vector<float>& w, float b) {
  Model m = ModelBuilder({1, 28, 28}).flatten().dense(2).softmax().build("bin", 0);
  Layer& d = m.layers[1];
  for (std::size_t i = 0; i < d.weights.size(); ++i) d.weights[i] = 0.0f;
  for (std::size_t i = 0; i < w.size(); ++i) d.weights.at2(0, static_cast<int>(i)) = w[i];
  d.bias[0] = b;
  return m;
}

double margin(const Model& m, const Tensor& x) {
  ForwardContext ctx;
  forward_ctx(m, x.reshaped({1, 1, 28, 28}), ctx);
  const Tensor& logits = ctx.logits(m);
  return static_cast<double>(logits.at2(0, 0)) - logits.at2(0, 1);
}

Model small_trained(std::uint64_t seed) {
  Dataset train_ds = synth_digits(400, seed);
  TrainConfig cfg;
  cfg.epochs = 3;
  cfg.batch_size = 32;
  cfg.learning_rate = 0.05f;
  cfg.seed = seed;
  cfg.architecture = "mlp";
  return train_new("mlp", train_ds, cfg).model;
}

}  // namespace

TEST_CASE("fgsm with epsilon zero is the identity and never succeeds") {
  Model m = small_trained(1);
  Tensor x = synth_digit_image(4, 9);
  AdversarialResult r = fgsm(m, x, 4, 0.0);
  CHECK(r.x_adv == x);
  CHECK_FALSE(r.success);
  CHECK(r.linf == 0.0);
}

TEST_CASE("fgsm on a binary linear model shifts the margin by exactly eps * l1(w)") {
  Rng rng(3);
  std::vector<float> w(784);
  double l1 = 0.0;
  for (auto& v : w) {
    v = rng.uniform(0.01f, 0.05f) * (rng.next_double() < 0.5 ? -1.0f : 1.0f);
    l1 += std::abs(v);
  }
  Model m = binary_linear(w, 0.05f);
  Tensor x = Tensor::full({1, 28, 28}, 0.5f);  // mid-range: no clipping binds
  const double eps = 0.05;
  const double before = margin(m, x);
  REQUIRE(before > 0.0);  // class 0 is the true label here
  AdversarialResult r = fgsm(m, x, 0, eps);
  const double after = margin(m, r.x_adv);
  CHECK(after - before == doctest::Approx(-eps * l1).epsilon(1e-4));
  CHECK(r.linf <= eps + 1e-6);
}

TEST_CASE("ifgsm with one step of size eps equals fgsm") {
  Model m = small_trained(2);
  Tensor x = synth_digit_image(7, 11);
  AdversarialResult a = fgsm(m, x, 7, 0.1);
  AdversarialResult b = ifgsm(m, x, 7, 0.1, 1, 0.1);
  CHECK(a.x_adv == b.x_adv);
  CHECK(a.success == b.success);
}

TEST_CASE("ifgsm respects the L-inf ball and the pixel box") {
  Model m = small_trained(3);
  Tensor x = synth_digit_image(2, 13);
  AdversarialResult r = ifgsm(m, x, 2, 0.15, 8, 0.04);
  CHECK(r.linf <= 0.15 + 1e-6);
  for (std::size_t i = 0; i < r.x_adv.size(); ++i) {
    CHECK(r.x_adv[i] >= 0.0f);
    CHECK(r.x_adv[i] <= 1.0f);
  }
  AdversarialResult warned = ifgsm(m, x, 2, 0.5, 2, 0.01);
  CHECK_FALSE(warned.warning.empty());
}

TEST_CASE("deepfool on a binary linear model matches the closed-form perturbation") {
  Rng rng(5);
  std::vector<float> w(784);
  double norm2 = 0.0;
  for (auto& v : w) {
    v = rng.uniform(-1.0f, 1.0f);
    norm2 += static_cast<double>(v) * v;
  }
  // keep ||w|| large so the 1e-4 stabilizer stays below the 1e-5 tolerance
  const double norm = std::sqrt(norm2);
  for (auto& v : w) v = static_cast<float>(v / norm * 20.0);

  Model probe = binary_linear(w, 0.4f);
  Tensor x = Tensor::full({1, 28, 28}, 0.5f);
  if (margin(probe, x) < 0.0)
    for (auto& v : w) v = -v;  // orient the plane so x sits on the class-0 side
  Model m = binary_linear(w, 0.4f);
  const double f = margin(m, x);
  REQUIRE(f > 0.0);

  AdversarialResult r = deepfool(m, x, 10, 0.0);
  // analytic distance to the hyperplane w.x + b = 0
  const double want = std::abs(f) / 20.0;
  CHECK(r.l2 == doctest::Approx(want).epsilon(2e-4));
  CHECK(r.iterations >= 1);
  // the perturbation points along -w
  double dot = 0.0, pmag = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = static_cast<double>(r.x_adv[i]) - x[i];
    dot += d * w[i];
    pmag += d * d;
  }
  CHECK(dot / (std::sqrt(pmag) * 20.0) == doctest::Approx(-1.0).epsilon(1e-4));
}

TEST_CASE("deepfool succeeds with overshoot and reports smaller L2 than fgsm") {
  Model m = small_trained(4);
  Dataset probe = synth_digits(30, 21);
  int df_success = 0, both = 0, df_smaller = 0;
  for (std::size_t i = 0; i < probe.size(); ++i) {
    AdversarialResult df = deepfool(m, probe.image(i), 50, 0.02);
    AdversarialResult fg = fgsm(m, probe.image(i), probe.labels[i], 0.2);
    df_success += df.success ? 1 : 0;
    if (df.success && fg.success) {
      ++both;
      df_smaller += df.l2 < fg.l2 ? 1 : 0;
    }
  }
  CHECK(df_success > 20);  // minimal-perturbation search rarely fails outright
  if (both > 0) CHECK(static_cast<double>(df_smaller) / both >= 0.7);
}

TEST_CASE("iterated attacks succeed at least as often as single-step ones") {
  Model m = small_trained(9);
  Dataset probe = synth_digits(40, 27);
  int fg = 0, it = 0;
  for (std::size_t i = 0; i < probe.size(); ++i) {
    fg += fgsm(m, probe.image(i), probe.labels[i], 0.15).success ? 1 : 0;
    it += ifgsm(m, probe.image(i), probe.labels[i], 0.15, 10, 0.03).success ? 1 : 0;
  }
  CHECK(it >= fg);
}

TEST_CASE("deepfool rejects max_iter below one") {
  Model m = small_trained(5);
  CHECK_THROWS_AS(deepfool(m, synth_digit_image(1, 2), 0, 0.02), Error);
}

TEST_CASE("robustness curve starts at the clean accuracy and constant models stay flat") {
  Model m = small_trained(6);
  Dataset subset = synth_digits(40, 23);
  const auto curve = robustness_curve(m, subset, AttackKind::Fgsm, {0.0, 0.1, 0.3});
  CHECK(curve[0].second == evaluate(m, subset).accuracy);
  CHECK(curve[0].first == 0.0);

  Model con = make_architecture("linear", 0);
  for (Layer& l : con.layers)
    for (std::size_t i = 0; i < l.weights.size(); ++i) l.weights[i] = 0.0f;
  con.layers[1].bias[3] = 2.0f;
  const auto flat = robustness_curve(con, subset, AttackKind::Fgsm, {0.0, 0.1, 0.3});
  CHECK(flat[0].second == flat[1].second);
  CHECK(flat[1].second == flat[2].second);

  CHECK_THROWS_AS(robustness_curve(m, subset, AttackKind::Fgsm, {0.1, 0.2}), Error);
}

TEST_CASE("adversarial corpus round-trips") {
  std::vector<AdvRecord> recs(3);
  Rng rng(7);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    recs[i].input_id = static_cast<std::uint32_t>(i * 10);
    recs[i].eps = 0.2f;
    recs[i].success = i % 2;
    recs[i].pixels.resize(784);
    for (auto& p : recs[i].pixels) p = rng.uniform(0.0f, 1.0f);
  }
  const std::string path = temp_path("adv.bin");
  write_adv_corpus(path, recs);
  const auto back = read_adv_corpus(path);
  REQUIRE(back.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(back[i].input_id == recs[i].input_id);
    CHECK(back[i].success == recs[i].success);
    CHECK(back[i].pixels == recs[i].pixels);
  }
}

TEST_CASE("success implies the label changed under the same model") {
  Model m = small_trained(8);
  Dataset probe = synth_digits(20, 25);
  for (std::size_t i = 0; i < probe.size(); ++i) {
    AdversarialResult r = fgsm(m, probe.image(i), probe.labels[i], 0.25);
    CHECK(r.success == (r.label_adv != r.label_orig));
    CHECK(r.label_orig == predict_one(m, probe.image(i)));
  }
}
