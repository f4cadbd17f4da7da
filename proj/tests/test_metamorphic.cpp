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

#include "dlt/metamorphic.hpp"
#include "dlt/synth.hpp"
#include "support.hpp"

using namespace dlt;
using test::temp_path;

namespace {

TrainConfig mt_cfg(std::uint64_t seed) {
  TrainConfig cfg;
  cfg.epochs = 3;
  cfg.batch_size = 32;
  cfg.learning_rate = 0.05f;
  cfg.seed = seed;
  cfg.architecture = "mlp";
  return cfg;
}

Model constant_model(int cls) {
  Model m = make_architecture("linear", 0);
  for (Layer& l : m.layers)
    for (std::size_t i = 0; i < l.weights.size(); ++i) l.weights[i] = 0.0f;
  m.layers[1].bias[static_cast<std::size_t>(cls)] = 3.0f;
  return m;
}

}  // namespace

TEST_CASE("without_aug ignores the transforms argument") {
  Dataset train_ds = synth_digits(300, 1);
  Dataset test_ds = synth_digits(150, 2);
  MtResult plain = run_mt(mt_cfg(5), train_ds, test_ds, {}, Regime::WithoutAug);
  MtResult with_mrs =
      run_mt(mt_cfg(5), train_ds, test_ds, {rotation(60)}, Regime::WithoutAug);
  CHECK(plain.accuracy == with_mrs.accuracy);
  CHECK(plain.mr_config == "none");
}

TEST_CASE("augmented regimes require a transform list") {
  Dataset train_ds = synth_digits(50, 1);
  Dataset test_ds = synth_digits(50, 2);
  CHECK_THROWS_AS(run_mt(mt_cfg(1), train_ds, test_ds, {}, Regime::TestAugOnly), Error);
  CHECK_THROWS_AS(run_mt(mt_cfg(1), train_ds, test_ds, {}, Regime::TrainAndTestAug), Error);
}

TEST_CASE("test-side augmentation is a fixed seeded set; accuracy+error=100") {
  Dataset ds = synth_digits(80, 3);
  Dataset a = augment_dataset(ds, {rotation(45)}, 7);
  Dataset b = augment_dataset(ds, {rotation(45)}, 7);
  CHECK(a.images == b.images);
  Dataset c = augment_dataset(ds, {rotation(45)}, 8);
  CHECK_FALSE(a.images == c.images);

  Dataset train_ds = synth_digits(300, 1);
  MtResult r = run_mt(mt_cfg(5), train_ds, ds, {rotation(45)}, Regime::TestAugOnly);
  CHECK(r.accuracy + r.error == doctest::Approx(100.0));
  CHECK(r.mr_config == "rotation_45");
}

TEST_CASE("train-and-test augmentation recovers accuracy lost to test-only augmentation") {
  Dataset train_ds = synth_digits(600, 11);
  Dataset test_ds = synth_digits(300, 12);
  const std::vector<TransformSpec> mrs = {rotation(60)};
  MtResult test_only = run_mt(mt_cfg(3), train_ds, test_ds, mrs, Regime::TestAugOnly);
  MtResult both = run_mt(mt_cfg(3), train_ds, test_ds, mrs, Regime::TrainAndTestAug);
  CHECK(both.accuracy >= test_only.accuracy);
}

TEST_CASE("identity transform never violates; constant model never violates") {
  Dataset ds = synth_digits(40, 5);
  Dataset train_ds = synth_digits(200, 6);
  TrainResult tr = train_new("mlp", train_ds, mt_cfg(2));

  TransformSpec id = compose({});
  for (std::size_t i = 0; i < 10; ++i) {
    MrCheck c = check_mr(tr.model, ds.image(i), id, i);
    CHECK_FALSE(c.violation);
    CHECK(c.label_orig == c.label_transformed);
  }
  CHECK(mr_violation_rate(tr.model, ds, id, 1) == 0.0);

  Model con = constant_model(4);
  CHECK(mr_violation_rate(con, ds, rotation(90), 1) == 0.0);
  MrCheck c = check_mr(con, ds.image(0), rotation(90), 3);
  CHECK_FALSE(c.violation);
}

TEST_CASE("hflip violation check returns both labels") {
  Dataset train_ds = synth_digits(400, 7);
  TrainResult tr = train_new("mlp", train_ds, mt_cfg(3));
  Dataset probe = synth_digits(60, 8);
  int violations = 0;
  for (std::size_t i = 0; i < probe.size(); ++i) {
    MrCheck c = check_mr(tr.model, probe.image(i), hflip_spec(), i);
    CHECK(c.violation == (c.label_orig != c.label_transformed));
    violations += c.violation ? 1 : 0;
  }
  // horizontal flips change most digit shapes; some predictions must move
  CHECK(violations > 0);
}

TEST_CASE("violation rate under wide rotation exceeds narrow rotation") {
  Dataset train_ds = synth_digits(600, 9);
  Dataset probe = synth_digits(200, 10);
  TrainResult tr = train_new("mlp", train_ds, mt_cfg(4));
  const double narrow = mr_violation_rate(tr.model, probe, rotation(20), 2);
  const double wide = mr_violation_rate(tr.model, probe, rotation(110), 2);
  CHECK(wide >= narrow);
}

TEST_CASE("model cache reuses a finished training") {
  Dataset train_ds = synth_digits(150, 13);
  Dataset test_ds = synth_digits(80, 14);
  const std::string dir = temp_path("mtcache");
  std::filesystem::remove_all(dir);
  ModelCache cache(dir);
  MtResult a = run_mt(mt_cfg(6), train_ds, test_ds, {shift(0.2f, 0.2f)}, Regime::TestAugOnly, &cache);
  std::size_t files = 0;
  for ([[maybe_unused]] auto& e : std::filesystem::directory_iterator(dir)) files++;
  CHECK(files == 2);  // weights + key sidecar
  MtResult b = run_mt(mt_cfg(6), train_ds, test_ds, {shift(0.2f, 0.2f)}, Regime::TestAugOnly, &cache);
  CHECK(a.accuracy == b.accuracy);
}

TEST_CASE("regime names round-trip") {
  for (Regime r : {Regime::WithoutAug, Regime::TrainAugOnly, Regime::TestAugOnly,
                   Regime::TrainAndTestAug})
    CHECK(regime_from_name(regime_name(r)) == r);
  CHECK_THROWS_AS(regime_from_name("nope"), Error);
}
