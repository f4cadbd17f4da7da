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

#include "dlt/metamorphic.hpp"

#include <cstring>

namespace dlt {

namespace {
constexpr std::uint64_t kTestAugSalt = 0x7e57a06ull;
constexpr std::uint64_t kTrainAugSalt = 0x7ea10a06ull;
}  // namespace

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::WithoutAug: return "without_aug";
    case Regime::TrainAugOnly: return "train_aug";
    case Regime::TestAugOnly: return "test_aug";
    case Regime::TrainAndTestAug: return "train_and_test_aug";
  }
  return "?";
}

Regime regime_from_name(const std::string& name) {
  if (name == "without_aug") return Regime::WithoutAug;
  if (name == "train_aug") return Regime::TrainAugOnly;
  if (name == "test_aug") return Regime::TestAugOnly;
  if (name == "train_and_test_aug") return Regime::TrainAndTestAug;
  fail("unknown regime '" + name + "'");
}

Dataset augment_dataset(const Dataset& ds, const std::vector<TransformSpec>& mrs,
                        std::uint64_t seed) {
  const TransformSpec all = compose(mrs);
  Dataset out;
  out.images = Tensor(ds.images.shape());
  out.labels = ds.labels;
  out.provenance = ds.provenance;
  out.provenance.note += "+aug(" + all.describe() + ",seed=" + std::to_string(seed) + ")";
  const std::size_t px = 28 * 28;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    Tensor t = apply(all, ds.image(i), hash_combine(seed, i));
    std::memcpy(out.images.data() + i * px, t.data(), px * sizeof(float));
  }
  return out;
}

MtResult run_mt(const TrainConfig& cfg, const Dataset& train_set, const Dataset& test_set,
                const std::vector<TransformSpec>& mrs, Regime regime, ModelCache* cache) {
  require(!mrs.empty() || regime == Regime::WithoutAug,
          "metamorphic run needs at least one transform unless the regime is without_aug");

  const bool aug_train = regime == Regime::TrainAugOnly || regime == Regime::TrainAndTestAug;
  const bool aug_test = regime == Regime::TestAugOnly || regime == Regime::TrainAndTestAug;
  const TransformSpec all = compose(mrs);

  AugmentFn aug;
  if (aug_train) {
    const std::uint64_t salt = hash_combine(cfg.seed, kTrainAugSalt);
    aug = [all, salt](const Tensor& img, std::size_t idx, int epoch) {
      return apply(all, img, hash_combine(hash_combine(salt, static_cast<std::uint64_t>(epoch)), idx));
    };
  }

  // without train-side augmentation this is exactly the baseline training,
  // so share its cache entry
  const std::string desc =
      aug_train ? "mt;" + cfg.to_json() + ";data=" + dataset_fingerprint(train_set) +
                      ";aug=" + all.describe()
                : "baseline;" + cfg.to_json() + ";data=" + dataset_fingerprint(train_set);
  auto train_fn = [&]() { return train_new(cfg.architecture, train_set, cfg, aug).model; };
  Model model = cache != nullptr ? cache->get_or_train(desc, train_fn) : train_fn();

  const Dataset* eval_set = &test_set;
  Dataset augmented;
  if (aug_test) {
    augmented = augment_dataset(test_set, mrs, hash_combine(cfg.seed, kTestAugSalt));
    eval_set = &augmented;
  }
  const EvalResult ev = evaluate(model, *eval_set);

  MtResult r;
  r.regime = regime;
  r.mr_config = mrs.empty() ? "none" : all.describe();
  r.accuracy = ev.accuracy;
  r.error = ev.error;
  r.seed = cfg.seed;
  return r;
}

MrCheck check_mr(const Model& m, const Tensor& x, const TransformSpec& spec,
                 std::uint64_t draw_seed) {
  MrCheck c;
  c.label_orig = predict_one(m, x);
  c.label_transformed = predict_one(m, apply(spec, x, draw_seed));
  c.violation = c.label_orig != c.label_transformed;
  return c;
}

double mr_violation_rate(const Model& m, const Dataset& test_set, const TransformSpec& spec,
                         std::uint64_t seed) {
  require(test_set.size() > 0, "violation rate needs a nonempty set");
  // transform the whole corpus once, then batch both predictions
  Dataset transformed = augment_dataset(test_set, {spec}, seed);
  const std::vector<int> orig = predict_dataset(m, test_set);
  const std::vector<int> after = predict_dataset(m, transformed);
  std::size_t violations = 0;
  for (std::size_t i = 0; i < orig.size(); ++i)
    if (orig[i] != after[i]) ++violations;
  return 100.0 * static_cast<double>(violations) / static_cast<double>(orig.size());
}

}  // namespace dlt
