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

#include "dlt/differential.hpp"

#include <algorithm>
#include <cstring>
#include <set>
#include <sstream>

namespace dlt {

Ensemble train_ensemble(const TrainConfig& base, const std::vector<Variant>& variants,
                        const Dataset& train_set, ModelCache* cache) {
  require(variants.size() >= 2, "ensemble needs at least 2 variants");
  Ensemble ens;
  std::set<std::pair<std::uint64_t, std::string>> seen;
  for (const Variant& v : variants) {
    TrainConfig cfg = base;
    cfg.seed = v.seed;
    if (!v.architecture.empty()) cfg.architecture = v.architecture;
    if (!seen.insert({cfg.seed, cfg.architecture}).second)
      ens.warnings.push_back("duplicate variant seed=" + std::to_string(cfg.seed) + " arch=" +
                             cfg.architecture + ": members are bit-identical");
    const std::string desc =
        "ensemble;" + cfg.to_json() + ";data=" + dataset_fingerprint(train_set);
    auto train_fn = [&]() { return train_new(cfg.architecture, train_set, cfg).model; };
    Model m = cache != nullptr ? cache->get_or_train(desc, train_fn) : train_fn();
    ens.members.push_back({std::move(m), v});
  }
  return ens;
}

std::vector<Disagreement> find_disagreements(const Ensemble& ens, const Dataset& inputs) {
  require(ens.members.size() >= 2, "differential testing needs at least 2 models");
  require(inputs.size() > 0, "disagreement mining needs a nonempty input set");

  const std::size_t n = inputs.size();
  const std::size_t k = ens.members.size();
  std::vector<std::vector<int>> labels(k);
  std::vector<std::vector<float>> confs(k, std::vector<float>(n));
  for (std::size_t mi = 0; mi < k; ++mi) {
    labels[mi] = predict_dataset(ens.members[mi].model, inputs);
    const Tensor probs = predict_probs(ens.members[mi].model, inputs);
    for (std::size_t i = 0; i < n; ++i) {
      float mx = probs.at2(static_cast<int>(i), 0);
      for (int c = 1; c < probs.dim(1); ++c)
        mx = std::max(mx, probs.at2(static_cast<int>(i), c));
      confs[mi][i] = mx;
    }
  }

  std::vector<Disagreement> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> votes(10, 0);
    Disagreement d;
    d.input_id = i;
    double conf_sum = 0.0;
    for (std::size_t mi = 0; mi < k; ++mi) {
      d.labels.push_back(labels[mi][i]);
      d.confidences.push_back(confs[mi][i]);
      votes[static_cast<std::size_t>(labels[mi][i])] += 1;
      conf_sum += confs[mi][i];
    }
    d.distinct = static_cast<int>(std::count_if(votes.begin(), votes.end(),
                                                [](int v) { return v > 0; }));
    if (d.distinct < 2) continue;
    int best = 0;
    for (int c = 1; c < 10; ++c)
      if (votes[static_cast<std::size_t>(c)] > votes[static_cast<std::size_t>(best)]) best = c;
    const int best_votes = votes[static_cast<std::size_t>(best)];
    const bool unique = std::count(votes.begin(), votes.end(), best_votes) == 1;
    d.majority = unique ? best : -1;
    d.mean_confidence = conf_sum / static_cast<double>(k);
    out.push_back(std::move(d));
  }

  std::sort(out.begin(), out.end(), [](const Disagreement& a, const Disagreement& b) {
    if (a.distinct != b.distinct) return a.distinct > b.distinct;
    if (a.mean_confidence != b.mean_confidence) return a.mean_confidence < b.mean_confidence;
    return a.input_id < b.input_id;
  });
  return out;
}

std::string RetrainReport::to_json() const {
  std::ostringstream os;
  os << "{\"retrained\":" << (retrained ? "true" : "false") << ",\"used\":" << used
     << ",\"skipped\":" << skipped << ",\"before\":{\"clean\":" << before_clean
     << ",\"pool\":" << before_pool << "},\"after\":{\"clean\":" << after_clean
     << ",\"pool\":" << after_pool << "}";
  if (!warning.empty()) os << ",\"warning\":\"" << warning << "\"";
  os << "}";
  return os.str();
}

std::pair<Model, RetrainReport> retrain_with_disagreements(
    const Model& target, const Dataset& pool, const std::vector<Disagreement>& disagreements,
    const TrainConfig& cfg, const Dataset& clean_test) {
  RetrainReport rep;

  std::vector<int> idx;
  std::vector<int> pseudo;
  for (const Disagreement& d : disagreements) {
    if (d.majority < 0) {
      rep.skipped += 1;
      continue;
    }
    idx.push_back(static_cast<int>(d.input_id));
    pseudo.push_back(d.majority);
  }
  rep.used = static_cast<int>(idx.size());

  if (idx.empty()) {
    rep.warning = "no usable disagreements (no strict majority); model returned unchanged";
    rep.before_clean = rep.after_clean = evaluate(target, clean_test).accuracy;
    return {target, rep};
  }

  Dataset pseudo_ds = pool.take(idx);
  pseudo_ds.labels = pseudo;
  pseudo_ds.provenance.note += "+majority_vote";

  rep.before_clean = evaluate(target, clean_test).accuracy;
  rep.before_pool = evaluate(target, pseudo_ds).accuracy;
  TrainResult r = train(target, pseudo_ds, cfg);
  rep.after_clean = evaluate(r.model, clean_test).accuracy;
  rep.after_pool = evaluate(r.model, pseudo_ds).accuracy;
  rep.retrained = true;
  return {std::move(r.model), rep};
}

}  // namespace dlt
