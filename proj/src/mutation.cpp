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

#include "dlt/mutation.hpp"

#include <algorithm>
#include <cmath>

namespace dlt {

std::string mut_kind_name(MutKind k) {
  switch (k) {
    case MutKind::GaussianFuzz: return "gaussian_fuzz";
    case MutKind::WeightShuffle: return "weight_shuffle";
    case MutKind::NeuronEffectBlock: return "neuron_effect_block";
    case MutKind::NeuronActInverse: return "neuron_activation_inverse";
    case MutKind::NeuronSwitch: return "neuron_switch";
    case MutKind::LayerDeactivation: return "layer_deactivation";
    case MutKind::LayerAddition: return "layer_addition";
    case MutKind::ActivationRemoval: return "activation_removal";
  }
  return "?";
}

MutKind mut_kind_from_name(const std::string& name) {
  for (int k = 0; k <= static_cast<int>(MutKind::ActivationRemoval); ++k)
    if (mut_kind_name(static_cast<MutKind>(k)) == name) return static_cast<MutKind>(k);
  fail("unknown mutation operator '" + name + "'");
}

bool is_neuron_level(MutKind k) {
  return k == MutKind::GaussianFuzz || k == MutKind::WeightShuffle ||
         k == MutKind::NeuronEffectBlock || k == MutKind::NeuronActInverse ||
         k == MutKind::NeuronSwitch;
}

void MutationOperator::validate() const {
  if (is_neuron_level(kind)) {
    require(ratio >= 0.0 && ratio <= 1.0,
            "mutation ratio must be in [0,1], got " + std::to_string(ratio));
  } else {
    require(ratio == 0.0, "layer-level operator " + mut_kind_name(kind) + " takes no ratio");
  }
}

std::string MutationOperator::describe() const {
  std::string s = mut_kind_name(kind);
  if (is_neuron_level(kind)) s += "@" + std::to_string(ratio);
  return s + "#" + std::to_string(seed);
}

namespace {

struct NeuronRef {
  int layer;
  int index;
};

int neuron_count(const Layer& l) { return l.output_shape[0]; }

// incoming weight slots of one neuron: a contiguous block in both layer kinds
std::pair<std::size_t, std::size_t> incoming_range(const Layer& l, int j) {
  const std::size_t per = l.weights.size() / static_cast<std::size_t>(neuron_count(l));
  return {static_cast<std::size_t>(j) * per, (static_cast<std::size_t>(j) + 1) * per};
}

int next_weighted(const Model& m, int li) {
  for (std::size_t i = static_cast<std::size_t>(li) + 1; i < m.layers.size(); ++i)
    if (m.layers[i].has_weights()) return static_cast<int>(i);
  return -1;
}

// weight slots in the next weighted layer that multiply neuron j's output
std::vector<std::size_t> outgoing_indices(const Model& m, int li, int j) {
  const int ni = next_weighted(m, li);
  require(ni >= 0, "neuron has no outgoing weights (last weighted layer)");
  const Layer& cur = m.layers[static_cast<std::size_t>(li)];
  const Layer& nxt = m.layers[static_cast<std::size_t>(ni)];
  std::vector<std::size_t> out;

  if (nxt.kind == LayerKind::Conv2d) {
    require(cur.kind == LayerKind::Conv2d, "unsupported dense->conv chaining");
    const int ic = nxt.weights.dim(1), oc = nxt.weights.dim(0);
    const int kk = nxt.weights.dim(2) * nxt.weights.dim(3);
    for (int co = 0; co < oc; ++co)
      for (int p = 0; p < kk; ++p)
        out.push_back((static_cast<std::size_t>(co) * ic + j) * kk + p);
    return out;
  }

  // next is dense; channel outputs may be spread across spatial positions
  const int in = nxt.weights.dim(1), rows = nxt.weights.dim(0);
  int col_lo = j, col_hi = j + 1;
  if (cur.kind == LayerKind::Conv2d) {
    // per-channel block size = spatial extent right before the flatten
    int spatial = 1;
    for (std::size_t i = static_cast<std::size_t>(li) + 1; i < static_cast<std::size_t>(ni); ++i) {
      if (m.layers[i].kind == LayerKind::Flatten) {
        const auto& s = m.layers[i].input_shape;
        spatial = s[1] * s[2];
        break;
      }
    }
    col_lo = j * spatial;
    col_hi = (j + 1) * spatial;
  }
  for (int r = 0; r < rows; ++r)
    for (int c = col_lo; c < col_hi; ++c)
      out.push_back(static_cast<std::size_t>(r) * in + c);
  return out;
}

std::vector<NeuronRef> eligible_neurons(const Model& m, MutKind kind) {
  std::vector<NeuronRef> out;
  for (int li : m.weighted_layers()) {
    if (kind == MutKind::NeuronEffectBlock && next_weighted(m, li) < 0) continue;
    const int n = neuron_count(m.layers[static_cast<std::size_t>(li)]);
    for (int j = 0; j < n; ++j) out.push_back({li, j});
  }
  return out;
}

std::vector<NeuronRef> select_neurons(const Model& m, const MutationOperator& op) {
  std::vector<NeuronRef> all = eligible_neurons(m, op.kind);
  require(!all.empty(), "no eligible neurons for " + mut_kind_name(op.kind));
  const int want = static_cast<int>(std::ceil(op.ratio * static_cast<double>(all.size())));
  Rng rng(hash_combine(op.seed, 0x5e1ec7ull));
  std::vector<int> idx = rng.sample_indices(static_cast<int>(all.size()), std::min<int>(want, all.size()));
  std::sort(idx.begin(), idx.end());
  std::vector<NeuronRef> sel;
  sel.reserve(idx.size());
  for (int i : idx) sel.push_back(all[static_cast<std::size_t>(i)]);
  return sel;
}

double layer_weight_std(const Layer& l) {
  if (l.weights.empty()) return 0.0;
  double mean = 0.0;
  for (std::size_t i = 0; i < l.weights.size(); ++i) mean += l.weights[i];
  mean /= static_cast<double>(l.weights.size());
  double var = 0.0;
  for (std::size_t i = 0; i < l.weights.size(); ++i) {
    const double d = l.weights[i] - mean;
    var += d * d;
  }
  return std::sqrt(var / static_cast<double>(l.weights.size()));
}

std::size_t diff_count(const Model& a, const Model& b) {
  std::size_t n = 0;
  for (std::size_t li = 0; li < a.layers.size(); ++li) {
    const Tensor& wa = a.layers[li].weights;
    const Tensor& wb = b.layers[li].weights;
    for (std::size_t i = 0; i < wa.size(); ++i)
      if (wa[i] != wb[i]) ++n;
    const Tensor& ba = a.layers[li].bias;
    const Tensor& bb = b.layers[li].bias;
    for (std::size_t i = 0; i < ba.size(); ++i)
      if (ba[i] != bb[i]) ++n;
  }
  return n;
}

std::vector<int> shape_preserving_candidates(const Model& m) {
  std::vector<int> out;
  for (std::size_t i = 0; i < m.layers.size(); ++i) {
    const Layer& l = m.layers[i];
    if (l.kind == LayerKind::Activation) continue;  // those belong to activation removal
    if (l.shape_preserving()) out.push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace

Mutant mutate(const Model& m, const MutationOperator& op) {
  op.validate();
  Mutant mut;
  mut.op = op;
  mut.model = m;  // deep copy; the original is never aliased
  Model& w = mut.model;

  switch (op.kind) {
    case MutKind::GaussianFuzz: {
      std::vector<double> sigma(m.layers.size(), 0.0);
      for (int li : m.weighted_layers())
        sigma[static_cast<std::size_t>(li)] = layer_weight_std(m.layers[static_cast<std::size_t>(li)]);
      for (const NeuronRef& nr : select_neurons(m, op)) {
        Layer& l = w.layers[static_cast<std::size_t>(nr.layer)];
        Rng rng(hash_combine(hash_combine(op.seed, nr.layer), nr.index));
        auto [lo, hi] = incoming_range(l, nr.index);
        const float sd = static_cast<float>(sigma[static_cast<std::size_t>(nr.layer)]);
        for (std::size_t i = lo; i < hi; ++i) l.weights[i] += rng.normal(0.0f, sd);
        mut.layers_touched.push_back(nr.layer);
      }
      break;
    }
    case MutKind::WeightShuffle: {
      for (const NeuronRef& nr : select_neurons(m, op)) {
        Layer& l = w.layers[static_cast<std::size_t>(nr.layer)];
        Rng rng(hash_combine(hash_combine(op.seed, nr.layer), nr.index));
        auto [lo, hi] = incoming_range(l, nr.index);
        std::vector<float> block(l.weights.vec().begin() + static_cast<long>(lo),
                                 l.weights.vec().begin() + static_cast<long>(hi));
        rng.shuffle(block);
        std::copy(block.begin(), block.end(), l.weights.vec().begin() + static_cast<long>(lo));
        mut.layers_touched.push_back(nr.layer);
      }
      break;
    }
    case MutKind::NeuronEffectBlock: {
      for (const NeuronRef& nr : select_neurons(m, op)) {
        const int ni = next_weighted(m, nr.layer);
        Layer& nxt = w.layers[static_cast<std::size_t>(ni)];
        for (std::size_t i : outgoing_indices(m, nr.layer, nr.index)) nxt.weights[i] = 0.0f;
        mut.layers_touched.push_back(ni);
      }
      break;
    }
    case MutKind::NeuronActInverse: {
      for (const NeuronRef& nr : select_neurons(m, op)) {
        Layer& l = w.layers[static_cast<std::size_t>(nr.layer)];
        auto [lo, hi] = incoming_range(l, nr.index);
        for (std::size_t i = lo; i < hi; ++i) l.weights[i] = -l.weights[i];
        l.bias[static_cast<std::size_t>(nr.index)] = -l.bias[static_cast<std::size_t>(nr.index)];
        mut.layers_touched.push_back(nr.layer);
      }
      break;
    }
    case MutKind::NeuronSwitch: {
      // pair selected neurons within each layer and swap their incoming
      // weights and biases, exchanging the neurons' roles downstream
      std::vector<NeuronRef> sel = select_neurons(m, op);
      for (int li : m.weighted_layers()) {
        std::vector<int> mine;
        for (const NeuronRef& nr : sel)
          if (nr.layer == li) mine.push_back(nr.index);
        if (mine.size() < 2) continue;
        Rng rng(hash_combine(hash_combine(op.seed, li), 0xbeefull));
        rng.shuffle(mine);
        Layer& l = w.layers[static_cast<std::size_t>(li)];
        for (std::size_t p = 0; p + 1 < mine.size(); p += 2) {
          auto [alo, ahi] = incoming_range(l, mine[p]);
          auto [blo, bhi] = incoming_range(l, mine[p + 1]);
          for (std::size_t i = 0; i < ahi - alo; ++i)
            std::swap(l.weights[alo + i], l.weights[blo + i]);
          std::swap(l.bias[static_cast<std::size_t>(mine[p])],
                    l.bias[static_cast<std::size_t>(mine[p + 1])]);
          mut.layers_touched.push_back(li);
        }
      }
      break;
    }
    case MutKind::LayerDeactivation: {
      std::vector<int> cands = shape_preserving_candidates(m);
      require(!cands.empty(), "no shape-preserving layer to deactivate");
      Rng rng(hash_combine(op.seed, 0x1dull));
      const int li = cands[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(cands.size()) - 1))];
      mut.weights_changed = w.layers[static_cast<std::size_t>(li)].weights.size() +
                            w.layers[static_cast<std::size_t>(li)].bias.size();
      w.layers.erase(w.layers.begin() + li);
      mut.layers_touched.push_back(li);
      w.validate();
      break;
    }
    case MutKind::LayerAddition: {
      std::vector<int> cands = shape_preserving_candidates(m);
      require(!cands.empty(), "no shape-preserving layer to duplicate");
      Rng rng(hash_combine(op.seed, 0x1aull));
      const int li = cands[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(cands.size()) - 1))];
      Layer dup = w.layers[static_cast<std::size_t>(li)];
      mut.weights_changed = dup.weights.size() + dup.bias.size();
      w.layers.insert(w.layers.begin() + li + 1, std::move(dup));
      mut.layers_touched.push_back(li);
      w.validate();
      break;
    }
    case MutKind::ActivationRemoval: {
      std::vector<int> relus;
      for (std::size_t i = 0; i < m.layers.size(); ++i)
        if (m.layers[i].kind == LayerKind::Activation && m.layers[i].act == ActKind::Relu)
          relus.push_back(static_cast<int>(i));
      require(!relus.empty(), "no relu activation layer to remove");
      Rng rng(hash_combine(op.seed, 0xafull));
      const int li = relus[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(relus.size()) - 1))];
      w.layers[static_cast<std::size_t>(li)].act = ActKind::Identity;
      mut.layers_touched.push_back(li);
      break;
    }
  }

  if (op.kind != MutKind::LayerDeactivation && op.kind != MutKind::LayerAddition)
    mut.weights_changed = diff_count(m, w);

  std::sort(mut.layers_touched.begin(), mut.layers_touched.end());
  mut.layers_touched.erase(std::unique(mut.layers_touched.begin(), mut.layers_touched.end()),
                           mut.layers_touched.end());
  return mut;
}

std::vector<MutCell> run_mut_sweep(const Model& m, const Dataset& test_set,
                                   const std::vector<MutKind>& kinds,
                                   const std::vector<double>& ratios, std::uint64_t base_seed) {
  require(std::is_sorted(ratios.begin(), ratios.end()), "ratios must be sorted ascending");
  std::vector<MutCell> rows;
  for (MutKind k : kinds) {
    require(is_neuron_level(k), "sweep covers neuron-level operators only");
    for (std::size_t ri = 0; ri < ratios.size(); ++ri) {
      MutationOperator op{k, ratios[ri], hash_combine(hash_combine(base_seed, static_cast<std::uint64_t>(k)), ri)};
      Mutant mut = mutate(m, op);
      const EvalResult ev = evaluate(mut.model, test_set);
      rows.push_back({k, ratios[ri], op.seed, ev.accuracy, ev.error});
    }
  }
  return rows;
}

std::vector<LayerMutRow> run_layer_mutants(const Model& m, const Dataset& test_set,
                                           const std::vector<std::uint64_t>& seeds) {
  std::vector<LayerMutRow> rows;
  for (MutKind k : {MutKind::LayerDeactivation, MutKind::LayerAddition,
                    MutKind::ActivationRemoval}) {
    for (std::uint64_t s : seeds) {
      MutationOperator op{k, 0.0, s};
      Mutant mut = mutate(m, op);
      const EvalResult ev = evaluate(mut.model, test_set);
      rows.push_back({k, s, ev.accuracy, ev.error});
    }
  }
  return rows;
}

MutationScore mutation_score(const Model& original, const std::vector<Mutant>& mutants,
                             const Dataset& test_set, double kill_threshold) {
  require(!mutants.empty(), "mutation score needs at least one mutant");
  MutationScore ms;
  ms.detail.resize(mutants.size());
  if (test_set.size() == 0) return ms;  // nothing to kill with

  const std::vector<int> orig_labels = predict_dataset(original, test_set);
  long orig_correct = 0;
  for (std::size_t i = 0; i < test_set.size(); ++i)
    if (orig_labels[i] == test_set.labels[i]) ++orig_correct;
  const double orig_acc = 100.0 * static_cast<double>(orig_correct) / test_set.size();

  for (std::size_t mi = 0; mi < mutants.size(); ++mi) {
    MutantVerdict& v = ms.detail[mi];
    const std::vector<int> labels = predict_dataset(mutants[mi].model, test_set);
    long correct = 0;
    for (std::size_t i = 0; i < test_set.size(); ++i) {
      if (labels[i] == test_set.labels[i]) ++correct;
      if (v.first_killing_input < 0 && labels[i] != orig_labels[i])
        v.first_killing_input = static_cast<long>(i);
    }
    v.accuracy = 100.0 * static_cast<double>(correct) / test_set.size();
    v.killed = v.first_killing_input >= 0;
    v.excluded = v.accuracy < kill_threshold * orig_acc;
    if (v.excluded) {
      ms.excluded += 1;
    } else {
      ms.considered += 1;
      if (v.killed) ms.killed += 1;
    }
  }
  ms.score = ms.considered > 0 ? static_cast<double>(ms.killed) / ms.considered : 0.0;
  return ms;
}

MutantBank make_gf_bank(const Model& m, int count, double ratio, std::uint64_t seed) {
  require(count >= 1, "mutant count must be >= 1");
  MutantBank bank;
  bank.op = {MutKind::GaussianFuzz, ratio, seed};
  bank.mutants.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    MutationOperator op{MutKind::GaussianFuzz, ratio,
                        hash_combine(seed, static_cast<std::uint64_t>(i))};
    bank.mutants.push_back(mutate(m, op).model);
  }
  return bank;
}

double lcr(const MutantBank& bank, const Model& original, const Tensor& x) {
  const int orig = predict_one(original, x);
  int changed = 0;
  for (const Model& mu : bank.mutants)
    if (predict_one(mu, x) != orig) ++changed;
  return static_cast<double>(changed) / static_cast<double>(bank.mutants.size());
}

std::vector<double> lcr_dataset(const MutantBank& bank, const Model& original, const Dataset& ds) {
  const std::vector<int> orig = predict_dataset(original, ds);
  std::vector<int> changed(ds.size(), 0);
  for (const Model& mu : bank.mutants) {
    const std::vector<int> labels = predict_dataset(mu, ds);
    for (std::size_t i = 0; i < ds.size(); ++i)
      if (labels[i] != orig[i]) changed[i] += 1;
  }
  std::vector<double> rates(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i)
    rates[i] = static_cast<double>(changed[i]) / static_cast<double>(bank.mutants.size());
  return rates;
}

LcrDetection lcr_detect(const Model& m, const Tensor& x, int mutant_count,
                        const MutationOperator& op, double tau) {
  require(mutant_count >= 1, "lcr_detect needs M >= 1");
  const MutantBank bank = make_gf_bank(m, mutant_count, op.ratio, op.seed);
  LcrDetection d;
  d.lcr = lcr(bank, m, x);
  d.adversarial = d.lcr > tau;
  return d;
}

double lcr_percentile(std::vector<double> values, double q) {
  require(!values.empty(), "percentile of empty set");
  std::sort(values.begin(), values.end());
  const double rank = std::ceil(q / 100.0 * static_cast<double>(values.size()));
  const std::size_t idx =
      static_cast<std::size_t>(std::max(1.0, std::min(rank, static_cast<double>(values.size())))) - 1;
  return values[idx];
}

}  // namespace dlt
