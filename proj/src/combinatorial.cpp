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

#include "dlt/combinatorial.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "dlt/train.hpp"

namespace dlt {

void ParameterDomain::validate() const {
  require(levels.size() >= 2, "domain '" + name + "' needs at least 2 levels");
  std::set<std::string> uniq(levels.begin(), levels.end());
  require(uniq.size() == levels.size(), "domain '" + name + "' has duplicate levels");
}

std::string CoveringArray::to_csv() const {
  std::ostringstream os;
  for (std::size_t d = 0; d < domains.size(); ++d) os << (d ? "," : "") << domains[d].name;
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t d = 0; d < domains.size(); ++d)
      os << (d ? "," : "") << domains[d].levels[static_cast<std::size_t>(row[d])];
    os << "\n";
  }
  return os.str();
}

namespace {

// all t-subsets of [0,n)
std::vector<std::vector<int>> subsets_of_size(int n, int t) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) cur[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(cur);
    int pos = t - 1;
    while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == n - t + pos) --pos;
    if (pos < 0) break;
    cur[static_cast<std::size_t>(pos)] += 1;
    for (int i = pos + 1; i < t; ++i)
      cur[static_cast<std::size_t>(i)] = cur[static_cast<std::size_t>(i - 1)] + 1;
  }
  return out;
}

// per-subset tuple id of a row
long tuple_id(const std::vector<int>& subset, const std::vector<int>& row,
              const std::vector<ParameterDomain>& domains) {
  long id = 0;
  for (int d : subset) {
    id = id * static_cast<long>(domains[static_cast<std::size_t>(d)].levels.size()) +
         row[static_cast<std::size_t>(d)];
  }
  return id;
}

}  // namespace

CoveringArray generate_covering_array(const std::vector<ParameterDomain>& domains, int t,
                                      std::uint64_t seed, int candidates) {
  require(t >= 2, "strength must be >= 2");
  require(t <= static_cast<int>(domains.size()), "strength exceeds the domain count");
  for (const auto& d : domains) d.validate();

  const int nd = static_cast<int>(domains.size());
  const std::vector<std::vector<int>> subsets = subsets_of_size(nd, t);
  // uncovered[s] = set of tuple ids not yet seen for subset s
  std::vector<std::set<long>> uncovered(subsets.size());
  std::size_t remaining = 0;
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    long count = 1;
    for (int d : subsets[s]) count *= static_cast<long>(domains[static_cast<std::size_t>(d)].levels.size());
    for (long id = 0; id < count; ++id) uncovered[s].insert(id);
    remaining += static_cast<std::size_t>(count);
  }

  CoveringArray ca;
  ca.domains = domains;
  ca.strength = t;
  Rng rng(hash_combine(seed, 0xca11ull));

  auto newly_covered = [&](const std::vector<int>& row) {
    int n = 0;
    for (std::size_t s = 0; s < subsets.size(); ++s)
      if (uncovered[s].count(tuple_id(subsets[s], row, domains))) ++n;
    return n;
  };

  while (remaining > 0) {
    std::vector<int> best_row;
    int best_score = -1;
    for (int c = 0; c < candidates; ++c) {
      // greedy candidate: fill domains in random order, choosing the level
      // that covers the most still-uncovered tuples among decided domains
      std::vector<int> order(static_cast<std::size_t>(nd));
      for (int i = 0; i < nd; ++i) order[static_cast<std::size_t>(i)] = i;
      rng.shuffle(order);
      std::vector<int> row(static_cast<std::size_t>(nd), -1);
      for (int d : order) {
        const int nl = static_cast<int>(domains[static_cast<std::size_t>(d)].levels.size());
        int pick = 0, pick_score = -1;
        const int start = rng.uniform_int(0, nl - 1);  // random tie winner
        for (int off = 0; off < nl; ++off) {
          const int lv = (start + off) % nl;
          row[static_cast<std::size_t>(d)] = lv;
          int score = 0;
          for (std::size_t s = 0; s < subsets.size(); ++s) {
            bool decided = true;
            for (int sd : subsets[s])
              decided = decided && row[static_cast<std::size_t>(sd)] >= 0;
            if (decided && uncovered[s].count(tuple_id(subsets[s], row, domains))) ++score;
          }
          if (score > pick_score) {
            pick_score = score;
            pick = lv;
          }
        }
        row[static_cast<std::size_t>(d)] = pick;
      }
      const int score = newly_covered(row);
      if (score > best_score) {
        best_score = score;
        best_row = row;
      }
    }
    if (best_score <= 0) {
      // guarantee progress: materialize the first uncovered tuple directly
      for (std::size_t s = 0; s < subsets.size(); ++s) {
        if (uncovered[s].empty()) continue;
        std::vector<int> row(static_cast<std::size_t>(nd), 0);
        long rem = *uncovered[s].begin();
        for (int i = static_cast<int>(subsets[s].size()) - 1; i >= 0; --i) {
          const int d = subsets[s][static_cast<std::size_t>(i)];
          const long nl = static_cast<long>(domains[static_cast<std::size_t>(d)].levels.size());
          row[static_cast<std::size_t>(d)] = static_cast<int>(rem % nl);
          rem /= nl;
        }
        best_row = row;
        break;
      }
    }
    ca.rows.push_back(best_row);
    for (std::size_t s = 0; s < subsets.size(); ++s)
      remaining -= uncovered[s].erase(tuple_id(subsets[s], best_row, domains));
  }
  return ca;
}

std::vector<MissingTuple> verify_covering_array(const CoveringArray& ca) {
  for (const auto& d : ca.domains) d.validate();
  const int nd = static_cast<int>(ca.domains.size());
  std::vector<MissingTuple> missing;
  for (const auto& subset : subsets_of_size(nd, ca.strength)) {
    std::set<long> seen;
    for (const auto& row : ca.rows) seen.insert(tuple_id(subset, row, ca.domains));
    long count = 1;
    for (int d : subset) count *= static_cast<long>(ca.domains[static_cast<std::size_t>(d)].levels.size());
    for (long id = 0; id < count; ++id) {
      if (seen.count(id)) continue;
      MissingTuple mt;
      mt.domains = subset;
      mt.levels.resize(subset.size());
      long rem = id;
      for (int i = static_cast<int>(subset.size()) - 1; i >= 0; --i) {
        const long nl = static_cast<long>(
            ca.domains[static_cast<std::size_t>(subset[static_cast<std::size_t>(i)])].levels.size());
        mt.levels[static_cast<std::size_t>(i)] = static_cast<int>(rem % nl);
        rem /= nl;
      }
      missing.push_back(std::move(mt));
    }
  }
  return missing;
}

double neuron_tuple_coverage(const std::vector<ActivationTrace>& traces, const Model& m,
                             int weighted_layer, int t, double threshold, int width_cap,
                             std::uint64_t sample_seed) {
  require(t >= 1 && t <= width_cap, "t out of range (cap " + std::to_string(width_cap) + ")");
  if (traces.empty()) return 0.0;
  std::size_t li = 0;
  bool found = false;
  for (std::size_t i = 0; i < traces[0].layers.size(); ++i)
    if (traces[0].layers[i] == weighted_layer) {
      li = i;
      found = true;
      break;
    }
  require(found, "layer " + std::to_string(weighted_layer) + " not present in traces");
  (void)m;

  const int width = static_cast<int>(traces[0].acts[li].size());
  require(width >= t, "layer narrower than t");
  std::vector<int> neurons;
  if (width <= width_cap) {
    neurons.resize(static_cast<std::size_t>(width));
    for (int i = 0; i < width; ++i) neurons[static_cast<std::size_t>(i)] = i;
  } else {
    Rng rng(hash_combine(sample_seed, 0xca9ull));
    neurons = rng.sample_indices(width, width_cap);
    std::sort(neurons.begin(), neurons.end());
  }
  const int w = static_cast<int>(neurons.size());

  // binarize: per-layer min-max over the trace set, on iff scaled > threshold
  float lo = traces[0].acts[li][0], hi = lo;
  for (const auto& tr : traces)
    for (float v : tr.acts[li]) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  const float range = hi - lo;

  const std::vector<std::vector<int>> subsets = subsets_of_size(w, t);
  std::set<std::pair<std::size_t, int>> observed;  // (subset idx, pattern)
  for (const auto& tr : traces) {
    std::vector<int> bits(static_cast<std::size_t>(w));
    for (int i = 0; i < w; ++i) {
      const float v = tr.acts[li][static_cast<std::size_t>(neurons[static_cast<std::size_t>(i)])];
      const float scaled = range > 0.0f ? (v - lo) / range : 0.0f;
      bits[static_cast<std::size_t>(i)] = scaled > threshold ? 1 : 0;
    }
    for (std::size_t s = 0; s < subsets.size(); ++s) {
      int pattern = 0;
      for (int d : subsets[s]) pattern = (pattern << 1) | bits[static_cast<std::size_t>(d)];
      observed.insert({s, pattern});
    }
  }
  const double total = static_cast<double>(subsets.size()) * std::pow(2.0, t);
  return static_cast<double>(observed.size()) / total;
}

bool SmokeReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

namespace {

SmokeCheck softmax_check(const Model& m, const std::string& name, const Tensor& x) {
  SmokeCheck c{name, false, ""};
  try {
    ForwardResult r = forward(m, x, false);
    double sum = 0.0;
    bool finite = true;
    for (int j = 0; j < r.logits.dim(1); ++j) {
      finite = finite && std::isfinite(r.logits.at2(0, j));
      sum += r.logits.at2(0, j);
    }
    if (!finite) {
      c.detail = "non-finite softmax output";
    } else if (std::abs(sum - 1.0) > 1e-4) {
      c.detail = "softmax sum " + std::to_string(sum);
    } else {
      c.pass = true;
    }
  } catch (const std::exception& e) {
    c.detail = e.what();
  }
  return c;
}

}  // namespace

SmokeReport smoke_test(const Model& m) {
  SmokeReport rep;
  std::vector<int> in = m.input_shape();
  std::vector<int> batched = {1};
  batched.insert(batched.end(), in.begin(), in.end());

  rep.checks.push_back(softmax_check(m, "zero_input_softmax", Tensor(batched)));
  rep.checks.push_back(softmax_check(m, "ones_input_softmax", Tensor::full(batched, 1.0f)));
  Tensor one_px(batched);
  one_px[one_px.size() / 2] = 1.0f;
  rep.checks.push_back(softmax_check(m, "max_pixel_softmax", one_px));

  {
    SmokeCheck c{"train_step_finite_loss", false, ""};
    try {
      Dataset two;
      std::vector<int> shape2 = batched;
      shape2[0] = 2;
      two.images = Tensor(shape2);
      for (std::size_t i = two.images.size() / 2; i < two.images.size(); ++i) two.images[i] = 1.0f;
      two.labels = {0, 1};
      two.provenance.note = "smoke";
      TrainConfig cfg;
      cfg.epochs = 1;
      cfg.batch_size = 2;
      cfg.learning_rate = 0.001f;
      cfg.seed = 1;
      cfg.architecture = m.meta.architecture;
      TrainResult r = train(m, two, cfg);
      if (std::isfinite(r.history[0].loss))
        c.pass = true;
      else
        c.detail = "loss " + std::to_string(r.history[0].loss);
    } catch (const std::exception& e) {
      c.detail = e.what();
    }
    rep.checks.push_back(c);
  }

  {
    SmokeCheck c{"prediction_deterministic", false, ""};
    try {
      Rng rng(1234);
      Tensor x(batched);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.uniform(0.0f, 1.0f);
      const int a = predict_one(m, x);
      const int b = predict_one(m, x);
      const int d = predict_one(m, x);
      if (a == b && b == d)
        c.pass = true;
      else
        c.detail = "labels differ across repeats";
    } catch (const std::exception& e) {
      c.detail = e.what();
    }
    rep.checks.push_back(c);
  }
  return rep;
}

}  // namespace dlt
