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

#include "dlt/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "dlt/train.hpp"

namespace dlt {

std::string CoverageReport::to_json() const {
  std::ostringstream os;
  os << "{\"metric\":\"" << metric << "\",\"params\":{";
  if (metric == "top_k_coverage")
    os << "\"k\":" << k;
  else
    os << "\"threshold\":" << threshold;
  os << "},\"value\":" << value << ",\"per_layer\":[";
  for (std::size_t i = 0; i < per_layer.size(); ++i) {
    os << (i ? "," : "") << "{\"layer\":" << per_layer[i].layer
       << ",\"covered\":" << per_layer[i].covered << ",\"total\":" << per_layer[i].total << "}";
  }
  os << "]}";
  return os.str();
}

namespace {

void check_traces(const std::vector<ActivationTrace>& traces) {
  require(!traces.empty(), "coverage needs at least one trace");
  for (const auto& t : traces)
    require(t.acts.size() == traces[0].acts.size(), "traces disagree on layer count");
}

}  // namespace

CoverageReport neuron_coverage(const std::vector<ActivationTrace>& traces, double t) {
  check_traces(traces);
  require(t >= 0.0 && t <= 1.0, "coverage threshold must be in [0,1]");
  const std::size_t n_layers = traces[0].acts.size();

  CoverageReport rep;
  rep.metric = "neuron_coverage";
  rep.threshold = t;
  std::size_t covered_total = 0, total = 0;
  for (std::size_t li = 0; li < n_layers; ++li) {
    const std::size_t width = traces[0].acts[li].size();
    float lo = traces[0].acts[li][0], hi = lo;
    for (const auto& tr : traces)
      for (float v : tr.acts[li]) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    const float range = hi - lo;
    int covered = 0;
    for (std::size_t j = 0; j < width; ++j) {
      bool on = false;
      for (const auto& tr : traces) {
        const float scaled = range > 0.0f ? (tr.acts[li][j] - lo) / range : 0.0f;
        if (scaled > t) {
          on = true;
          break;
        }
      }
      covered += on ? 1 : 0;
    }
    rep.per_layer.push_back({traces[0].layers[li], covered, static_cast<int>(width)});
    covered_total += static_cast<std::size_t>(covered);
    total += width;
  }
  rep.value = total > 0 ? static_cast<double>(covered_total) / static_cast<double>(total) : 0.0;
  return rep;
}

CoverageReport top_k_coverage(const std::vector<ActivationTrace>& traces, int k) {
  check_traces(traces);
  const std::size_t n_layers = traces[0].acts.size();
  for (std::size_t li = 0; li < n_layers; ++li)
    require(k >= 1 && static_cast<std::size_t>(k) <= traces[0].acts[li].size(),
            "k out of range for layer width " + std::to_string(traces[0].acts[li].size()));

  CoverageReport rep;
  rep.metric = "top_k_coverage";
  rep.k = k;
  std::size_t covered_total = 0, total = 0;
  std::vector<int> order;
  for (std::size_t li = 0; li < n_layers; ++li) {
    const std::size_t width = traces[0].acts[li].size();
    std::vector<char> seen(width, 0);
    for (const auto& tr : traces) {
      order.resize(width);
      std::iota(order.begin(), order.end(), 0);
      const auto& a = tr.acts[li];
      // ties break toward the lower index: stable sort on value only
      std::stable_sort(order.begin(), order.end(),
                       [&](int x, int y) { return a[static_cast<std::size_t>(x)] > a[static_cast<std::size_t>(y)]; });
      for (int j = 0; j < k; ++j) seen[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])] = 1;
    }
    const int covered = static_cast<int>(std::count(seen.begin(), seen.end(), 1));
    rep.per_layer.push_back({traces[0].layers[li], covered, static_cast<int>(width)});
    covered_total += static_cast<std::size_t>(covered);
    total += width;
  }
  rep.value = total > 0 ? static_cast<double>(covered_total) / static_cast<double>(total) : 0.0;
  return rep;
}

std::size_t TraceIndex::total() const {
  std::size_t n = 0;
  for (const auto& c : by_class) n += c.size();
  return n;
}

namespace {

// the reference layer: penultimate weighted layer when there are two or more
int reference_layer(const Model& m) {
  const std::vector<int> wl = m.weighted_layers();
  require(!wl.empty(), "model has no weighted layers");
  return wl.size() >= 2 ? wl[wl.size() - 2] : wl[0];
}

std::vector<float> trace_at(const Model& m, int layer, const Tensor& x) {
  ForwardResult r = forward(m, x.rank() == 3 ? x.reshaped({1, x.dim(0), x.dim(1), x.dim(2)}) : x,
                            true);
  const ActivationTrace& tr = r.traces[0];
  for (std::size_t i = 0; i < tr.layers.size(); ++i)
    if (tr.layers[i] == layer) return tr.acts[i];
  fail("trace layer not found");
}

double l2_dist(const std::vector<float>& a, const std::vector<float>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

TraceIndex build_trace_index(const Model& m, const Dataset& train_set) {
  require(train_set.size() > 0, "trace index needs a nonempty set");
  TraceIndex idx;
  idx.layer = reference_layer(m);
  idx.by_class.resize(static_cast<std::size_t>(m.num_classes()));

  constexpr int kBatch = 256;
  const int n = static_cast<int>(train_set.size());
  std::vector<int> ids;
  for (int start = 0; start < n; start += kBatch) {
    const int b = std::min(kBatch, n - start);
    ids.resize(static_cast<std::size_t>(b));
    for (int i = 0; i < b; ++i) ids[static_cast<std::size_t>(i)] = start + i;
    ForwardResult r = forward(m, train_set.gather(ids), true);
    for (int i = 0; i < b; ++i) {
      const ActivationTrace& tr = r.traces[static_cast<std::size_t>(i)];
      for (std::size_t li = 0; li < tr.layers.size(); ++li) {
        if (tr.layers[li] == idx.layer) {
          idx.by_class[static_cast<std::size_t>(train_set.labels[static_cast<std::size_t>(start + i)])]
              .push_back(tr.acts[li]);
          break;
        }
      }
    }
  }
  int classes_present = 0;
  for (const auto& c : idx.by_class)
    if (!c.empty()) ++classes_present;
  require(classes_present >= 2, "surprise adequacy needs traces for at least 2 classes");
  return idx;
}

double dsa(const Model& m, const TraceIndex& index, const Tensor& x, int class_hint) {
  const int cls = class_hint >= 0 ? class_hint : predict_one(m, x);
  require(cls < static_cast<int>(index.by_class.size()), "class out of range");
  const auto& same = index.by_class[static_cast<std::size_t>(cls)];
  require(!same.empty(), "no training traces for class " + std::to_string(cls));

  const std::vector<float> a = trace_at(m, index.layer, x);
  double best = kDsaInfinity;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < same.size(); ++i) {
    const double d = l2_dist(a, same[i]);
    if (d < best) {
      best = d;
      best_i = i;
    }
  }
  const std::vector<float>& a_nn = same[best_i];

  double other = kDsaInfinity;
  for (std::size_t c = 0; c < index.by_class.size(); ++c) {
    if (static_cast<int>(c) == cls) continue;
    for (const auto& tr : index.by_class[c]) other = std::min(other, l2_dist(a_nn, tr));
  }
  if (other == 0.0) return best == 0.0 ? 0.0 : kDsaInfinity;
  return best / other;
}

std::vector<int> select_surprising(const Model& m, const TraceIndex& index,
                                   const Dataset& candidates, double lo, double hi, int n) {
  require(lo < hi, "surprise band needs lo < hi");
  std::vector<std::pair<double, int>> scored;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double s = dsa(m, index, candidates.image(i));
    if (s >= lo && s <= hi) scored.push_back({s, static_cast<int>(i)});
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  if (static_cast<int>(scored.size()) > n) scored.resize(static_cast<std::size_t>(n));
  std::vector<int> out;
  out.reserve(scored.size());
  for (const auto& [s, i] : scored) out.push_back(i);
  return out;
}

}  // namespace dlt
