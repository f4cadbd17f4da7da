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

#include "dlt/adversarial.hpp"

#include <bit>
#include <cmath>
#include <fstream>

#include "dlt/common.hpp"

namespace dlt {

namespace {

Tensor as_single(const Tensor& x, const Model& m) {
  const auto& in = m.input_shape();
  if (x.rank() == static_cast<int>(in.size())) return x;
  return x.reshaped(in);  // drops a leading batch dim of 1
}

void norms(const Tensor& a, const Tensor& b, double* linf, double* l2) {
  double mx = 0.0, s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - b[i];
    mx = std::max(mx, std::abs(d));
    s += d * d;
  }
  *linf = mx;
  *l2 = std::sqrt(s);
}

float sign_of(float v) { return v > 0.0f ? 1.0f : (v < 0.0f ? -1.0f : 0.0f); }

}  // namespace

AdversarialResult fgsm(const Model& m, const Tensor& x, int y_true, double eps, int target) {
  require(eps >= 0.0, "epsilon must be >= 0");
  const Tensor x0 = as_single(x, m);
  AdversarialResult r;
  r.label_orig = predict_one(m, x0);

  const LossSpec spec = target >= 0 ? LossSpec::ce(target) : LossSpec::ce(y_true);
  Tensor g = input_gradient(m, x0, spec);
  const float step = static_cast<float>(target >= 0 ? -eps : eps);
  Tensor adv = x0;
  for (std::size_t i = 0; i < adv.size(); ++i) {
    float v = adv[i] + step * sign_of(g[i]);
    adv[i] = std::min(1.0f, std::max(0.0f, v));
  }
  r.x_adv = adv;
  r.label_adv = predict_one(m, adv);
  r.success = r.label_adv != r.label_orig;
  r.iterations = 1;
  norms(adv, x0, &r.linf, &r.l2);
  require(r.linf <= eps + 1e-6, "fgsm left the epsilon ball");
  return r;
}

AdversarialResult ifgsm(const Model& m, const Tensor& x, int y_true, double eps, int steps,
                        double step_size, int target) {
  require(eps >= 0.0, "epsilon must be >= 0");
  require(steps >= 1, "steps must be >= 1");
  const Tensor x0 = as_single(x, m);
  AdversarialResult r;
  r.label_orig = predict_one(m, x0);
  if (step_size * steps < eps)
    r.warning = "step_size * steps < eps: the eps ball cannot be reached";

  const LossSpec spec = target >= 0 ? LossSpec::ce(target) : LossSpec::ce(y_true);
  const float dir = target >= 0 ? -1.0f : 1.0f;
  Tensor adv = x0;
  for (int it = 0; it < steps; ++it) {
    Tensor g = input_gradient(m, adv, spec);
    for (std::size_t i = 0; i < adv.size(); ++i) {
      float v = adv[i] + dir * static_cast<float>(step_size) * sign_of(g[i]);
      // project onto the L-inf ball around x0, then the pixel box
      v = std::min(x0[i] + static_cast<float>(eps), std::max(x0[i] - static_cast<float>(eps), v));
      adv[i] = std::min(1.0f, std::max(0.0f, v));
    }
    r.iterations = it + 1;
    r.label_adv = predict_one(m, adv);
    if (r.label_adv != r.label_orig) break;
  }
  r.x_adv = adv;
  r.label_adv = predict_one(m, adv);
  r.success = r.label_adv != r.label_orig;
  norms(adv, x0, &r.linf, &r.l2);
  require(r.linf <= eps + 1e-6, "ifgsm left the epsilon ball");
  return r;
}

AdversarialResult deepfool(const Model& m, const Tensor& x, int max_iter, double overshoot) {
  require(max_iter >= 1, "max_iter must be >= 1");
  require(overshoot >= 0.0, "overshoot must be >= 0");
  const Tensor x0 = as_single(x, m);
  const int classes = m.num_classes();

  AdversarialResult r;
  r.label_orig = predict_one(m, x0);

  std::vector<int> bshape = {1};
  for (int d : m.input_shape()) bshape.push_back(d);

  // the working point stays inside the pixel box; on mostly-dark images an
  // unconstrained walk would lose most of its perturbation to the final clip
  Tensor cur = x0;
  Tensor total(x0.shape());
  int it = 0;
  for (; it < max_iter; ++it) {
    ForwardContext ctx;
    forward_ctx(m, cur.reshaped(bshape), ctx);
    const Tensor& logits = ctx.logits(m);
    int label = 0;
    for (int j = 1; j < classes; ++j)
      if (logits.at2(0, j) > logits.at2(0, label)) label = j;
    if (it > 0 && label != r.label_orig) break;

    std::vector<Tensor> grads(static_cast<std::size_t>(classes));
    for (int k = 0; k < classes; ++k) grads[static_cast<std::size_t>(k)] = input_gradient(m, cur, LossSpec::logit(k));

    const Tensor& g_orig = grads[static_cast<std::size_t>(r.label_orig)];
    double best_ratio = 0.0;
    int best_k = -1;
    double best_fdiff = 0.0, best_wnorm2 = 0.0;
    for (int k = 0; k < classes; ++k) {
      if (k == r.label_orig) continue;
      double wnorm2 = 0.0;
      for (std::size_t i = 0; i < x0.size(); ++i) {
        const double w = static_cast<double>(grads[static_cast<std::size_t>(k)][i]) - g_orig[i];
        wnorm2 += w * w;
      }
      if (wnorm2 < 1e-20) continue;
      const double fdiff =
          static_cast<double>(logits.at2(0, k)) - logits.at2(0, r.label_orig);
      const double ratio = std::abs(fdiff) / std::sqrt(wnorm2);
      if (best_k < 0 || ratio < best_ratio) {
        best_ratio = ratio;
        best_k = k;
        best_fdiff = fdiff;
        best_wnorm2 = wnorm2;
      }
    }
    if (best_k < 0) break;  // degenerate gradients; give up

    const double scale = (std::abs(best_fdiff) + 1e-4) / best_wnorm2;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      const float w = grads[static_cast<std::size_t>(best_k)][i] - g_orig[i];
      total[i] += static_cast<float>(scale) * w;
      cur[i] = std::min(1.0f, std::max(0.0f, x0[i] + total[i]));
    }
  }
  r.iterations = it;

  Tensor adv = x0;
  for (std::size_t i = 0; i < adv.size(); ++i) {
    float v = x0[i] + static_cast<float>(1.0 + overshoot) * total[i];
    adv[i] = std::min(1.0f, std::max(0.0f, v));
  }
  r.x_adv = adv;
  r.label_adv = predict_one(m, adv);
  r.success = r.label_adv != r.label_orig;
  norms(adv, x0, &r.linf, &r.l2);
  return r;
}

std::vector<std::pair<double, double>> robustness_curve(const Model& m, const Dataset& subset,
                                                        AttackKind kind,
                                                        const std::vector<double>& eps_grid) {
  require(!eps_grid.empty() && eps_grid[0] == 0.0, "epsilon grid must start at 0");
  require(std::is_sorted(eps_grid.begin(), eps_grid.end()), "epsilon grid must be ascending");
  require(subset.size() > 0, "robustness curve needs a nonempty subset");

  std::vector<std::pair<double, double>> curve;
  for (double eps : eps_grid) {
    long correct = 0;
    for (std::size_t i = 0; i < subset.size(); ++i) {
      const Tensor img = subset.image(i);
      const int y = subset.labels[i];
      const AdversarialResult r =
          kind == AttackKind::Fgsm
              ? fgsm(m, img, y, eps)
              : ifgsm(m, img, y, eps, 10, eps / 4.0 > 0 ? eps / 4.0 : 0.01);
      const int pred = r.label_adv;
      if (pred == y) ++correct;
    }
    curve.push_back({eps, 100.0 * static_cast<double>(correct) / subset.size()});
  }
  return curve;
}

void write_adv_corpus(const std::string& path, const std::vector<AdvRecord>& records) {
  std::ofstream f(path, std::ios::binary);
  require(f.good(), "cannot open adversarial corpus for writing: " + path);
  auto put_u32 = [&](std::uint32_t v) {
    std::uint8_t b[4] = {static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v >> 8),
                         static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>(v >> 24)};
    f.write(reinterpret_cast<const char*>(b), 4);
  };
  for (const auto& r : records) {
    require(r.pixels.size() == 784, "adversarial record needs 784 pixels");
    put_u32(r.input_id);
    put_u32(std::bit_cast<std::uint32_t>(r.eps));
    f.write(reinterpret_cast<const char*>(&r.success), 1);
    for (float p : r.pixels) put_u32(std::bit_cast<std::uint32_t>(p));
  }
}

std::vector<AdvRecord> read_adv_corpus(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  require(f.good(), "cannot open adversarial corpus: " + path);
  auto get_u32 = [&](std::uint32_t* v) {
    std::uint8_t b[4];
    f.read(reinterpret_cast<char*>(b), 4);
    if (f.gcount() != 4) return false;
    *v = std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) | (std::uint32_t(b[2]) << 16) |
         (std::uint32_t(b[3]) << 24);
    return true;
  };
  std::vector<AdvRecord> out;
  while (true) {
    AdvRecord r;
    std::uint32_t v;
    if (!get_u32(&v)) break;  // clean EOF
    r.input_id = v;
    require(get_u32(&v), "truncated adversarial corpus: " + path);
    r.eps = std::bit_cast<float>(v);
    char s;
    f.read(&s, 1);
    require(f.gcount() == 1, "truncated adversarial corpus: " + path);
    r.success = static_cast<std::uint8_t>(s);
    r.pixels.resize(784);
    for (std::size_t i = 0; i < 784; ++i) {
      require(get_u32(&v), "truncated adversarial corpus: " + path);
      r.pixels[i] = std::bit_cast<float>(v);
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace dlt
