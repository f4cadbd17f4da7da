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

#include "dlt/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "dlt/common.hpp"

namespace dlt {

namespace {

constexpr int kSide = 28;

struct Pt {
  float x, y;
};

using Stroke = std::vector<Pt>;

void arc(Stroke& s, float cx, float cy, float rx, float ry, float a0_deg, float a1_deg,
         int segments = 16) {
  for (int i = 0; i <= segments; ++i) {
    const float a = (a0_deg + (a1_deg - a0_deg) * static_cast<float>(i) / segments) *
                    3.14159265f / 180.0f;
    s.push_back({cx + rx * std::cos(a), cy + ry * std::sin(a)});
  }
}

void line(Stroke& s, Pt a, Pt b) {
  s.push_back(a);
  s.push_back(b);
}

void bez(Stroke& s, Pt a, Pt c, Pt b, int segments = 12) {
  for (int i = 0; i <= segments; ++i) {
    const float t = static_cast<float>(i) / segments;
    const float u = 1.0f - t;
    s.push_back({u * u * a.x + 2 * u * t * c.x + t * t * b.x,
                 u * u * a.y + 2 * u * t * c.y + t * t * b.y});
  }
}

// y grows downward; skeletons live in a ~[8,20]x[5,23] box around (14,14)
std::vector<Stroke> skeleton(int digit, Rng& rng) {
  std::vector<Stroke> st;
  auto add = [&]() -> Stroke& {
    st.emplace_back();
    return st.back();
  };
  switch (digit) {
    case 0:
      arc(add(), 14, 14, 4.7f, 7.3f, 0, 360, 24);
      break;
    case 1: {
      const float slant = rng.uniform(-0.8f, 0.8f);
      line(add(), {14 + slant, 5.8f}, {14 - slant, 22.2f});
      if (rng.next_double() < 0.7) line(add(), {14 + slant, 5.8f}, {11.2f + slant, 9.2f});
      if (rng.next_double() < 0.3) line(add(), {10.8f, 22.2f}, {17.2f, 22.2f});
      break;
    }
    case 2: {
      arc(add(), 14, 10.2f, 4.4f, 4.2f, 175, 345, 14);
      Stroke& s = add();
      bez(s, {18.2f, 11.4f}, {15.5f, 16.5f}, {9.4f, 21.8f});
      line(add(), {9.4f, 21.8f}, {18.6f, 21.8f});
      break;
    }
    case 3:
      arc(add(), 13.6f, 9.8f, 4.3f, 4.1f, 200, 445, 16);
      arc(add(), 13.6f, 18.0f, 4.6f, 4.3f, 275, 520, 16);
      break;
    case 4: {
      const float vx = 15.6f + rng.uniform(-0.6f, 0.6f);
      line(add(), {12.4f, 5.8f}, {8.2f, 15.8f});
      line(add(), {8.2f, 15.8f}, {19.2f, 15.8f});
      line(add(), {vx, 8.4f}, {vx, 22.4f});
      break;
    }
    case 5: {
      line(add(), {17.6f, 6.2f}, {10.2f, 6.2f});
      line(add(), {10.2f, 6.2f}, {9.7f, 13.0f});
      arc(add(), 12.9f, 16.9f, 4.8f, 4.7f, 252, 515, 16);
      break;
    }
    case 6: {
      Stroke& s = add();
      bez(s, {16.8f, 5.6f}, {10.6f, 8.8f}, {9.9f, 16.4f});
      arc(add(), 13.6f, 17.4f, 3.9f, 4.5f, 0, 360, 20);
      break;
    }
    case 7: {
      line(add(), {9.2f, 7.0f}, {18.6f, 7.0f});
      line(add(), {18.6f, 7.0f}, {11.6f, 22.4f});
      if (rng.next_double() < 0.35) line(add(), {11.9f, 14.6f}, {16.3f, 14.6f});
      break;
    }
    case 8:
      arc(add(), 14, 9.9f, 3.8f, 4.1f, 0, 360, 20);
      arc(add(), 14, 18.1f, 4.4f, 4.5f, 0, 360, 20);
      break;
    case 9: {
      arc(add(), 14, 10.1f, 4.1f, 4.3f, 0, 360, 20);
      Stroke& s = add();
      bez(s, {18.1f, 10.8f}, {18.5f, 16.8f}, {14.9f, 22.3f});
      break;
    }
    default:
      fail("digit out of range");
  }
  return st;
}

float seg_dist(Pt p, Pt a, Pt b) {
  const float vx = b.x - a.x, vy = b.y - a.y;
  const float wx = p.x - a.x, wy = p.y - a.y;
  const float vv = vx * vx + vy * vy;
  float t = vv > 1e-9f ? (wx * vx + wy * vy) / vv : 0.0f;
  t = std::min(1.0f, std::max(0.0f, t));
  const float dx = wx - t * vx, dy = wy - t * vy;
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace

Tensor synth_digit_image(int digit, std::uint64_t sample_seed) {
  require(digit >= 0 && digit <= 9, "digit out of range [0,9]");
  Rng rng(hash_combine(sample_seed, static_cast<std::uint64_t>(digit) + 0xd161));

  std::vector<Stroke> strokes = skeleton(digit, rng);

  // per-sample style: rotate/shear/scale/translate the control points.
  // pose variety is deliberately wide (handwriting slants a lot); classifiers
  // trained on it keep the rotation tolerance handwritten digits show
  const float rot = rng.uniform(-20.0f, 20.0f) * 3.14159265f / 180.0f;
  const float shr = std::tan(rng.uniform(-14.0f, 14.0f) * 3.14159265f / 180.0f);
  const float scale = rng.uniform(0.80f, 1.15f);
  const float tx = rng.uniform(-2.2f, 2.2f);
  const float ty = rng.uniform(-2.0f, 2.0f);
  const float cs = std::cos(rot) * scale, sn = std::sin(rot) * scale;
  const float thick = rng.uniform(1.0f, 2.6f);
  const float ink = rng.uniform(0.72f, 1.0f);
  // sloppy samples blur class margins the way careless handwriting does
  const float slop = rng.next_double() < 0.12 ? 2.0f : 1.0f;

  for (Stroke& s : strokes) {
    for (Pt& p : s) {
      const float jx = rng.normal(0.0f, 0.6f * slop);
      const float jy = rng.normal(0.0f, 0.6f * slop);
      float x = p.x - 14.0f + jx;
      float y = p.y - 14.0f + jy;
      x += shr * y;
      const float xr = cs * x - sn * y;
      const float yr = sn * x + cs * y;
      p.x = xr + 14.0f + tx;
      p.y = yr + 14.0f + ty;
    }
  }

  // pen-lift gaps and per-stroke ink strength
  std::vector<float> stroke_ink(strokes.size());
  for (std::size_t si = 0; si < strokes.size(); ++si) {
    stroke_ink[si] = rng.uniform(0.55f, 1.0f);
    Stroke& s = strokes[si];
    if (s.size() >= 6 && rng.next_double() < 0.18) {
      const int cut = rng.uniform_int(1, static_cast<int>(s.size()) - 4);
      const int len = rng.uniform_int(1, std::min(3, static_cast<int>(s.size()) - cut - 2));
      Stroke tail(s.begin() + cut + len, s.end());
      s.resize(static_cast<std::size_t>(cut));
      stroke_ink.push_back(stroke_ink[si]);
      strokes.push_back(std::move(tail));
    }
  }

  Tensor out({1, kSide, kSide});
  const float r = 0.5f * thick;
  for (int py = 0; py < kSide; ++py) {
    for (int px = 0; px < kSide; ++px) {
      const Pt p{static_cast<float>(px), static_cast<float>(py)};
      float d = 1e9f;
      float local_ink = 1.0f;
      for (std::size_t si = 0; si < strokes.size(); ++si) {
        const Stroke& s = strokes[si];
        for (std::size_t i = 0; i + 1 < s.size(); ++i) {
          const float di = seg_dist(p, s[i], s[i + 1]);
          if (di < d) {
            d = di;
            local_ink = stroke_ink[si];
          }
        }
      }
      // soft pen edge, ~1.2px falloff, plus ink texture
      float v = std::min(1.0f, std::max(0.0f, (r + 0.85f - d) / 1.2f)) * ink * local_ink;
      if (v > 0.0f) v = std::min(1.0f, std::max(0.0f, v * (1.0f + rng.normal(0.0f, 0.12f))));
      out[static_cast<std::size_t>(py) * kSide + px] = v;
    }
  }
  return out;
}

Dataset synth_digits(std::size_t n, std::uint64_t seed) {
  require(n >= 1, "synth_digits needs n >= 1");
  Dataset ds;
  ds.images = Tensor({static_cast<int>(n), 1, 28, 28});
  ds.labels.resize(n);

  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i % 10);
  Rng order(hash_combine(seed, 0x0bdebull));
  order.shuffle(labels);

  const std::size_t px = 28 * 28;
  for (std::size_t i = 0; i < n; ++i) {
    const int digit = labels[i];
    Tensor img = synth_digit_image(digit, hash_combine(seed, i));
    std::memcpy(ds.images.data() + i * px, img.data(), px * sizeof(float));
    ds.labels[i] = digit;
  }
  ds.provenance.images_path = "<synthetic>";
  ds.provenance.labels_path = "<synthetic>";
  ds.provenance.note = "synthetic n=" + std::to_string(n) + " seed=" + std::to_string(seed);
  return ds;
}

}  // namespace dlt
