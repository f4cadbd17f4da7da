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

#include "dlt/transforms.hpp"

#include <cmath>
#include <sstream>

#include "dlt/common.hpp"

namespace dlt {

namespace {

constexpr int kSide = 28;
constexpr double kCenter = 13.5;  // rotation/shear/zoom pivot
constexpr double kDegToRad = 3.141592653589793 / 180.0;

void check_image(const Tensor& img) {
  require(img.shape() == std::vector<int>({1, kSide, kSide}),
          "transform input must be [1,28,28], got " + img.shape_str());
}

// Sampling runs in double so the resample stays within 1e-6 of exact
// per-pixel inverse mapping; only the final store rounds to float.
double sample_bilinear(const float* img, double sy, double sx) {
  const int x0 = static_cast<int>(std::floor(sx));
  const int y0 = static_cast<int>(std::floor(sy));
  const double fx = sx - static_cast<double>(x0);
  const double fy = sy - static_cast<double>(y0);
  auto px = [&](int y, int x) -> double {
    if (y < 0 || y >= kSide || x < 0 || x >= kSide) return 0.0;
    return img[y * kSide + x];
  };
  return (1.0 - fy) * ((1.0 - fx) * px(y0, x0) + fx * px(y0, x0 + 1)) +
         fy * ((1.0 - fx) * px(y0 + 1, x0) + fx * px(y0 + 1, x0 + 1));
}

double sample_nearest(const float* img, double sy, double sx) {
  const int x = static_cast<int>(std::lround(sx));
  const int y = static_cast<int>(std::lround(sy));
  if (y < 0 || y >= kSide || x < 0 || x >= kSide) return 0.0;
  return img[y * kSide + x];
}

// source_rel = M * dst_rel - t, all relative to the image center
struct InverseAffine {
  double m00 = 1, m01 = 0, m10 = 0, m11 = 1;
  double tx = 0, ty = 0;  // subtracted after the linear part
};

Tensor resample(const Tensor& image, const InverseAffine& a, Interp interp) {
  Tensor out({1, kSide, kSide});
  const float* src = image.data();
  float* dst = out.data();
  for (int r = 0; r < kSide; ++r) {
    const double dy = static_cast<double>(r) - kCenter;
    for (int c = 0; c < kSide; ++c) {
      const double dx = static_cast<double>(c) - kCenter;
      const double sx = a.m00 * dx + a.m01 * dy - a.tx + kCenter;
      const double sy = a.m10 * dx + a.m11 * dy - a.ty + kCenter;
      dst[r * kSide + c] = static_cast<float>(
          interp == Interp::Bilinear ? sample_bilinear(src, sy, sx) : sample_nearest(src, sy, sx));
    }
  }
  return out;
}

}  // namespace

void TransformSpec::validate() const {
  switch (kind) {
    case TransformKind::Rotation:
      require(p0 >= 0.0f && p0 <= 180.0f, "rotation max_degrees must be in [0,180], got " +
                                              std::to_string(p0));
      break;
    case TransformKind::Shift:
      require(p0 >= 0.0f && p0 <= 1.0f && p1 >= 0.0f && p1 <= 1.0f,
              "shift fractions must be in [0,1]");
      break;
    case TransformKind::Shear:
      require(p0 >= 0.0f && p0 < 90.0f, "shear max_degrees must be in [0,90), got " +
                                            std::to_string(p0));
      break;
    case TransformKind::Zoom:
      require(p0 > 0.0f && p0 <= p1, "zoom range needs 0 < lo <= hi");
      break;
    case TransformKind::HFlip:
      break;
    case TransformKind::Compose:
      for (const auto& c : children) c.validate();
      break;
  }
}

std::string TransformSpec::describe() const {
  std::ostringstream os;
  auto num = [](float v) {
    std::ostringstream s;
    s << v;
    return s.str();
  };
  switch (kind) {
    case TransformKind::Rotation: os << "rotation_" << num(p0); break;
    case TransformKind::Shift: os << "shift_" << num(p0); break;
    case TransformKind::Shear: os << "shear_" << num(p0); break;
    case TransformKind::Zoom: os << "zoom_" << num(p0) << "_" << num(p1); break;
    case TransformKind::HFlip: os << "hflip"; break;
    case TransformKind::Compose: {
      if (children.empty()) return "identity";
      for (std::size_t i = 0; i < children.size(); ++i)
        os << (i ? "+" : "") << children[i].describe();
      break;
    }
  }
  return os.str();
}

TransformSpec rotation(float max_degrees, SampleMode mode, std::uint64_t seed) {
  TransformSpec s;
  s.kind = TransformKind::Rotation;
  s.p0 = max_degrees;
  s.mode = mode;
  s.seed = seed;
  s.validate();
  return s;
}

TransformSpec shift(float fx, float fy, SampleMode mode, std::uint64_t seed) {
  TransformSpec s;
  s.kind = TransformKind::Shift;
  s.p0 = fx;
  s.p1 = fy;
  s.mode = mode;
  s.seed = seed;
  s.validate();
  return s;
}

TransformSpec shear(float max_degrees, SampleMode mode, std::uint64_t seed) {
  TransformSpec s;
  s.kind = TransformKind::Shear;
  s.p0 = max_degrees;
  s.mode = mode;
  s.seed = seed;
  s.validate();
  return s;
}

TransformSpec zoom(float lo, float hi, SampleMode mode, std::uint64_t seed) {
  TransformSpec s;
  s.kind = TransformKind::Zoom;
  s.p0 = lo;
  s.p1 = hi;
  s.mode = mode;
  s.seed = seed;
  s.validate();
  return s;
}

TransformSpec hflip_spec() {
  TransformSpec s;
  s.kind = TransformKind::HFlip;
  return s;
}

TransformSpec compose(std::vector<TransformSpec> specs) {
  TransformSpec s;
  s.kind = TransformKind::Compose;
  s.children = std::move(specs);
  s.validate();
  return s;
}

Tensor hflip(const Tensor& image) {
  check_image(image);
  Tensor out({1, kSide, kSide});
  for (int r = 0; r < kSide; ++r)
    for (int c = 0; c < kSide; ++c)
      out[static_cast<std::size_t>(r) * kSide + c] =
          image[static_cast<std::size_t>(r) * kSide + (kSide - 1 - c)];
  return out;
}

Tensor apply(const TransformSpec& spec, const Tensor& image, std::uint64_t draw_seed) {
  spec.validate();
  check_image(image);

  if (spec.kind == TransformKind::Compose) {
    Tensor cur = image;
    for (std::size_t i = 0; i < spec.children.size(); ++i)
      cur = apply(spec.children[i], cur, hash_combine(draw_seed, i + 1));
    return cur;
  }
  if (spec.kind == TransformKind::HFlip) return hflip(image);

  Rng rng(hash_combine(spec.seed, draw_seed));
  const bool fixed = spec.mode == SampleMode::Fixed;
  InverseAffine a;
  switch (spec.kind) {
    case TransformKind::Rotation: {
      const double deg = fixed ? spec.p0 : rng.uniform(-spec.p0, spec.p0);
      const double cs = std::cos(deg * kDegToRad);
      const double sn = std::sin(deg * kDegToRad);
      a = {cs, sn, -sn, cs, 0.0, 0.0};
      break;
    }
    case TransformKind::Shift: {
      a.tx = static_cast<double>(fixed ? spec.p0 : rng.uniform(-spec.p0, spec.p0)) * kSide;
      a.ty = static_cast<double>(fixed ? spec.p1 : rng.uniform(-spec.p1, spec.p1)) * kSide;
      break;
    }
    case TransformKind::Shear: {
      const double deg = fixed ? spec.p0 : rng.uniform(-spec.p0, spec.p0);
      a.m01 = -std::tan(deg * kDegToRad);  // inverse of forward x' = x + tan(deg) * y
      break;
    }
    case TransformKind::Zoom: {
      // augmentation-style factor: sampling coordinates scale by z, so z > 1
      // shrinks the content (zooms out) and z < 1 magnifies it
      const double z = fixed ? 0.5 * (static_cast<double>(spec.p0) + spec.p1)
                             : rng.uniform(spec.p0, spec.p1);
      a.m00 = z;
      a.m11 = z;
      break;
    }
    default:
      break;
  }
  return resample(image, a, spec.interp);
}

}  // namespace dlt
