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

#include "dlt/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dlt::kernels {

void set_num_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void gemm_nt(const float* a, int m, int k, const float* b, int n, float* c) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    const float* ai = a + static_cast<std::size_t>(i) * k;
    float* ci = c + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      const float* bj = b + static_cast<std::size_t>(j) * k;
      float acc = 0.0f;
#pragma omp simd reduction(+ : acc)
      for (int p = 0; p < k; ++p) acc += ai[p] * bj[p];
      ci[j] = acc;
    }
  }
}

void gemm_nn(const float* a, int m, int k, const float* b, int n, float* c) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    const float* ai = a + static_cast<std::size_t>(i) * k;
    float* ci = c + static_cast<std::size_t>(i) * n;
    std::memset(ci, 0, static_cast<std::size_t>(n) * sizeof(float));
    for (int p = 0; p < k; ++p) {
      const float av = ai[p];
      const float* bp = b + static_cast<std::size_t>(p) * n;
#pragma omp simd
      for (int j = 0; j < n; ++j) ci[j] += av * bp[j];
    }
  }
}

void gemm_tn(const float* a, int k, int m, const float* b, int n, float* c) {
  // row tiles share one streaming pass over b, which dominates traffic when
  // k is the batch*positions axis
  constexpr int kTile = 8;
  const int tiles = (m + kTile - 1) / kTile;
#pragma omp parallel for schedule(static)
  for (int t = 0; t < tiles; ++t) {
    const int i0 = t * kTile;
    const int rows = std::min(kTile, m - i0);
    for (int r = 0; r < rows; ++r)
      std::memset(c + static_cast<std::size_t>(i0 + r) * n, 0,
                  static_cast<std::size_t>(n) * sizeof(float));
    for (int p = 0; p < k; ++p) {
      const float* ap = a + static_cast<std::size_t>(p) * m + i0;
      const float* bp = b + static_cast<std::size_t>(p) * n;
      for (int r = 0; r < rows; ++r) {
        const float av = ap[r];
        float* ci = c + static_cast<std::size_t>(i0 + r) * n;
#pragma omp simd
        for (int j = 0; j < n; ++j) ci[j] += av * bp[j];
      }
    }
  }
}

void im2col(const float* x, int n, int c, int h, int w, int kh, int kw, float* col) {
  const int oh = h - kh + 1;
  const int ow = w - kw + 1;
  const int patch = c * kh * kw;
#pragma omp parallel for schedule(static)
  for (int img = 0; img < n; ++img) {
    const float* xi = x + static_cast<std::size_t>(img) * c * h * w;
    float* ci = col + static_cast<std::size_t>(img) * oh * ow * patch;
    for (int oy = 0; oy < oh; ++oy) {
      for (int ox = 0; ox < ow; ++ox) {
        float* row = ci + (static_cast<std::size_t>(oy) * ow + ox) * patch;
        for (int ch = 0; ch < c; ++ch) {
          const float* base = xi + (static_cast<std::size_t>(ch) * h + oy) * w + ox;
          for (int ky = 0; ky < kh; ++ky) {
            const float* src = base + static_cast<std::size_t>(ky) * w;
            for (int kx = 0; kx < kw; ++kx) *row++ = src[kx];
          }
        }
      }
    }
  }
}

void col2im(const float* col, int n, int c, int h, int w, int kh, int kw, float* dx) {
  const int oh = h - kh + 1;
  const int ow = w - kw + 1;
  const int patch = c * kh * kw;
#pragma omp parallel for schedule(static)
  for (int img = 0; img < n; ++img) {
    const float* ci = col + static_cast<std::size_t>(img) * oh * ow * patch;
    float* xi = dx + static_cast<std::size_t>(img) * c * h * w;
    for (int ch = 0; ch < c; ++ch) {
      for (int y = 0; y < h; ++y) {
        for (int x2 = 0; x2 < w; ++x2) {
          // gather every patch position that read (y,x2)
          float acc = 0.0f;
          const int ky_lo = std::max(0, y - oh + 1);
          const int ky_hi = std::min(kh - 1, y);
          const int kx_lo = std::max(0, x2 - ow + 1);
          const int kx_hi = std::min(kw - 1, x2);
          for (int ky = ky_lo; ky <= ky_hi; ++ky) {
            const int oy = y - ky;
            for (int kx = kx_lo; kx <= kx_hi; ++kx) {
              const int ox = x2 - kx;
              acc += ci[(static_cast<std::size_t>(oy) * ow + ox) * patch +
                        (static_cast<std::size_t>(ch) * kh + ky) * kw + kx];
            }
          }
          xi[(static_cast<std::size_t>(ch) * h + y) * w + x2] = acc;
        }
      }
    }
  }
}

void conv2d_forward(const float* x, int n, int ic, int h, int w, const float* wt, int oc,
                    int kh, int kw, const float* bias, float* y) {
  const int oh = h - kh + 1;
  const int ow = w - kw + 1;
  const int pos = oh * ow;
  const int patch = ic * kh * kw;
  std::vector<float> col(static_cast<std::size_t>(n) * pos * patch);
  im2col(x, n, ic, h, w, kh, kw, col.data());
  // rows: [N*pos, OC] = col * W^T as an nn-product against pre-transposed
  // weights; the axpy inner loop vectorizes where an nt dot would not.
  std::vector<float> wtt(static_cast<std::size_t>(patch) * oc);
  for (int co = 0; co < oc; ++co)
    for (int p = 0; p < patch; ++p)
      wtt[static_cast<std::size_t>(p) * oc + co] = wt[static_cast<std::size_t>(co) * patch + p];
  std::vector<float> rows(static_cast<std::size_t>(n) * pos * oc);
  gemm_nn(col.data(), n * pos, patch, wtt.data(), oc, rows.data());
#pragma omp parallel for schedule(static)
  for (int img = 0; img < n; ++img) {
    const float* ri = rows.data() + static_cast<std::size_t>(img) * pos * oc;
    float* yi = y + static_cast<std::size_t>(img) * oc * pos;
    for (int p = 0; p < pos; ++p) {
      const float* rp = ri + static_cast<std::size_t>(p) * oc;
      for (int ch = 0; ch < oc; ++ch) yi[static_cast<std::size_t>(ch) * pos + p] = rp[ch] + bias[ch];
    }
  }
}

void conv2d_backward(const float* x, int n, int ic, int h, int w, const float* wt, int oc,
                     int kh, int kw, const float* dy, float* dx, float* dw, float* db) {
  const int oh = h - kh + 1;
  const int ow = w - kw + 1;
  const int pos = oh * ow;
  const int patch = ic * kh * kw;

  // dy in row-major [N*pos, OC]
  std::vector<float> dyr(static_cast<std::size_t>(n) * pos * oc);
#pragma omp parallel for schedule(static)
  for (int img = 0; img < n; ++img) {
    const float* di = dy + static_cast<std::size_t>(img) * oc * pos;
    float* ri = dyr.data() + static_cast<std::size_t>(img) * pos * oc;
    for (int ch = 0; ch < oc; ++ch)
      for (int p = 0; p < pos; ++p)
        ri[static_cast<std::size_t>(p) * oc + ch] = di[static_cast<std::size_t>(ch) * pos + p];
  }

  if (dw != nullptr || dx != nullptr) {
    std::vector<float> col(static_cast<std::size_t>(n) * pos * patch);
    im2col(x, n, ic, h, w, kh, kw, col.data());
    if (dw != nullptr) {
      // dW [OC, patch] = dyr^T [OC, N*pos] * col [N*pos, patch]
      gemm_tn(dyr.data(), n * pos, oc, col.data(), patch, dw);
    }
    if (dx != nullptr) {
      std::vector<float> dcol(static_cast<std::size_t>(n) * pos * patch);
      gemm_nn(dyr.data(), n * pos, oc, wt, patch, dcol.data());
      col2im(dcol.data(), n, ic, h, w, kh, kw, dx);
    }
  }
  if (db != nullptr) {
#pragma omp parallel for schedule(static)
    for (int ch = 0; ch < oc; ++ch) {
      float acc = 0.0f;
      for (int img = 0; img < n; ++img) {
        const float* di = dy + (static_cast<std::size_t>(img) * oc + ch) * pos;
        for (int p = 0; p < pos; ++p) acc += di[p];
      }
      db[ch] = acc;
    }
  }
}

void dense_forward(const float* x, int n, int in, const float* w, int out, const float* b,
                   float* y) {
  // one code path for every batch size, so per-sample outputs are
  // bit-identical whether evaluated alone or inside a batch
  std::vector<float> wt(static_cast<std::size_t>(in) * out);
  for (int o = 0; o < out; ++o)
    for (int i = 0; i < in; ++i)
      wt[static_cast<std::size_t>(i) * out + o] = w[static_cast<std::size_t>(o) * in + i];
  gemm_nn(x, n, in, wt.data(), out, y);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    float* yi = y + static_cast<std::size_t>(i) * out;
    for (int j = 0; j < out; ++j) yi[j] += b[j];
  }
}

void dense_backward(const float* x, int n, int in, const float* w, int out, const float* dy,
                    float* dx, float* dw, float* db) {
  if (dx != nullptr) gemm_nn(dy, n, out, w, in, dx);
  if (dw != nullptr) gemm_tn(dy, n, out, x, in, dw);
  if (db != nullptr) {
#pragma omp parallel for schedule(static)
    for (int j = 0; j < out; ++j) {
      float acc = 0.0f;
      for (int i = 0; i < n; ++i) acc += dy[static_cast<std::size_t>(i) * out + j];
      db[j] = acc;
    }
  }
}

void maxpool_forward(const float* x, int n, int c, int h, int w, int k, float* y, int* argmax) {
  const int oh = h / k;
  const int ow = w / k;
#pragma omp parallel for schedule(static)
  for (int img = 0; img < n; ++img) {
    for (int ch = 0; ch < c; ++ch) {
      const std::size_t base = (static_cast<std::size_t>(img) * c + ch) * h * w;
      const std::size_t obase = (static_cast<std::size_t>(img) * c + ch) * oh * ow;
      for (int oy = 0; oy < oh; ++oy) {
        for (int ox = 0; ox < ow; ++ox) {
          std::size_t best = base + static_cast<std::size_t>(oy * k) * w + ox * k;
          float bv = x[best];
          for (int dy2 = 0; dy2 < k; ++dy2) {
            for (int dx2 = 0; dx2 < k; ++dx2) {
              const std::size_t idx = base + static_cast<std::size_t>(oy * k + dy2) * w + ox * k + dx2;
              if (x[idx] > bv) {
                bv = x[idx];
                best = idx;
              }
            }
          }
          y[obase + static_cast<std::size_t>(oy) * ow + ox] = bv;
          argmax[obase + static_cast<std::size_t>(oy) * ow + ox] = static_cast<int>(best);
        }
      }
    }
  }
}

void maxpool_backward(const float* dy, const int* argmax, std::size_t y_size, float* dx) {
  // windows are disjoint, so scatter targets never collide
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(y_size); ++i)
    dx[argmax[i]] += dy[i];
}

void relu_forward(const float* x, std::size_t n, float* y) {
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i) y[i] = x[i] > 0.0f ? x[i] : 0.0f;
}

void relu_backward(const float* x, const float* dy, std::size_t n, float* dx) {
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i) dx[i] = x[i] > 0.0f ? dy[i] : 0.0f;
}

void softmax_forward(const float* x, int n, int width, float* y) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const float* xi = x + static_cast<std::size_t>(i) * width;
    float* yi = y + static_cast<std::size_t>(i) * width;
    float mx = xi[0];
    for (int j = 1; j < width; ++j) mx = std::max(mx, xi[j]);
    double sum = 0.0;
    for (int j = 0; j < width; ++j) {
      yi[j] = std::exp(xi[j] - mx);
      sum += yi[j];
    }
    const float inv = static_cast<float>(1.0 / sum);
    for (int j = 0; j < width; ++j) yi[j] *= inv;
  }
}

void softmax_backward(const float* y, const float* dy, int n, int width, float* dx) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const float* yi = y + static_cast<std::size_t>(i) * width;
    const float* di = dy + static_cast<std::size_t>(i) * width;
    float* xi = dx + static_cast<std::size_t>(i) * width;
    double dot = 0.0;
    for (int j = 0; j < width; ++j) dot += static_cast<double>(di[j]) * yi[j];
    for (int j = 0; j < width; ++j) xi[j] = yi[j] * (di[j] - static_cast<float>(dot));
  }
}

}  // namespace dlt::kernels
