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

#include "dlt/ref_kernels.hpp"

#include <cmath>

namespace dlt::ref {

void matmul_nt(const float* a, int m, int k, const float* b, int n, float* c) {
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      float acc = 0.0f;
      for (int p = 0; p < k; ++p) acc += a[i * k + p] * b[j * k + p];
      c[i * n + j] = acc;
    }
  }
}

void conv2d_forward(const float* x, int n, int ic, int h, int w, const float* wt, int oc,
                    int kh, int kw, const float* bias, float* y) {
  const int oh = h - kh + 1;
  const int ow = w - kw + 1;
  for (int img = 0; img < n; ++img) {
    for (int co = 0; co < oc; ++co) {
      for (int oy = 0; oy < oh; ++oy) {
        for (int ox = 0; ox < ow; ++ox) {
          float acc = bias[co];
          for (int ci = 0; ci < ic; ++ci) {
            for (int ky = 0; ky < kh; ++ky) {
              for (int kx = 0; kx < kw; ++kx) {
                acc += x[((img * ic + ci) * h + oy + ky) * w + ox + kx] *
                       wt[((co * ic + ci) * kh + ky) * kw + kx];
              }
            }
          }
          y[((img * oc + co) * oh + oy) * ow + ox] = acc;
        }
      }
    }
  }
}

void dense_forward(const float* x, int n, int in, const float* w, int out, const float* b,
                   float* y) {
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < out; ++j) {
      float acc = b[j];
      for (int p = 0; p < in; ++p) acc += x[i * in + p] * w[j * in + p];
      y[i * out + j] = acc;
    }
  }
}

void maxpool_forward(const float* x, int n, int c, int h, int w, int k, float* y) {
  const int oh = h / k;
  const int ow = w / k;
  for (int img = 0; img < n; ++img) {
    for (int ch = 0; ch < c; ++ch) {
      for (int oy = 0; oy < oh; ++oy) {
        for (int ox = 0; ox < ow; ++ox) {
          float best = x[((img * c + ch) * h + oy * k) * w + ox * k];
          for (int dy = 0; dy < k; ++dy)
            for (int dx = 0; dx < k; ++dx) {
              float v = x[((img * c + ch) * h + oy * k + dy) * w + ox * k + dx];
              if (v > best) best = v;
            }
          y[((img * c + ch) * oh + oy) * ow + ox] = best;
        }
      }
    }
  }
}

void softmax_forward(const float* x, int n, int width, float* y) {
  for (int i = 0; i < n; ++i) {
    float mx = x[i * width];
    for (int j = 1; j < width; ++j) mx = std::max(mx, x[i * width + j]);
    double sum = 0.0;
    for (int j = 0; j < width; ++j) {
      y[i * width + j] = std::exp(x[i * width + j] - mx);
      sum += y[i * width + j];
    }
    for (int j = 0; j < width; ++j) y[i * width + j] = static_cast<float>(y[i * width + j] / sum);
  }
}

}  // namespace dlt::ref
