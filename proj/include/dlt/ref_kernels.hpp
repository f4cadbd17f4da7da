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

#pragma once

#include <cstddef>

// Serial reference kernels: direct per-element summation, no im2col, no GEMM,
// no threading. Kept as the independent oracle for the parallel kernels and as
// the baseline side of the bench target. Never called from production paths.

namespace dlt::ref {

void matmul_nt(const float* a, int m, int k, const float* b, int n, float* c);

void conv2d_forward(const float* x, int n, int ic, int h, int w, const float* wt, int oc,
                    int kh, int kw, const float* bias, float* y);

void dense_forward(const float* x, int n, int in, const float* w, int out, const float* b,
                   float* y);

void maxpool_forward(const float* x, int n, int c, int h, int w, int k, float* y);

void softmax_forward(const float* x, int n, int width, float* y);

}  // namespace dlt::ref
