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
#include <vector>

// OpenMP-parallel compute kernels. Every kernel computes each output element
// on exactly one thread, so results are bit-identical for any thread count.
// dlt::ref holds the naive serial counterparts used by tests and the bench.

namespace dlt::kernels {

// C[M,N] = A[M,K] * B[N,K]^T
void gemm_nt(const float* a, int m, int k, const float* b, int n, float* c);
// C[M,N] = A[M,K] * B[K,N]
void gemm_nn(const float* a, int m, int k, const float* b, int n, float* c);
// C[M,N] = A[K,M]^T * B[K,N]
void gemm_tn(const float* a, int k, int m, const float* b, int n, float* c);

// x: [N,C,H,W] -> col: [N*OH*OW, C*KH*KW], valid padding, stride 1.
void im2col(const float* x, int n, int c, int h, int w, int kh, int kw, float* col);
// Adjoint of im2col: accumulates col rows back into dx (gather form).
void col2im(const float* col, int n, int c, int h, int w, int kh, int kw, float* dx);

// y: [N,OC,OH,OW] = conv(x [N,IC,H,W], w [OC,IC,KH,KW]) + b, valid, stride 1.
void conv2d_forward(const float* x, int n, int ic, int h, int w, const float* wt, int oc,
                    int kh, int kw, const float* bias, float* y);
// Gradients given dy [N,OC,OH,OW]; any of dx/dw/db may be null.
void conv2d_backward(const float* x, int n, int ic, int h, int w, const float* wt, int oc,
                     int kh, int kw, const float* dy, float* dx, float* dw, float* db);

// y [N,out] = x [N,in] * w[out,in]^T + b
void dense_forward(const float* x, int n, int in, const float* w, int out, const float* b,
                   float* y);
void dense_backward(const float* x, int n, int in, const float* w, int out, const float* dy,
                    float* dx, float* dw, float* db);

// 2x2-style max pooling, window == stride, floor output dims. argmax stores the
// flat input index chosen per output element (for the backward routing).
void maxpool_forward(const float* x, int n, int c, int h, int w, int k, float* y, int* argmax);
void maxpool_backward(const float* dy, const int* argmax, std::size_t y_size, float* dx);

void relu_forward(const float* x, std::size_t n, float* y);
void relu_backward(const float* x, const float* dy, std::size_t n, float* dx);

// Row-wise softmax over [n, width], numerically stabilized.
void softmax_forward(const float* x, int n, int width, float* y);
// dx = y .* (dy - rowdot(dy, y)) given post-softmax y.
void softmax_backward(const float* y, const float* dy, int n, int width, float* dx);

void set_num_threads(int n);
int max_threads();

}  // namespace dlt::kernels
