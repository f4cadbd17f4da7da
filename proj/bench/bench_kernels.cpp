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

// Compares the OpenMP kernels against the serial reference implementation on
// the shapes the baseline network actually runs, and times one full training
// step. Usage: bench_kernels [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "dlt/kernels.hpp"
#include "dlt/model.hpp"
#include "dlt/ref_kernels.hpp"
#include "dlt/synth.hpp"
#include "dlt/train.hpp"

using namespace dlt;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Tensor random_tensor(std::vector<int> shape, std::uint64_t seed) {
  Tensor t(std::move(shape));
  Rng rng(seed);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = rng.uniform(-1.0f, 1.0f);
  return t;
}

struct ConvCase {
  const char* name;
  int n, ic, h, w, oc, k;
};

void bench_conv(const ConvCase& c, int repeats) {
  Tensor x = random_tensor({c.n, c.ic, c.h, c.w}, 1);
  Tensor wt = random_tensor({c.oc, c.ic, c.k, c.k}, 2);
  Tensor bias = random_tensor({c.oc}, 3);
  const int oh = c.h - c.k + 1, ow = c.w - c.k + 1;
  Tensor y({c.n, c.oc, oh, ow});
  const double flops = 2.0 * c.n * c.oc * oh * ow * c.ic * c.k * c.k;

  auto t0 = Clock::now();
  for (int r = 0; r < repeats; ++r)
    kernels::conv2d_forward(x.data(), c.n, c.ic, c.h, c.w, wt.data(), c.oc, c.k, c.k, bias.data(),
                            y.data());
  const double par = seconds_since(t0) / repeats;

  t0 = Clock::now();
  for (int r = 0; r < repeats; ++r)
    ref::conv2d_forward(x.data(), c.n, c.ic, c.h, c.w, wt.data(), c.oc, c.k, c.k, bias.data(),
                        y.data());
  const double ser = seconds_since(t0) / repeats;

  std::printf("%-22s parallel %8.3f ms (%6.2f GFLOP/s)   serial %8.3f ms   speedup %.2fx\n",
              c.name, par * 1e3, flops / par * 1e-9, ser * 1e3, ser / par);
}

void bench_dense(const char* name, int n, int in, int out, int repeats) {
  Tensor x = random_tensor({n, in}, 4);
  Tensor w = random_tensor({out, in}, 5);
  Tensor b = random_tensor({out}, 6);
  Tensor y({n, out});
  const double flops = 2.0 * n * in * out;

  auto t0 = Clock::now();
  for (int r = 0; r < repeats; ++r)
    kernels::dense_forward(x.data(), n, in, w.data(), out, b.data(), y.data());
  const double par = seconds_since(t0) / repeats;

  t0 = Clock::now();
  for (int r = 0; r < repeats; ++r)
    ref::dense_forward(x.data(), n, in, w.data(), out, b.data(), y.data());
  const double ser = seconds_since(t0) / repeats;

  std::printf("%-22s parallel %8.3f ms (%6.2f GFLOP/s)   serial %8.3f ms   speedup %.2fx\n", name,
              par * 1e3, flops / par * 1e-9, ser * 1e3, ser / par);
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 20;
  std::printf("threads: %d, repeats: %d\n\n", kernels::max_threads(), repeats);

  bench_conv({"conv 64x1x28x28 -> 32", 64, 1, 28, 28, 32, 3}, repeats);
  bench_conv({"conv 64x32x13x13 -> 64", 64, 32, 13, 13, 64, 3}, repeats);
  bench_dense("dense 64x1600 -> 128", 64, 1600, 128, repeats);
  bench_dense("dense 64x128 -> 128", 64, 128, 128, repeats);
  bench_dense("dense 64x128 -> 10", 64, 128, 10, repeats);

  // end to end: one epoch over a small synthetic set
  Dataset ds = synth_digits(1024, 9);
  TrainConfig cfg;
  cfg.epochs = 1;
  cfg.batch_size = 64;
  cfg.learning_rate = 0.01f;
  cfg.seed = 1;
  cfg.architecture = "baseline_cnn";
  auto t0 = Clock::now();
  TrainResult r = train_new("baseline_cnn", ds, cfg);
  const double secs = seconds_since(t0);
  std::printf("\ntrain baseline_cnn, 1 epoch x %zu images: %.2f s (%.0f images/s)\n", ds.size(),
              secs, ds.size() / secs);

  auto t1 = Clock::now();
  const EvalResult ev = evaluate(r.model, ds);
  const double esecs = seconds_since(t1);
  std::printf("evaluate %zu images: %.2f s (%.0f images/s), accuracy %.2f\n", ds.size(), esecs,
              ds.size() / esecs, ev.accuracy);
  return 0;
}
