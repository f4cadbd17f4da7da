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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <fstream>

#include "dlt/dataset.hpp"
#include "dlt/sha256.hpp"
#include "dlt/synth.hpp"
#include "support.hpp"

using namespace dlt;
using test::temp_path;

namespace {

std::pair<std::string, std::string> write_pair(const Dataset& ds, const std::string& stem) {
  const std::string ip = temp_path(stem + "-images-idx3-ubyte");
  const std::string lp = temp_path(stem + "-labels-idx1-ubyte");
  write_idx(ds, ip, lp);
  return {ip, lp};
}

}  // namespace

TEST_CASE("write_idx then load_idx is the identity on pixel bytes") {
  Dataset ds = synth_digits(64, 1);
  auto [ip, lp] = write_pair(ds, "rt");
  Dataset back = load_idx(ip, lp);
  REQUIRE(back.size() == ds.size());
  CHECK(back.labels == ds.labels);
  // pixels were quantized to bytes on write; a second round trip is exact
  auto [ip2, lp2] = write_pair(back, "rt2");
  CHECK(sha256_file_hex(ip) == sha256_file_hex(ip2));
  CHECK(sha256_file_hex(lp) == sha256_file_hex(lp2));
  for (std::size_t i = 0; i < back.images.size(); ++i) {
    CHECK(back.images[i] >= 0.0f);
    CHECK(back.images[i] <= 1.0f);
  }
}

TEST_CASE("pixel byte 255 becomes exactly 1.0") {
  Dataset ds = synth_digits(4, 2);
  ds.images[100] = 1.0f;
  auto [ip, lp] = write_pair(ds, "endpoint");
  Dataset back = load_idx(ip, lp);
  CHECK(back.images[100] == 1.0f);
}

TEST_CASE("labels file passed as images gives a wrong-magic error") {
  Dataset ds = synth_digits(8, 3);
  auto [ip, lp] = write_pair(ds, "magic");
  CHECK_THROWS_WITH_AS(load_idx(lp, ip), doctest::Contains("wrong magic"), Error);
  CHECK_THROWS_WITH_AS(load_idx(ip, ip), doctest::Contains("wrong magic"), Error);
}

TEST_CASE("count mismatch between files is detected") {
  Dataset a = synth_digits(10, 4);
  Dataset b = synth_digits(12, 4);
  auto [ip, lp] = write_pair(a, "mismatch_a");
  auto [ip2, lp2] = write_pair(b, "mismatch_b");
  CHECK_THROWS_WITH_AS(load_idx(ip, lp2), doctest::Contains("count mismatch"), Error);
}

TEST_CASE("truncated images file is detected") {
  Dataset ds = synth_digits(16, 5);
  auto [ip, lp] = write_pair(ds, "trunc");
  std::filesystem::resize_file(ip, std::filesystem::file_size(ip) - 100);
  CHECK_THROWS_WITH_AS(load_idx(ip, lp), doctest::Contains("truncated"), Error);
}

TEST_CASE("provenance records sha256 of the source files") {
  Dataset ds = synth_digits(8, 6);
  auto [ip, lp] = write_pair(ds, "prov");
  Dataset back = load_idx(ip, lp);
  CHECK(back.provenance.images_sha256 == sha256_file_hex(ip));
  CHECK(back.provenance.images_sha256.size() == 64u);
}

TEST_CASE("subsample n==size is a permutation of the original") {
  Dataset ds = synth_digits(50, 7);
  Dataset sub = subsample(ds, 50, 123);
  auto a = ds.labels;
  auto b = sub.labels;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CHECK(a == b);
  CHECK_FALSE(sub.labels == ds.labels);  // order was shuffled
}

TEST_CASE("subsample is deterministic in its seed") {
  Dataset ds = synth_digits(100, 8);
  Dataset a = subsample(ds, 30, 9);
  Dataset b = subsample(ds, 30, 9);
  CHECK(a.labels == b.labels);
  CHECK(a.images == b.images);
  Dataset c = subsample(ds, 30, 10);
  CHECK_FALSE(a.labels == c.labels);
}

TEST_CASE("stratified subsample keeps 100 +- 1 per class at n=1000") {
  Dataset ds = synth_digits(5000, 9);
  Dataset sub = subsample(ds, 1000, 11);
  std::vector<int> counts(10, 0);
  for (int l : sub.labels) counts[static_cast<std::size_t>(l)] += 1;
  for (int c : counts) {
    CHECK(c >= 99);
    CHECK(c <= 101);
  }
}

TEST_CASE("subsample rejects out-of-range n") {
  Dataset ds = synth_digits(10, 10);
  CHECK_THROWS_AS(subsample(ds, 0, 1), Error);
  CHECK_THROWS_AS(subsample(ds, 11, 1), Error);
}

TEST_CASE("sha256 known vectors") {
  CHECK(sha256_hex(std::string("")) ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex(std::string("abc")) ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
