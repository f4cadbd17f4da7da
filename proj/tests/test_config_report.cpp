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

#include "dlt/config.hpp"
#include "dlt/report.hpp"
#include "support.hpp"

using namespace dlt;

namespace {

const char* kMinimal = R"({
  "seed": 5,
  "out_dir": "/tmp/x",
  "dataset": {"synthetic": {"train": 100, "test": 50, "seed": 1}},
  "train": {"architecture": "mlp", "epochs": 2, "batch_size": 16, "learning_rate": 0.05},
  "mt": {"regimes": ["without_aug"], "configs": [[{"kind": "rotation", "params": [30]}]]}
})";

}  // namespace

TEST_CASE("a minimal valid config parses") {
  ExperimentConfig c = parse_config_text(kMinimal);
  CHECK(c.seed == 5);
  CHECK(c.train.architecture == "mlp");
  REQUIRE(c.mt.has_value());
  CHECK(c.mt->configs.size() == 1);
  CHECK(c.mt->configs[0][0].kind == TransformKind::Rotation);
  CHECK_FALSE(c.mut.has_value());
}

TEST_CASE("unknown keys are rejected with their JSON path") {
  const std::string bad = R"({"seed": 1, "trian": {}})";
  CHECK_THROWS_WITH_AS(parse_config_text(bad), doctest::Contains("trian"), Error);
  const std::string bad2 = R"({
    "dataset": {"synthetic": {"train": 10, "test": 10}},
    "train": {"architecture": "mlp"},
    "mt": {"regimes": ["without_aug"], "configs": [], "extra": 1}
  })";
  CHECK_THROWS_WITH_AS(parse_config_text(bad2), doctest::Contains("mt.extra"), Error);
}

TEST_CASE("invariant violations name the offending field") {
  std::string bad = kMinimal;
  bad.replace(bad.find("[30]"), 4, "[200]");
  CHECK_THROWS_WITH_AS(parse_config_text(bad), doctest::Contains("mt.configs[0][0]"), Error);
}

TEST_CASE("a config without technique sections is invalid") {
  const std::string none = R"({
    "seed": 1,
    "dataset": {"synthetic": {"train": 10, "test": 10}},
    "train": {"architecture": "mlp"}
  })";
  CHECK_THROWS_WITH_AS(parse_config_text(none), doctest::Contains("technique"), Error);
}

TEST_CASE("missing dataset files are caught at parse time") {
  const std::string missing = R"({
    "seed": 1,
    "dataset": {"train_images": "/nope/a", "train_labels": "/nope/b",
                 "test_images": "/nope/c", "test_labels": "/nope/d"},
    "train": {"architecture": "mlp"},
    "mt": {"regimes": ["without_aug"], "configs": [[]]}
  })";
  CHECK_THROWS_WITH_AS(parse_config_text(missing), doctest::Contains("does not exist"), Error);
}

TEST_CASE("serialize-then-parse is the identity on the canonical form") {
  ExperimentConfig c = parse_config_text(kMinimal);
  const std::string once = config_to_json(c);
  ExperimentConfig c2 = parse_config_text(once);
  const std::string twice = config_to_json(c2);
  CHECK(once == twice);
}

TEST_CASE("transform specs round-trip through JSON") {
  TransformSpec four = compose({rotation(30), shift(0.1f, 0.1f), shear(25), zoom(0.5f, 1.5f)});
  const std::string text = transform_to_json(four);
  TransformSpec back = transform_from_json_text(text);
  CHECK(back.describe() == four.describe());
  CHECK(transform_to_json(back) == text);
}

TEST_CASE("mt-only reports carry the MT challenge checkmarks") {
  Table m = technique_challenge_matrix({"train", "mt"});
  REQUIRE(m.columns.size() == 2);  // challenge + mt
  CHECK(m.columns[1] == "mt");
  // rows: model quality, training-data quality, oracle, input selection, adversarial detection
  CHECK(m.rows[0][1] == "x");
  CHECK(m.rows[1][1] == "");
  CHECK(m.rows[2][1] == "x");
  CHECK(m.rows[3][1] == "x");
  CHECK(m.rows[4][1] == "");
}

TEST_CASE("apt-only reports carry the APT challenge checkmarks") {
  Table m = technique_challenge_matrix({"apt"});
  CHECK(m.rows[0][1] == "x");  // model quality
  CHECK(m.rows[1][1] == "x");  // training-data quality
  CHECK(m.rows[2][1] == "");   // oracle
  CHECK(m.rows[3][1] == "");   // input selection
  CHECK(m.rows[4][1] == "x");  // adversarial detection
}

TEST_CASE("full matrix matches the pinned technique/challenge mapping") {
  CHECK(technique_addresses("dt", "oracle"));
  CHECK_FALSE(technique_addresses("dt", "model quality"));
  CHECK(technique_addresses("ct", "model quality"));
  CHECK(technique_addresses("ct", "input selection"));
  CHECK_FALSE(technique_addresses("ct", "oracle"));
  CHECK(technique_addresses("mut", "training-data quality"));
  CHECK_FALSE(technique_addresses("mut", "oracle"));
}

TEST_CASE("an empty report violates its invariant") {
  ExperimentReport rep;
  CHECK_THROWS_AS(rep.validate(), Error);
  rep.executed.push_back("mt");
  CHECK_THROWS_WITH_AS(rep.validate(), doctest::Contains("mt"), Error);
  Table t;
  t.name = "results";
  rep.tables.push_back({"mt", t});
  rep.validate();
}

TEST_CASE("table renderings agree cell for cell") {
  Table t;
  t.name = "demo";
  t.columns = {"a", "b"};
  t.rows = {{"1", "2.5000"}, {"3", "4.0000"}};
  CHECK(t.to_csv() == "a,b\n1,2.5000\n3,4.0000\n");
  const std::string md = t.to_markdown();
  CHECK(md.find("| 1 | 2.5000 |") != std::string::npos);
}
