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

#include <string>
#include <vector>

#include "dlt/common.hpp"

namespace dlt {

/// One result table; cells are preformatted strings so every rendering
/// traces back to the same values with no recomputation.
struct Table {
  std::string name;  // e.g. "mt_results"
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::string to_csv() const;
  std::string to_markdown() const;
};

struct ExperimentReport {
  std::string version = "dltest 1.0";
  std::uint64_t seed = 0;
  std::string started, finished;          // wall-clock stamps, report.json only
  std::string dataset_note;
  std::vector<std::string> executed;      // technique keys in execution order
  std::vector<std::pair<std::string, Table>> tables;  // technique key -> table
  std::vector<std::pair<std::string, std::string>> failures;

  void validate() const;  // every executed technique has at least one table
};

/// Challenge rows of the technique-vs-challenge matrix, in render order.
extern const std::vector<std::string> kChallenges;

/// Which challenges a technique addresses (keys: dt, mt, mut, apt, ct).
bool technique_addresses(const std::string& technique, const std::string& challenge);

/// Matrix restricted to the executed techniques.
Table technique_challenge_matrix(const std::vector<std::string>& executed);

/// Writes <technique>_<table>_<seed>.csv files; returns the paths.
std::vector<std::string> render_csv(const ExperimentReport& rep, const std::string& dir);
/// Writes report_<seed>.json (stamps included).
std::string render_json(const ExperimentReport& rep, const std::string& dir);
/// Writes report_<seed>.md mirroring the tables plus the matrix.
std::string render_markdown(const ExperimentReport& rep, const std::string& dir);

std::string format_num(double v);  // fixed 4-decimal cell format

}  // namespace dlt
