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

#include "dlt/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace dlt {

std::string format_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string Table::to_csv() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
  return os.str();
}

std::string Table::to_markdown() const {
  std::ostringstream os;
  os << "| ";
  for (const auto& c : columns) os << c << " | ";
  os << "\n|";
  for (std::size_t i = 0; i < columns.size(); ++i) os << "---|";
  os << "\n";
  for (const auto& row : rows) {
    os << "| ";
    for (const auto& cell : row) os << cell << " | ";
    os << "\n";
  }
  return os.str();
}

void ExperimentReport::validate() const {
  require(!executed.empty() || !failures.empty(), "report is empty: nothing was executed");
  for (const std::string& t : executed) {
    bool has = false;
    for (const auto& [key, table] : tables) has = has || key == t;
    for (const auto& [key, err] : failures) has = has || key == t;
    require(has, "executed technique '" + t + "' produced no table");
  }
}

const std::vector<std::string> kChallenges = {
    "model quality", "training-data quality", "oracle", "input selection",
    "adversarial detection"};

bool technique_addresses(const std::string& technique, const std::string& challenge) {
  // checkmark layout of the technique-vs-challenge summary
  static const std::set<std::pair<std::string, std::string>> marks = {
      {"dt", "oracle"},
      {"mt", "model quality"},
      {"mt", "oracle"},
      {"mt", "input selection"},
      {"mut", "model quality"},
      {"mut", "training-data quality"},
      {"mut", "input selection"},
      {"apt", "model quality"},
      {"apt", "training-data quality"},
      {"apt", "adversarial detection"},
      {"ct", "model quality"},
      {"ct", "input selection"},
  };
  return marks.count({technique, challenge}) > 0;
}

Table technique_challenge_matrix(const std::vector<std::string>& executed) {
  static const std::vector<std::string> order = {"dt", "mt", "mut", "apt", "ct"};
  std::vector<std::string> cols;
  for (const std::string& t : order)
    if (std::find(executed.begin(), executed.end(), t) != executed.end()) cols.push_back(t);

  Table m;
  m.name = "technique_vs_challenge";
  m.columns.push_back("challenge");
  for (const auto& t : cols) m.columns.push_back(t);
  for (const std::string& ch : kChallenges) {
    std::vector<std::string> row = {ch};
    for (const auto& t : cols) row.push_back(technique_addresses(t, ch) ? "x" : "");
    m.rows.push_back(std::move(row));
  }
  return m;
}

std::vector<std::string> render_csv(const ExperimentReport& rep, const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> paths;
  for (const auto& [technique, table] : rep.tables) {
    const std::string path =
        (std::filesystem::path(dir) /
         (technique + "_" + table.name + "_" + std::to_string(rep.seed) + ".csv"))
            .string();
    std::ofstream f(path, std::ios::binary);
    require(f.good(), "cannot write " + path);
    f << table.to_csv();
    paths.push_back(path);
  }
  return paths;
}

std::string render_json(const ExperimentReport& rep, const std::string& dir) {
  std::filesystem::create_directories(dir);
  nlohmann::json j;
  j["version"] = rep.version;
  j["seed"] = rep.seed;
  j["started"] = rep.started;
  j["finished"] = rep.finished;
  j["dataset"] = rep.dataset_note;
  j["executed"] = rep.executed;
  nlohmann::json tables = nlohmann::json::array();
  for (const auto& [technique, table] : rep.tables) {
    nlohmann::json t;
    t["technique"] = technique;
    t["name"] = table.name;
    t["columns"] = table.columns;
    t["rows"] = table.rows;
    tables.push_back(t);
  }
  j["tables"] = tables;
  nlohmann::json fails = nlohmann::json::array();
  for (const auto& [technique, what] : rep.failures)
    fails.push_back({{"technique", technique}, {"error", what}});
  j["failures"] = fails;
  Table matrix = technique_challenge_matrix(rep.executed);
  j["matrix"] = {{"columns", matrix.columns}, {"rows", matrix.rows}};

  const std::string path =
      (std::filesystem::path(dir) / ("report_" + std::to_string(rep.seed) + ".json")).string();
  std::ofstream f(path, std::ios::binary);
  require(f.good(), "cannot write " + path);
  f << j.dump(2) << "\n";
  return path;
}

std::string render_markdown(const ExperimentReport& rep, const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::ostringstream os;
  os << "# Experiment report (seed " << rep.seed << ")\n\n";
  os << rep.version << "; dataset: " << rep.dataset_note << "\n\n";
  for (const auto& [technique, table] : rep.tables) {
    os << "## " << technique << ": " << table.name << "\n\n" << table.to_markdown() << "\n";
  }
  if (!rep.failures.empty()) {
    os << "## failures\n\n";
    for (const auto& [technique, what] : rep.failures)
      os << "- " << technique << ": " << what << "\n";
    os << "\n";
  }
  os << "## techniques vs. challenges\n\n" << technique_challenge_matrix(rep.executed).to_markdown();

  const std::string path =
      (std::filesystem::path(dir) / ("report_" + std::to_string(rep.seed) + ".md")).string();
  std::ofstream f(path, std::ios::binary);
  require(f.good(), "cannot write " + path);
  f << os.str();
  return path;
}

}  // namespace dlt
