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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "dlt/combinatorial.hpp"
#include "dlt/kernels.hpp"
#include "dlt/runner.hpp"
#include "dlt/serialize.hpp"
#include "dlt/synth.hpp"

namespace fs = std::filesystem;
using namespace dlt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitTechnique = 2;
constexpr int kExitCheck = 3;

struct CommonOpts {
  std::string config_path;
  std::int64_t seed = -1;
  std::string out_dir;
  std::int64_t limit = -1;
  int jobs = 0;
};

void add_common(CLI::App* cmd, CommonOpts* o, bool config_required = true) {
  auto* copt = cmd->add_option("--config", o->config_path, "experiment config (JSON)");
  if (config_required) copt->required();
  cmd->add_option("--seed", o->seed, "override the config seed");
  cmd->add_option("--out", o->out_dir, "override the output directory");
  cmd->add_option("--limit", o->limit, "cap the test set at N inputs");
  cmd->add_option("--jobs", o->jobs, "OpenMP thread count (0 = library default)");
}

ExperimentConfig load_config(const CommonOpts& o) {
  ExperimentConfig cfg = parse_config(o.config_path);
  if (o.seed >= 0) {
    cfg.seed = static_cast<std::uint64_t>(o.seed);
    cfg.train.seed = cfg.seed;
  }
  if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
  if (o.limit >= 0) cfg.dataset.limit = static_cast<std::size_t>(o.limit);
  if (o.jobs > 0) kernels::set_num_threads(o.jobs);
  return cfg;
}

int finish_run(const RunResult& r) {
  for (const auto& [technique, table] : r.report.tables)
    std::printf("[%s] %s: %zu row(s)\n", technique.c_str(), table.name.c_str(), table.rows.size());
  for (const auto& path : r.artifacts) std::printf("wrote %s\n", path.c_str());
  for (const auto& [technique, what] : r.report.failures)
    std::fprintf(stderr, "FAILED %s: %s\n", technique.c_str(), what.c_str());
  return r.ok() ? kExitOk : kExitTechnique;
}

int run_section(const CommonOpts& o, const std::string& key) {
  ExperimentConfig cfg = load_config(o);
  const bool configured = (key == "coverage" && cfg.coverage) || (key == "mt" && cfg.mt) ||
                          (key == "mut" && cfg.mut) || (key == "ct" && cfg.ct) ||
                          (key == "dt" && cfg.dt) || (key == "apt" && cfg.apt);
  if (!configured) {
    std::fprintf(stderr, "config error: section '%s' is not present in %s\n", key.c_str(),
                 o.config_path.c_str());
    return kExitConfig;
  }
  return finish_run(run_experiment(cfg, {key}));
}

// report --check: structural validation of a finished run directory
int check_run_dir(const std::string& dir, std::int64_t seed_opt) {
  std::vector<std::string> problems;
  std::string report_path;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (name.rfind("report_", 0) == 0 && e.path().extension() == ".json") {
      if (seed_opt >= 0 && name != "report_" + std::to_string(seed_opt) + ".json") continue;
      report_path = e.path().string();
    }
  }
  if (report_path.empty()) {
    std::fprintf(stderr, "check: no report_<seed>.json found in %s\n", dir.c_str());
    return kExitCheck;
  }

  nlohmann::json j;
  try {
    std::ifstream f(report_path);
    f >> j;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "check: cannot parse %s: %s\n", report_path.c_str(), e.what());
    return kExitCheck;
  }

  const std::uint64_t seed = j.value("seed", 0ull);
  std::vector<std::string> executed = j.value("executed", std::vector<std::string>{});
  std::set<std::string> with_tables;

  for (const auto& t : j["tables"]) {
    const std::string technique = t.value("technique", "");
    const std::string name = t.value("name", "");
    with_tables.insert(technique);
    Table table;
    table.name = name;
    table.columns = t.value("columns", std::vector<std::string>{});
    for (const auto& row : t["rows"]) table.rows.push_back(row.get<std::vector<std::string>>());

    const std::string csv_path =
        (fs::path(dir) / (technique + "_" + name + "_" + std::to_string(seed) + ".csv")).string();
    if (!fs::exists(csv_path)) {
      problems.push_back("missing CSV for table " + technique + "/" + name + ": " + csv_path);
      continue;
    }
    std::ifstream cf(csv_path, std::ios::binary);
    std::string on_disk((std::istreambuf_iterator<char>(cf)), std::istreambuf_iterator<char>());
    if (on_disk != table.to_csv())
      problems.push_back("CSV drifted from report for table " + technique + "/" + name);

    // accuracy/error complement where both columns exist
    int acc_col = -1, err_col = -1;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (table.columns[c] == "accuracy") acc_col = static_cast<int>(c);
      if (table.columns[c] == "error") err_col = static_cast<int>(c);
    }
    if (acc_col >= 0 && err_col >= 0) {
      for (const auto& row : table.rows) {
        const double sum = std::stod(row[static_cast<std::size_t>(acc_col)]) +
                           std::stod(row[static_cast<std::size_t>(err_col)]);
        if (std::abs(sum - 100.0) > 1e-3)
          problems.push_back("accuracy+error != 100 in " + technique + "/" + name);
      }
    }
  }

  std::set<std::string> failed;
  for (const auto& fjson : j["failures"]) failed.insert(fjson.value("technique", ""));
  for (const std::string& t : executed)
    if (!with_tables.count(t) && !failed.count(t))
      problems.push_back("executed technique '" + t + "' has no tables");

  const Table want_matrix = technique_challenge_matrix(executed);
  if (j.contains("matrix")) {
    const auto cols = j["matrix"].value("columns", std::vector<std::string>{});
    if (cols != want_matrix.columns) problems.push_back("matrix columns drifted");
  } else {
    problems.push_back("report has no matrix");
  }

  if (problems.empty()) {
    std::printf("check OK: %s\n", report_path.c_str());
    return kExitOk;
  }
  for (const auto& p : problems) std::fprintf(stderr, "check FAILED: %s\n", p.c_str());
  return kExitCheck;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"model testing toolkit: metamorphic, mutation, differential, combinatorial, and "
               "adversarial campaigns over small image classifiers"};
  app.require_subcommand(1);

  CommonOpts train_o, eval_o, mt_o, mut_o, dt_o, apt_o, ct_o, cov_o, smoke_o, all_o;

  auto* cmd_train = app.add_subcommand("train", "train the configured architecture");
  add_common(cmd_train, &train_o);

  auto* cmd_eval = app.add_subcommand("evaluate", "evaluate stored weights on the test set");
  add_common(cmd_eval, &eval_o);
  std::string eval_weights;
  cmd_eval->add_option("--weights", eval_weights, "weights file (.nnpb)")->required();

  auto* cmd_mt = app.add_subcommand("mt", "metamorphic testing campaign");
  add_common(cmd_mt, &mt_o);
  std::string mt_ca;
  cmd_mt->add_option("--ca", mt_ca, "covering-array CSV driving the MR configurations");

  auto* cmd_mut = app.add_subcommand("mut", "mutation testing campaign");
  add_common(cmd_mut, &mut_o);
  std::string mut_ca;
  cmd_mut->add_option("--ca", mut_ca, "covering-array CSV driving (kind, ratio) cells");

  auto* cmd_dt = app.add_subcommand("dt", "differential testing campaign");
  add_common(cmd_dt, &dt_o);
  auto* cmd_apt = app.add_subcommand("apt", "adversarial perturbation testing");
  add_common(cmd_apt, &apt_o);
  auto* cmd_ct = app.add_subcommand("ct", "combinatorial testing");
  add_common(cmd_ct, &ct_o);
  auto* cmd_cov = app.add_subcommand("coverage", "coverage and surprise adequacy");
  add_common(cmd_cov, &cov_o);

  auto* cmd_smoke = app.add_subcommand("smoke", "smoke checks on a trained model");
  add_common(cmd_smoke, &smoke_o, false);
  std::string smoke_weights;
  cmd_smoke->add_option("--weights", smoke_weights, "weights file (.nnpb)");

  auto* cmd_report = app.add_subcommand("report", "re-render or check a finished run");
  std::string report_dir, report_format = "md";
  std::int64_t report_seed = -1;
  bool report_check = false;
  cmd_report->add_option("--run-dir", report_dir, "run output directory")->required();
  cmd_report->add_option("--format", report_format, "csv|json|md")
      ->check(CLI::IsMember({"csv", "json", "md"}));
  cmd_report->add_option("--seed", report_seed, "select the report when several exist");
  cmd_report->add_flag("--check", report_check, "validate report invariants (exit 3 on failure)");

  auto* cmd_all = app.add_subcommand("run-all", "run every configured technique");
  add_common(cmd_all, &all_o);

  auto* cmd_gen = app.add_subcommand("gen-data", "emit a synthetic digit dataset as IDX files");
  std::string gen_out = "data";
  std::uint64_t gen_seed = 53561;
  std::size_t gen_train = 20000, gen_test = 10000;
  cmd_gen->add_option("--out", gen_out, "output directory");
  cmd_gen->add_option("--train", gen_train, "training image count");
  cmd_gen->add_option("--test", gen_test, "test image count");
  cmd_gen->add_option("--seed", gen_seed, "generator seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_train->parsed()) return finish_run(run_experiment(load_config(train_o), {"train"}));

    if (cmd_eval->parsed()) {
      ExperimentConfig cfg = load_config(eval_o);
      const Model m = load_model(eval_weights);
      auto [train_set, test_set] = resolve_datasets(cfg);
      const EvalResult ev = evaluate(m, test_set);
      std::printf("accuracy %.4f error %.4f on %zu inputs\n", ev.accuracy, ev.error, ev.count);
      for (int c = 0; c < 10; ++c)
        std::printf("class %d: %d/%d\n", c, ev.per_class_correct[static_cast<std::size_t>(c)],
                    ev.per_class_total[static_cast<std::size_t>(c)]);
      return kExitOk;
    }

    if (cmd_mt->parsed()) {
      if (!mt_ca.empty()) {
        ExperimentConfig cfg = load_config(mt_o);
        if (!cfg.mt) {
          std::fprintf(stderr, "config error: mt section required with --ca\n");
          return kExitConfig;
        }
        cfg.mt->configs = mt_configs_from_ca_csv(mt_ca);
        return finish_run(run_experiment(cfg, {"mt"}));
      }
      return run_section(mt_o, "mt");
    }

    if (cmd_mut->parsed()) {
      if (!mut_ca.empty()) {
        ExperimentConfig cfg = load_config(mut_o);
        if (!cfg.mut) {
          std::fprintf(stderr, "config error: mut section required with --ca\n");
          return kExitConfig;
        }
        // the covering array picks the sweep cells
        const auto cells = mut_cells_from_ca_csv(mut_ca);
        std::set<double> ratios;
        std::set<MutKind> kinds;
        for (const auto& [k, r] : cells) {
          kinds.insert(k);
          ratios.insert(r);
        }
        cfg.mut->kinds.assign(kinds.begin(), kinds.end());
        cfg.mut->ratios.assign(ratios.begin(), ratios.end());
        return finish_run(run_experiment(cfg, {"mut"}));
      }
      return run_section(mut_o, "mut");
    }

    if (cmd_dt->parsed()) return run_section(dt_o, "dt");
    if (cmd_apt->parsed()) return run_section(apt_o, "apt");
    if (cmd_ct->parsed()) return run_section(ct_o, "ct");
    if (cmd_cov->parsed()) return run_section(cov_o, "coverage");

    if (cmd_smoke->parsed()) {
      Model m;
      if (!smoke_weights.empty()) {
        m = load_model(smoke_weights);
      } else if (!smoke_o.config_path.empty()) {
        ExperimentConfig cfg = load_config(smoke_o);
        auto [train_set, test_set] = resolve_datasets(cfg);
        ModelCache cache((fs::path(cfg.out_dir) / "cache").string());
        const std::string desc =
            "baseline;" + cfg.train.to_json() + ";data=" + dataset_fingerprint(train_set);
        m = cache.get_or_train(desc, [&]() { return train_new(cfg.train.architecture, train_set,
                                                              cfg.train).model; });
      } else {
        std::fprintf(stderr, "config error: smoke needs --weights or --config\n");
        return kExitConfig;
      }
      const SmokeReport rep = smoke_test(m);
      for (const auto& c : rep.checks)
        std::printf("%-28s %s%s%s\n", c.name.c_str(), c.pass ? "pass" : "FAIL",
                    c.detail.empty() ? "" : ": ", c.detail.c_str());
      return rep.all_pass() ? kExitOk : kExitTechnique;
    }

    if (cmd_report->parsed()) {
      if (report_check) return check_run_dir(report_dir, report_seed);
      // re-render from the stored report
      std::string report_path;
      for (const auto& e : fs::directory_iterator(report_dir)) {
        const std::string name = e.path().filename().string();
        if (name.rfind("report_", 0) == 0 && e.path().extension() == ".json") {
          if (report_seed >= 0 && name != "report_" + std::to_string(report_seed) + ".json")
            continue;
          report_path = e.path().string();
        }
      }
      if (report_path.empty()) {
        std::fprintf(stderr, "no report_<seed>.json in %s\n", report_dir.c_str());
        return kExitConfig;
      }
      nlohmann::json j;
      std::ifstream f(report_path);
      f >> j;
      ExperimentReport rep;
      rep.version = j.value("version", "");
      rep.seed = j.value("seed", 0ull);
      rep.started = j.value("started", "");
      rep.finished = j.value("finished", "");
      rep.dataset_note = j.value("dataset", "");
      rep.executed = j.value("executed", std::vector<std::string>{});
      for (const auto& t : j["tables"]) {
        Table table;
        table.name = t.value("name", "");
        table.columns = t.value("columns", std::vector<std::string>{});
        for (const auto& row : t["rows"]) table.rows.push_back(row.get<std::vector<std::string>>());
        rep.tables.push_back({t.value("technique", ""), table});
      }
      for (const auto& fl : j["failures"])
        rep.failures.push_back({fl.value("technique", ""), fl.value("error", "")});
      if (report_format == "csv")
        for (const auto& p : render_csv(rep, report_dir)) std::printf("wrote %s\n", p.c_str());
      else if (report_format == "json")
        std::printf("wrote %s\n", render_json(rep, report_dir).c_str());
      else
        std::printf("wrote %s\n", render_markdown(rep, report_dir).c_str());
      return kExitOk;
    }

    if (cmd_all->parsed()) return finish_run(run_experiment(load_config(all_o)));

    if (cmd_gen->parsed()) {
      fs::create_directories(gen_out);
      const Dataset train_set = synth_digits(gen_train, gen_seed);
      const Dataset test_set = synth_digits(gen_test, hash_combine(gen_seed, 1));
      const std::string ti = (fs::path(gen_out) / "train-images-idx3-ubyte").string();
      const std::string tl = (fs::path(gen_out) / "train-labels-idx1-ubyte").string();
      const std::string ei = (fs::path(gen_out) / "t10k-images-idx3-ubyte").string();
      const std::string el = (fs::path(gen_out) / "t10k-labels-idx1-ubyte").string();
      write_idx(train_set, ti, tl);
      write_idx(test_set, ei, el);
      std::printf("wrote %s (%zu) and %s (%zu)\n", ti.c_str(), train_set.size(), ei.c_str(),
                  test_set.size());
      return kExitOk;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    // configuration and input problems exit 1; anything raised mid-technique
    // has already been converted into report failures (exit 2) by the runner
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitTechnique;
  }
  return kExitOk;
}
