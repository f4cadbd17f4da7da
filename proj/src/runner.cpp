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

#include "dlt/runner.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dlt/adversarial.hpp"
#include "dlt/cache.hpp"
#include "dlt/coverage.hpp"
#include "dlt/serialize.hpp"
#include "dlt/synth.hpp"

namespace dlt {

namespace {

namespace fs = std::filesystem;

std::string now_stamp() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", std::gmtime(&t));
  return buf;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream f(path);
  require(f.good(), "cannot open CSV: " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::vector<std::string> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(cell);
    rows.push_back(std::move(row));
  }
  return rows;
}

struct RunState {
  const ExperimentConfig& cfg;
  Dataset train_set, test_set;
  ModelCache cache;
  Model baseline;
  ExperimentReport report;
  std::vector<std::string> artifacts;

  std::string out_file(const std::string& stem, const std::string& ext) const {
    return (fs::path(cfg.out_dir) / (stem + "_" + std::to_string(cfg.seed) + ext)).string();
  }
};

void run_train(RunState& st) {
  const TrainConfig& tc = st.cfg.train;
  const std::string desc = "baseline;" + tc.to_json() + ";data=" + dataset_fingerprint(st.train_set);
  std::vector<EpochStats> history;
  st.baseline = st.cache.get_or_train(desc, [&]() {
    TrainResult r = train_new(tc.architecture, st.train_set, tc);
    history = r.history;
    return r.model;
  });
  const std::string model_path = st.out_file("model", ".nnpb");
  save_model(st.baseline, model_path);
  st.artifacts.push_back(model_path);

  st.report.executed.push_back("train");
  if (!history.empty()) {
    Table h;
    h.name = "history";
    h.columns = {"epoch", "loss", "train_accuracy"};
    for (std::size_t e = 0; e < history.size(); ++e)
      h.rows.push_back({std::to_string(e + 1), format_num(history[e].loss),
                        format_num(history[e].accuracy)});
    st.report.tables.push_back({"train", h});
  }

  const EvalResult ev = evaluate(st.baseline, st.test_set);
  Table t;
  t.name = "evaluate";
  t.columns = {"class", "correct", "total", "accuracy"};
  for (int c = 0; c < 10; ++c) {
    const int tot = ev.per_class_total[static_cast<std::size_t>(c)];
    const int cor = ev.per_class_correct[static_cast<std::size_t>(c)];
    t.rows.push_back({std::to_string(c), std::to_string(cor), std::to_string(tot),
                      format_num(tot > 0 ? 100.0 * cor / tot : 0.0)});
  }
  t.rows.push_back({"all", std::to_string(static_cast<long>(ev.accuracy / 100.0 * ev.count)),
                    std::to_string(ev.count), format_num(ev.accuracy)});
  st.report.tables.push_back({"train", t});
}

std::vector<ActivationTrace> trace_sample(const Model& m, const Dataset& ds, int n,
                                          std::uint64_t seed) {
  Dataset sample = subsample(ds, std::min<std::size_t>(static_cast<std::size_t>(n), ds.size()), seed);
  std::vector<ActivationTrace> traces;
  constexpr int kBatch = 128;
  const int total = static_cast<int>(sample.size());
  std::vector<int> idx;
  for (int start = 0; start < total; start += kBatch) {
    const int b = std::min(kBatch, total - start);
    idx.resize(static_cast<std::size_t>(b));
    for (int i = 0; i < b; ++i) idx[static_cast<std::size_t>(i)] = start + i;
    ForwardResult r = forward(m, sample.gather(idx), true);
    for (auto& tr : r.traces) traces.push_back(std::move(tr));
  }
  return traces;
}

void run_coverage(RunState& st) {
  const CoverageSection& s = *st.cfg.coverage;
  const std::uint64_t salt = hash_combine(st.cfg.seed, 0xc0fe);
  std::vector<ActivationTrace> traces = trace_sample(st.baseline, st.test_set, s.sample, salt);

  Table t;
  t.name = "metrics";
  t.columns = {"metric", "params", "value"};
  const CoverageReport nc = neuron_coverage(traces, s.threshold);
  t.rows.push_back({"neuron_coverage", "t=" + format_num(s.threshold), format_num(nc.value)});
  const CoverageReport tk = top_k_coverage(traces, s.k);
  t.rows.push_back({"top_k_coverage", "k=" + std::to_string(s.k), format_num(tk.value)});

  const Dataset train_slice = subsample(
      st.train_set, std::min<std::size_t>(static_cast<std::size_t>(s.dsa_train_sample), st.train_set.size()),
      hash_combine(salt, 1));
  const TraceIndex index = build_trace_index(st.baseline, train_slice);
  Dataset cands = subsample(st.test_set,
                            std::min<std::size_t>(static_cast<std::size_t>(std::min(s.sample, 200)),
                                                  st.test_set.size()),
                            hash_combine(salt, 2));
  double sum = 0.0;
  std::size_t finite = 0;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const double v = dsa(st.baseline, index, cands.image(i));
    if (std::isfinite(v)) {
      sum += v;
      ++finite;
    }
  }
  t.rows.push_back({"dsa_mean", "train_n=" + std::to_string(train_slice.size()),
                    format_num(finite ? sum / finite : 0.0)});
  st.report.tables.push_back({"coverage", t});

  Table sel;
  sel.name = "dsa_selected";
  sel.columns = {"rank", "input_id", "dsa"};
  const std::vector<int> chosen =
      select_surprising(st.baseline, index, cands, s.dsa_lo, s.dsa_hi, s.select_n);
  for (std::size_t r = 0; r < chosen.size(); ++r) {
    const double v = dsa(st.baseline, index, cands.image(static_cast<std::size_t>(chosen[r])));
    sel.rows.push_back({std::to_string(r + 1), std::to_string(chosen[r]), format_num(v)});
  }
  st.report.tables.push_back({"coverage", sel});
  st.report.executed.push_back("coverage");

  const std::string cov_json = st.out_file("coverage", ".json");
  std::ofstream f(cov_json, std::ios::binary);
  f << nc.to_json() << "\n" << tk.to_json() << "\n";
  st.artifacts.push_back(cov_json);
}

void run_mt(RunState& st) {
  const MtSection& s = *st.cfg.mt;
  Table t;
  t.name = "results";
  t.columns = {"regime", "mr_config", "accuracy", "error", "seed"};

  Table matrix;
  matrix.name = "matrix";
  matrix.columns = {"regime"};
  for (const auto& mrs : s.configs) matrix.columns.push_back(compose(mrs).describe());

  for (Regime regime : s.regimes) {
    std::vector<std::string> mrow = {regime_name(regime)};
    for (const auto& mrs : s.configs) {
      TrainConfig tc = st.cfg.train;
      tc.seed = st.cfg.seed;
      const MtResult r = ::dlt::run_mt(tc, st.train_set, st.test_set, mrs, regime, &st.cache);
      t.rows.push_back({regime_name(r.regime), r.mr_config, format_num(r.accuracy),
                        format_num(r.error), std::to_string(r.seed)});
      mrow.push_back(format_num(r.accuracy));
    }
    matrix.rows.push_back(std::move(mrow));
  }
  st.report.tables.push_back({"mt", t});
  st.report.tables.push_back({"mt", matrix});
  st.report.executed.push_back("mt");
}

void run_mut(RunState& st) {
  const MutSection& s = *st.cfg.mut;
  const std::uint64_t salt = hash_combine(st.cfg.seed, 0x3007);

  if (!s.kinds.empty() && !s.ratios.empty()) {
    Table t;
    t.name = "sweep";
    t.columns = {"kind", "ratio", "seed", "accuracy", "error"};
    for (const MutCell& cell : run_mut_sweep(st.baseline, st.test_set, s.kinds, s.ratios, salt))
      t.rows.push_back({mut_kind_name(cell.kind), format_num(cell.ratio),
                        std::to_string(cell.seed), format_num(cell.accuracy),
                        format_num(cell.error)});
    st.report.tables.push_back({"mut", t});
  }

  {
    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < s.layer_seeds; ++i) seeds.push_back(hash_combine(salt, 100 + i));
    Table t;
    t.name = "layer_ops";
    t.columns = {"kind", "seed", "accuracy", "error"};
    for (const LayerMutRow& row : run_layer_mutants(st.baseline, st.test_set, seeds))
      t.rows.push_back({mut_kind_name(row.kind), std::to_string(row.seed),
                        format_num(row.accuracy), format_num(row.error)});
    st.report.tables.push_back({"mut", t});
  }

  {
    std::vector<Mutant> mutants;
    for (int i = 0; i < s.score_mutants; ++i) {
      const MutKind kind = s.kinds.empty() ? MutKind::GaussianFuzz
                                           : s.kinds[static_cast<std::size_t>(i) % s.kinds.size()];
      const double ratio = s.ratios.empty() ? 0.05 : s.ratios.front();
      mutants.push_back(mutate(st.baseline, {kind, ratio, hash_combine(salt, 200 + i)}));
    }
    const MutationScore ms = mutation_score(st.baseline, mutants, st.test_set, s.kill_threshold);
    Table t;
    t.name = "score";
    t.columns = {"killed", "considered", "excluded", "score"};
    t.rows.push_back({std::to_string(ms.killed), std::to_string(ms.considered),
                      std::to_string(ms.excluded), format_num(ms.score)});
    st.report.tables.push_back({"mut", t});
  }

  {
    // label-change-rate detection: tau from a clean calibration slice
    const MutantBank bank =
        make_gf_bank(st.baseline, s.lcr_mutants, s.lcr_ratio, hash_combine(salt, 300));
    Dataset cal = subsample(st.test_set,
                            std::min<std::size_t>(static_cast<std::size_t>(s.lcr_sample), st.test_set.size()),
                            hash_combine(salt, 301));
    const std::vector<double> cal_rates = lcr_dataset(bank, st.baseline, cal);
    const double tau = lcr_percentile(cal_rates, 95.0);

    Table t;
    t.name = "lcr_detection";
    t.columns = {"input_id", "lcr", "flag"};
    if (!s.lcr_corpus.empty()) {
      const std::vector<AdvRecord> recs = read_adv_corpus(s.lcr_corpus);
      for (const AdvRecord& rec : recs) {
        Tensor x({1, 28, 28}, rec.pixels);
        const double rate = lcr(bank, st.baseline, x);
        t.rows.push_back({std::to_string(rec.input_id), format_num(rate),
                          rate > tau ? "1" : "0"});
      }
    } else {
      Dataset eval = subsample(st.test_set,
                               std::min<std::size_t>(static_cast<std::size_t>(s.lcr_sample), st.test_set.size()),
                               hash_combine(salt, 302));
      const std::vector<double> rates = lcr_dataset(bank, st.baseline, eval);
      for (std::size_t i = 0; i < rates.size(); ++i)
        t.rows.push_back({std::to_string(i), format_num(rates[i]), rates[i] > tau ? "1" : "0"});
    }
    Table cal_t;
    cal_t.name = "lcr_tau";
    cal_t.columns = {"tau", "calibration_n"};
    cal_t.rows.push_back({format_num(tau), std::to_string(cal.size())});
    st.report.tables.push_back({"mut", cal_t});
    st.report.tables.push_back({"mut", t});
  }
  st.report.executed.push_back("mut");
}

void run_ct(RunState& st) {
  const CtSection& s = *st.cfg.ct;
  Table summary;
  summary.name = "summary";
  summary.columns = {"check", "value"};

  if (!s.domains.empty()) {
    const CoveringArray ca =
        generate_covering_array(s.domains, s.strength, hash_combine(st.cfg.seed, 0xca));
    const auto missing = verify_covering_array(ca);
    const std::string ca_path = st.out_file("covering_array", ".csv");
    std::ofstream f(ca_path, std::ios::binary);
    f << ca.to_csv();
    st.artifacts.push_back(ca_path);
    summary.rows.push_back({"covering_array_rows", std::to_string(ca.rows.size())});
    summary.rows.push_back({"covering_array_missing", std::to_string(missing.size())});
    require(missing.empty(), "generated covering array failed verification");
  }

  {
    const std::vector<ActivationTrace> traces =
        trace_sample(st.baseline, st.test_set, s.neuron_sample, hash_combine(st.cfg.seed, 0xc7));
    const std::vector<int> wl = st.baseline.weighted_layers();
    const int layer = wl.size() >= 2 ? wl[wl.size() - 2] : wl[0];
    const double frac = neuron_tuple_coverage(traces, st.baseline, layer, s.neuron_t,
                                              s.neuron_threshold, 24, hash_combine(st.cfg.seed, 0xc8));
    summary.rows.push_back({"neuron_tuple_coverage_t" + std::to_string(s.neuron_t),
                            format_num(frac)});
  }

  Table smoke;
  smoke.name = "smoke";
  smoke.columns = {"check", "pass", "detail"};
  for (const SmokeCheck& c : smoke_test(st.baseline).checks)
    smoke.rows.push_back({c.name, c.pass ? "pass" : "fail", c.detail});

  st.report.tables.push_back({"ct", summary});
  st.report.tables.push_back({"ct", smoke});
  st.report.executed.push_back("ct");
}

void run_dt(RunState& st) {
  const DtSection& s = *st.cfg.dt;
  TrainConfig base = st.cfg.train;
  base.seed = st.cfg.seed;
  Ensemble ens = train_ensemble(base, s.variants, st.train_set, &st.cache);

  Dataset pool = st.test_set;
  if (s.pool == "mt") {
    require(!s.pool_transforms.empty(), "dt.pool=mt needs dt.pool_transforms");
    pool = augment_dataset(st.test_set, s.pool_transforms, hash_combine(st.cfg.seed, 0xd7));
  } else if (s.pool == "apt") {
    require(!s.pool_corpus.empty(), "dt.pool=apt needs dt.pool_corpus");
    const std::vector<AdvRecord> recs = read_adv_corpus(s.pool_corpus);
    require(!recs.empty(), "adversarial corpus is empty: " + s.pool_corpus);
    Dataset adv;
    adv.images = Tensor({static_cast<int>(recs.size()), 1, 28, 28});
    for (std::size_t i = 0; i < recs.size(); ++i) {
      for (std::size_t p = 0; p < 784; ++p) adv.images[i * 784 + p] = recs[i].pixels[p];
      adv.labels.push_back(0);  // labels unused: disagreement mining is oracle-free
    }
    adv.provenance.note = "adv_corpus:" + s.pool_corpus;
    pool = std::move(adv);
  }

  const std::vector<Disagreement> dis = find_disagreements(ens, pool);
  Table t;
  t.name = "disagreements";
  t.columns = {"input_id"};
  for (std::size_t mi = 0; mi < ens.members.size(); ++mi)
    t.columns.push_back("label_" + std::to_string(mi));
  t.columns.push_back("majority");
  for (std::size_t mi = 0; mi < ens.members.size(); ++mi)
    t.columns.push_back("conf_" + std::to_string(mi));
  for (const Disagreement& d : dis) {
    std::vector<std::string> row = {std::to_string(d.input_id)};
    for (int l : d.labels) row.push_back(std::to_string(l));
    row.push_back(std::to_string(d.majority));
    for (float cconf : d.confidences) row.push_back(format_num(cconf));
    t.rows.push_back(std::move(row));
  }
  st.report.tables.push_back({"dt", t});

  TrainConfig ft = st.cfg.train;
  ft.seed = hash_combine(st.cfg.seed, 0xd8);
  ft.epochs = s.retrain_epochs;
  ft.learning_rate = s.retrain_lr;
  auto [retrained, rep] = retrain_with_disagreements(ens.members[0].model, pool, dis, ft, st.test_set);
  const std::string rep_path = st.out_file("retrain_report", ".json");
  std::ofstream f(rep_path, std::ios::binary);
  f << rep.to_json() << "\n";
  st.artifacts.push_back(rep_path);
  if (rep.retrained) {
    const std::string path = st.out_file("model_retrained", ".nnpb");
    save_model(retrained, path);
    st.artifacts.push_back(path);
  }

  Table rt;
  rt.name = "retrain";
  rt.columns = {"before_clean", "after_clean", "before_pool", "after_pool", "used", "skipped"};
  rt.rows.push_back({format_num(rep.before_clean), format_num(rep.after_clean),
                     format_num(rep.before_pool), format_num(rep.after_pool),
                     std::to_string(rep.used), std::to_string(rep.skipped)});
  st.report.tables.push_back({"dt", rt});
  st.report.executed.push_back("dt");
}

void run_apt(RunState& st) {
  const AptSection& s = *st.cfg.apt;
  const std::uint64_t salt = hash_combine(st.cfg.seed, 0xa97);
  Dataset subset = subsample(st.test_set,
                             std::min<std::size_t>(static_cast<std::size_t>(s.subset), st.test_set.size()),
                             salt);

  Table summary;
  summary.name = "attack_summary";
  summary.columns = {"kind", "eps", "success_rate", "mean_l2", "mean_linf"};

  if (s.kind == "deepfool") {
    const std::size_t cap = std::min<std::size_t>(subset.size(), 200);
    double l2 = 0.0, linf = 0.0;
    int ok = 0;
    for (std::size_t i = 0; i < cap; ++i) {
      const AdversarialResult r = deepfool(st.baseline, subset.image(i), s.max_iter, s.overshoot);
      ok += r.success ? 1 : 0;
      l2 += r.l2;
      linf += r.linf;
    }
    summary.rows.push_back({"deepfool", "-", format_num(100.0 * ok / cap),
                            format_num(l2 / cap), format_num(linf / cap)});
  } else {
    const AttackKind kind = s.kind == "fgsm" ? AttackKind::Fgsm : AttackKind::Ifgsm;
    Table curve;
    curve.name = "robustness_curve";
    curve.columns = {"epsilon", "accuracy"};
    for (const auto& [eps, acc] : robustness_curve(st.baseline, subset, kind, s.epsilons))
      curve.rows.push_back({format_num(eps), format_num(acc)});
    st.report.tables.push_back({"apt", curve});

    // attack stats + optional corpus at the pinned epsilon
    std::vector<AdvRecord> records;
    double l2 = 0.0, linf = 0.0;
    int ok = 0;
    for (std::size_t i = 0; i < subset.size(); ++i) {
      const AdversarialResult r =
          kind == AttackKind::Fgsm
              ? fgsm(st.baseline, subset.image(i), subset.labels[i], s.corpus_eps)
              : ifgsm(st.baseline, subset.image(i), subset.labels[i], s.corpus_eps, s.steps,
                      s.step_size);
      ok += r.success ? 1 : 0;
      l2 += r.l2;
      linf += r.linf;
      if (s.write_corpus) {
        AdvRecord rec;
        rec.input_id = static_cast<std::uint32_t>(i);
        rec.eps = static_cast<float>(s.corpus_eps);
        rec.success = r.success ? 1 : 0;
        rec.pixels = r.x_adv.vec();
        records.push_back(std::move(rec));
      }
    }
    summary.rows.push_back({s.kind, format_num(s.corpus_eps),
                            format_num(100.0 * ok / subset.size()),
                            format_num(l2 / subset.size()), format_num(linf / subset.size())});
    if (s.write_corpus) {
      const std::string corpus_path = st.out_file("adv_corpus", ".bin");
      write_adv_corpus(corpus_path, records);
      st.artifacts.push_back(corpus_path);
    }
  }
  st.report.tables.push_back({"apt", summary});
  st.report.executed.push_back("apt");
}

}  // namespace

std::pair<Dataset, Dataset> resolve_datasets(const ExperimentConfig& config) {
  Dataset train_set, test_set;
  if (config.dataset.synthetic) {
    train_set = synth_digits(config.dataset.synth_train, config.dataset.synth_seed);
    test_set = synth_digits(config.dataset.synth_test, hash_combine(config.dataset.synth_seed, 1));
  } else {
    train_set = load_idx(config.dataset.train_images, config.dataset.train_labels);
    test_set = load_idx(config.dataset.test_images, config.dataset.test_labels);
  }
  if (config.dataset.train_limit > 0 && config.dataset.train_limit < train_set.size())
    train_set = subsample(train_set, config.dataset.train_limit, hash_combine(config.seed, 0x11));
  if (config.dataset.limit > 0 && config.dataset.limit < test_set.size())
    test_set = subsample(test_set, config.dataset.limit, hash_combine(config.seed, 0x12));
  return {std::move(train_set), std::move(test_set)};
}

RunResult run_experiment(const ExperimentConfig& config, const std::set<std::string>& only) {
  config.validate();
  fs::create_directories(config.out_dir);

  RunState st{config, {}, {}, ModelCache((fs::path(config.out_dir) / "cache").string()), {}, {}, {}};
  std::tie(st.train_set, st.test_set) = resolve_datasets(config);
  st.report.seed = config.seed;
  st.report.started = now_stamp();
  st.report.dataset_note = st.train_set.provenance.note.empty()
                               ? st.train_set.provenance.images_path
                               : st.train_set.provenance.note;

  const auto want = [&](const char* key) {
    return only.empty() || only.count(key) > 0;
  };

  run_train(st);  // techniques need the baseline; its own failure aborts

  struct Step {
    const char* key;
    bool configured;
    void (*fn)(RunState&);
  };
  const Step steps[] = {
      {"coverage", config.coverage.has_value(), run_coverage},
      {"mt", config.mt.has_value(), run_mt},
      {"mut", config.mut.has_value(), run_mut},
      {"ct", config.ct.has_value(), run_ct},
      {"dt", config.dt.has_value(), run_dt},
      {"apt", config.apt.has_value(), run_apt},
  };
  for (const Step& s : steps) {
    if (!s.configured || !want(s.key)) continue;
    try {
      s.fn(st);
    } catch (const std::exception& e) {
      st.report.failures.push_back({s.key, e.what()});
    }
  }

  st.report.finished = now_stamp();
  st.report.validate();

  RunResult result;
  const auto csvs = render_csv(st.report, config.out_dir);
  st.artifacts.insert(st.artifacts.end(), csvs.begin(), csvs.end());
  st.artifacts.push_back(render_json(st.report, config.out_dir));
  st.artifacts.push_back(render_markdown(st.report, config.out_dir));
  result.report = std::move(st.report);
  result.artifacts = std::move(st.artifacts);
  return result;
}

std::vector<std::vector<TransformSpec>> mt_configs_from_ca_csv(const std::string& path) {
  const auto rows = read_csv(path);
  require(rows.size() >= 2, "covering-array CSV needs a header and rows: " + path);
  const std::vector<std::string>& header = rows[0];
  std::vector<std::vector<TransformSpec>> configs;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    require(rows[r].size() == header.size(), "ragged covering-array CSV: " + path);
    std::vector<TransformSpec> mrs;
    for (std::size_t c = 0; c < header.size(); ++c) {
      const std::string& name = header[c];
      const std::string& level = rows[r][c];
      if (level == "none" || level == "off" || level == "0") continue;
      if (name == "rotation")
        mrs.push_back(rotation(std::stof(level)));
      else if (name == "shift")
        mrs.push_back(shift(std::stof(level), std::stof(level)));
      else if (name == "shear")
        mrs.push_back(shear(std::stof(level)));
      else if (name == "zoom") {
        const auto colon = level.find(':');
        require(colon != std::string::npos, "zoom level must be lo:hi, got " + level);
        mrs.push_back(zoom(std::stof(level.substr(0, colon)), std::stof(level.substr(colon + 1))));
      } else if (name == "hflip") {
        if (level == "on" || level == "1") mrs.push_back(hflip_spec());
      } else {
        fail("unknown transform domain '" + name + "' in " + path);
      }
    }
    configs.push_back(std::move(mrs));
  }
  return configs;
}

std::vector<std::pair<MutKind, double>> mut_cells_from_ca_csv(const std::string& path) {
  const auto rows = read_csv(path);
  require(rows.size() >= 2, "covering-array CSV needs a header and rows: " + path);
  const std::vector<std::string>& header = rows[0];
  int kind_col = -1, ratio_col = -1;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "kind") kind_col = static_cast<int>(c);
    if (header[c] == "ratio") ratio_col = static_cast<int>(c);
  }
  require(kind_col >= 0 && ratio_col >= 0, "need 'kind' and 'ratio' domains in " + path);
  std::vector<std::pair<MutKind, double>> cells;
  for (std::size_t r = 1; r < rows.size(); ++r)
    cells.push_back({mut_kind_from_name(rows[r][static_cast<std::size_t>(kind_col)]),
                     std::stod(rows[r][static_cast<std::size_t>(ratio_col)])});
  return cells;
}

}  // namespace dlt
