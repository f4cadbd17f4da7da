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

#include "dlt/config.hpp"

#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

namespace dlt {

using nlohmann::json;

namespace {

[[noreturn]] void cfg_fail(const std::string& path, const std::string& msg) {
  fail("config error at " + (path.empty() ? "$" : path) + ": " + msg);
}

void check_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
  if (!j.is_object()) cfg_fail(path, "expected an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) cfg_fail(path + "." + key, "unknown key");
}

const json* find(const json& j, const std::string& key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double need_number(const json& j, const std::string& path) {
  if (!j.is_number()) cfg_fail(path, "expected a number");
  return j.get<double>();
}

std::string need_string(const json& j, const std::string& path) {
  if (!j.is_string()) cfg_fail(path, "expected a string");
  return j.get<std::string>();
}

std::uint64_t need_u64(const json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !j.is_number_integer()) cfg_fail(path, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < 0) cfg_fail(path, "expected a non-negative integer");
  return static_cast<std::uint64_t>(v);
}

int need_int(const json& j, const std::string& path) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) cfg_fail(path, "expected an integer");
  return j.get<int>();
}

TransformSpec parse_transform(const json& j, const std::string& path) {
  check_keys(j, path, {"kind", "params", "mode", "seed", "interp", "children"});
  const json* kind = find(j, "kind");
  if (!kind) cfg_fail(path + ".kind", "missing");
  const std::string k = need_string(*kind, path + ".kind");

  TransformSpec s;
  if (k == "compose") {
    s.kind = TransformKind::Compose;
    if (const json* ch = find(j, "children")) {
      if (!ch->is_array()) cfg_fail(path + ".children", "expected an array");
      for (std::size_t i = 0; i < ch->size(); ++i)
        s.children.push_back(parse_transform((*ch)[i], path + ".children[" + std::to_string(i) + "]"));
    }
  } else {
    std::vector<double> params;
    if (const json* p = find(j, "params")) {
      if (!p->is_array()) cfg_fail(path + ".params", "expected an array");
      for (std::size_t i = 0; i < p->size(); ++i)
        params.push_back(need_number((*p)[i], path + ".params[" + std::to_string(i) + "]"));
    }
    auto want = [&](std::size_t n) {
      if (params.size() != n)
        cfg_fail(path + ".params", k + " takes " + std::to_string(n) + " parameter(s), got " +
                                       std::to_string(params.size()));
    };
    if (k == "rotation") {
      want(1);
      s.kind = TransformKind::Rotation;
      s.p0 = static_cast<float>(params[0]);
    } else if (k == "shift") {
      want(2);
      s.kind = TransformKind::Shift;
      s.p0 = static_cast<float>(params[0]);
      s.p1 = static_cast<float>(params[1]);
    } else if (k == "shear") {
      want(1);
      s.kind = TransformKind::Shear;
      s.p0 = static_cast<float>(params[0]);
    } else if (k == "zoom") {
      want(2);
      s.kind = TransformKind::Zoom;
      s.p0 = static_cast<float>(params[0]);
      s.p1 = static_cast<float>(params[1]);
    } else if (k == "hflip") {
      want(0);
      s.kind = TransformKind::HFlip;
    } else {
      cfg_fail(path + ".kind", "unknown transform kind '" + k + "'");
    }
  }
  if (const json* m = find(j, "mode")) {
    const std::string mode = need_string(*m, path + ".mode");
    if (mode == "fixed")
      s.mode = SampleMode::Fixed;
    else if (mode == "random")
      s.mode = SampleMode::Random;
    else
      cfg_fail(path + ".mode", "expected 'fixed' or 'random'");
  }
  if (const json* i = find(j, "interp")) {
    const std::string interp = need_string(*i, path + ".interp");
    if (interp == "bilinear")
      s.interp = Interp::Bilinear;
    else if (interp == "nearest")
      s.interp = Interp::Nearest;
    else
      cfg_fail(path + ".interp", "expected 'bilinear' or 'nearest'");
  }
  if (const json* sd = find(j, "seed")) s.seed = need_u64(*sd, path + ".seed");
  try {
    s.validate();
  } catch (const Error& e) {
    cfg_fail(path, e.what());
  }
  return s;
}

json transform_json(const TransformSpec& s) {
  json j;
  switch (s.kind) {
    case TransformKind::Rotation:
      j["kind"] = "rotation";
      j["params"] = {s.p0};
      break;
    case TransformKind::Shift:
      j["kind"] = "shift";
      j["params"] = {s.p0, s.p1};
      break;
    case TransformKind::Shear:
      j["kind"] = "shear";
      j["params"] = {s.p0};
      break;
    case TransformKind::Zoom:
      j["kind"] = "zoom";
      j["params"] = {s.p0, s.p1};
      break;
    case TransformKind::HFlip:
      j["kind"] = "hflip";
      j["params"] = json::array();
      break;
    case TransformKind::Compose: {
      j["kind"] = "compose";
      json ch = json::array();
      for (const auto& c : s.children) ch.push_back(transform_json(c));
      j["children"] = ch;
      return j;  // mode/seed carried by the children
    }
  }
  j["mode"] = s.mode == SampleMode::Fixed ? "fixed" : "random";
  j["seed"] = s.seed;
  if (s.interp == Interp::Nearest) j["interp"] = "nearest";
  return j;
}

std::vector<TransformSpec> parse_transform_list(const json& j, const std::string& path) {
  if (!j.is_array()) cfg_fail(path, "expected an array of transforms");
  std::vector<TransformSpec> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(parse_transform(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

std::string transform_to_json(const TransformSpec& spec) { return transform_json(spec).dump(); }

TransformSpec transform_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("transform JSON parse error: ") + e.what());
  }
  return parse_transform(j, "$");
}

void ExperimentConfig::validate() const {
  train.validate();
  require(coverage || mt || mut || ct || dt || apt,
          "config needs at least one technique section (coverage, mt, mut, ct, dt, apt)");
  if (!dataset.synthetic) {
    for (const std::string& p : {dataset.train_images, dataset.train_labels, dataset.test_images,
                                 dataset.test_labels}) {
      require(!p.empty(), "dataset paths are required unless dataset.synthetic is set");
      require(std::filesystem::exists(p), "dataset file does not exist: " + p);
    }
  }
  if (mt) {
    require(!mt->regimes.empty(), "mt.regimes must be nonempty");
    require(!mt->configs.empty(), "mt.configs must be nonempty");
  }
  if (mut) {
    require(std::is_sorted(mut->ratios.begin(), mut->ratios.end()),
            "mut.ratios must be sorted ascending");
  }
  if (ct) {
    for (const auto& d : ct->domains) d.validate();
  }
  if (dt) require(dt->variants.size() >= 2, "dt.variants needs at least 2 entries");
  if (apt) {
    require(apt->kind == "fgsm" || apt->kind == "ifgsm" || apt->kind == "deepfool",
            "apt.kind must be fgsm, ifgsm, or deepfool");
  }
}

ExperimentConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("config JSON parse error: ") + e.what());
  }
  check_keys(j, "", {"seed", "out_dir", "dataset", "train", "coverage", "mt", "mut", "ct", "dt",
                     "apt"});

  ExperimentConfig c;
  if (const json* s = find(j, "seed")) c.seed = need_u64(*s, "seed");
  if (const json* o = find(j, "out_dir")) c.out_dir = need_string(*o, "out_dir");

  if (const json* d = find(j, "dataset")) {
    check_keys(*d, "dataset",
               {"train_images", "train_labels", "test_images", "test_labels", "synthetic",
                "limit", "train_limit"});
    auto str = [&](const char* key, std::string* dst) {
      if (const json* v = find(*d, key)) *dst = need_string(*v, std::string("dataset.") + key);
    };
    str("train_images", &c.dataset.train_images);
    str("train_labels", &c.dataset.train_labels);
    str("test_images", &c.dataset.test_images);
    str("test_labels", &c.dataset.test_labels);
    if (const json* v = find(*d, "limit")) c.dataset.limit = need_u64(*v, "dataset.limit");
    if (const json* v = find(*d, "train_limit"))
      c.dataset.train_limit = need_u64(*v, "dataset.train_limit");
    if (const json* sy = find(*d, "synthetic")) {
      check_keys(*sy, "dataset.synthetic", {"train", "test", "seed"});
      c.dataset.synthetic = true;
      if (const json* v = find(*sy, "train")) {
        c.dataset.synth_train = need_u64(*v, "dataset.synthetic.train");
        if (c.dataset.synth_train < 1) cfg_fail("dataset.synthetic.train", "must be >= 1");
      }
      if (const json* v = find(*sy, "test")) {
        c.dataset.synth_test = need_u64(*v, "dataset.synthetic.test");
        if (c.dataset.synth_test < 1) cfg_fail("dataset.synthetic.test", "must be >= 1");
      }
      if (const json* v = find(*sy, "seed")) c.dataset.synth_seed = need_u64(*v, "dataset.synthetic.seed");
    }
  }

  if (const json* t = find(j, "train")) {
    check_keys(*t, "train", {"architecture", "epochs", "batch_size", "learning_rate", "momentum"});
    if (const json* v = find(*t, "architecture")) {
      c.train.architecture = need_string(*v, "train.architecture");
      if (!is_known_architecture(c.train.architecture))
        cfg_fail("train.architecture", "unknown architecture '" + c.train.architecture + "'");
    }
    if (const json* v = find(*t, "epochs")) c.train.epochs = need_int(*v, "train.epochs");
    if (const json* v = find(*t, "batch_size")) c.train.batch_size = need_int(*v, "train.batch_size");
    if (const json* v = find(*t, "learning_rate"))
      c.train.learning_rate = static_cast<float>(need_number(*v, "train.learning_rate"));
    if (const json* v = find(*t, "momentum"))
      c.train.momentum = static_cast<float>(need_number(*v, "train.momentum"));
  }
  c.train.seed = c.seed;

  if (const json* cov = find(j, "coverage")) {
    check_keys(*cov, "coverage",
               {"threshold", "k", "sample", "dsa_train_sample", "dsa_band", "select_n"});
    CoverageSection s;
    if (const json* v = find(*cov, "threshold")) {
      s.threshold = need_number(*v, "coverage.threshold");
      if (s.threshold < 0.0 || s.threshold > 1.0) cfg_fail("coverage.threshold", "must be in [0,1]");
    }
    if (const json* v = find(*cov, "k")) s.k = need_int(*v, "coverage.k");
    if (const json* v = find(*cov, "sample")) s.sample = need_int(*v, "coverage.sample");
    if (const json* v = find(*cov, "dsa_train_sample"))
      s.dsa_train_sample = need_int(*v, "coverage.dsa_train_sample");
    if (const json* v = find(*cov, "dsa_band")) {
      if (!v->is_array() || v->size() != 2) cfg_fail("coverage.dsa_band", "expected [lo, hi]");
      s.dsa_lo = need_number((*v)[0], "coverage.dsa_band[0]");
      s.dsa_hi = need_number((*v)[1], "coverage.dsa_band[1]");
      if (!(s.dsa_lo < s.dsa_hi)) cfg_fail("coverage.dsa_band", "needs lo < hi");
    }
    if (const json* v = find(*cov, "select_n")) s.select_n = need_int(*v, "coverage.select_n");
    c.coverage = s;
  }

  if (const json* mt = find(j, "mt")) {
    check_keys(*mt, "mt", {"regimes", "configs"});
    MtSection s;
    if (const json* r = find(*mt, "regimes")) {
      if (!r->is_array()) cfg_fail("mt.regimes", "expected an array");
      for (std::size_t i = 0; i < r->size(); ++i) {
        const std::string name = need_string((*r)[i], "mt.regimes[" + std::to_string(i) + "]");
        try {
          s.regimes.push_back(regime_from_name(name));
        } catch (const Error& e) {
          cfg_fail("mt.regimes[" + std::to_string(i) + "]", e.what());
        }
      }
    }
    if (const json* cf = find(*mt, "configs")) {
      if (!cf->is_array()) cfg_fail("mt.configs", "expected an array of transform lists");
      for (std::size_t i = 0; i < cf->size(); ++i)
        s.configs.push_back(parse_transform_list((*cf)[i], "mt.configs[" + std::to_string(i) + "]"));
    }
    c.mt = s;
  }

  if (const json* mu = find(j, "mut")) {
    check_keys(*mu, "mut",
               {"kinds", "ratios", "layer_seeds", "score_mutants", "kill_threshold",
                "lcr_mutants", "lcr_ratio", "lcr_sample", "lcr_corpus"});
    MutSection s;
    if (const json* k = find(*mu, "kinds")) {
      if (!k->is_array()) cfg_fail("mut.kinds", "expected an array");
      for (std::size_t i = 0; i < k->size(); ++i) {
        const std::string name = need_string((*k)[i], "mut.kinds[" + std::to_string(i) + "]");
        try {
          s.kinds.push_back(mut_kind_from_name(name));
        } catch (const Error& e) {
          cfg_fail("mut.kinds[" + std::to_string(i) + "]", e.what());
        }
      }
    } else {
      s.kinds = {MutKind::GaussianFuzz, MutKind::WeightShuffle, MutKind::NeuronEffectBlock,
                 MutKind::NeuronActInverse, MutKind::NeuronSwitch};
    }
    if (const json* r = find(*mu, "ratios")) {
      if (!r->is_array()) cfg_fail("mut.ratios", "expected an array");
      for (std::size_t i = 0; i < r->size(); ++i)
        s.ratios.push_back(need_number((*r)[i], "mut.ratios[" + std::to_string(i) + "]"));
    } else {
      s.ratios = {0.01, 0.1, 0.2, 0.3, 0.4, 0.5};
    }
    if (const json* v = find(*mu, "layer_seeds")) s.layer_seeds = need_int(*v, "mut.layer_seeds");
    if (const json* v = find(*mu, "score_mutants")) s.score_mutants = need_int(*v, "mut.score_mutants");
    if (const json* v = find(*mu, "kill_threshold"))
      s.kill_threshold = need_number(*v, "mut.kill_threshold");
    if (const json* v = find(*mu, "lcr_mutants")) s.lcr_mutants = need_int(*v, "mut.lcr_mutants");
    if (const json* v = find(*mu, "lcr_ratio")) s.lcr_ratio = need_number(*v, "mut.lcr_ratio");
    if (const json* v = find(*mu, "lcr_sample")) s.lcr_sample = need_int(*v, "mut.lcr_sample");
    if (const json* v = find(*mu, "lcr_corpus")) s.lcr_corpus = need_string(*v, "mut.lcr_corpus");
    c.mut = s;
  }

  if (const json* ct = find(j, "ct")) {
    check_keys(*ct, "ct", {"domains", "strength", "neuron_t", "neuron_threshold", "neuron_sample"});
    CtSection s;
    if (const json* d = find(*ct, "domains")) {
      if (!d->is_array()) cfg_fail("ct.domains", "expected an array");
      for (std::size_t i = 0; i < d->size(); ++i) {
        const std::string p = "ct.domains[" + std::to_string(i) + "]";
        check_keys((*d)[i], p, {"name", "levels"});
        ParameterDomain dom;
        if (const json* n = find((*d)[i], "name")) dom.name = need_string(*n, p + ".name");
        if (const json* l = find((*d)[i], "levels")) {
          if (!l->is_array()) cfg_fail(p + ".levels", "expected an array");
          for (std::size_t li = 0; li < l->size(); ++li)
            dom.levels.push_back(need_string((*l)[li], p + ".levels[" + std::to_string(li) + "]"));
        }
        try {
          dom.validate();
        } catch (const Error& e) {
          cfg_fail(p, e.what());
        }
        s.domains.push_back(std::move(dom));
      }
    }
    if (const json* v = find(*ct, "strength")) s.strength = need_int(*v, "ct.strength");
    if (const json* v = find(*ct, "neuron_t")) s.neuron_t = need_int(*v, "ct.neuron_t");
    if (const json* v = find(*ct, "neuron_threshold"))
      s.neuron_threshold = need_number(*v, "ct.neuron_threshold");
    if (const json* v = find(*ct, "neuron_sample")) s.neuron_sample = need_int(*v, "ct.neuron_sample");
    c.ct = s;
  }

  if (const json* dt = find(j, "dt")) {
    check_keys(*dt, "dt",
               {"variants", "pool", "pool_transforms", "pool_corpus", "retrain_epochs",
                "retrain_learning_rate"});
    DtSection s;
    if (const json* v = find(*dt, "variants")) {
      if (!v->is_array()) cfg_fail("dt.variants", "expected an array");
      for (std::size_t i = 0; i < v->size(); ++i) {
        const std::string p = "dt.variants[" + std::to_string(i) + "]";
        check_keys((*v)[i], p, {"seed", "architecture"});
        Variant var;
        if (const json* sd = find((*v)[i], "seed")) var.seed = need_u64(*sd, p + ".seed");
        if (const json* a = find((*v)[i], "architecture")) {
          var.architecture = need_string(*a, p + ".architecture");
          if (!is_known_architecture(var.architecture))
            cfg_fail(p + ".architecture", "unknown architecture '" + var.architecture + "'");
        }
        s.variants.push_back(var);
      }
    }
    if (const json* v = find(*dt, "pool")) {
      s.pool = need_string(*v, "dt.pool");
      if (s.pool != "clean" && s.pool != "mt" && s.pool != "apt")
        cfg_fail("dt.pool", "expected clean, mt, or apt");
    }
    if (const json* v = find(*dt, "pool_transforms"))
      s.pool_transforms = parse_transform_list(*v, "dt.pool_transforms");
    if (const json* v = find(*dt, "pool_corpus")) s.pool_corpus = need_string(*v, "dt.pool_corpus");
    if (const json* v = find(*dt, "retrain_epochs")) s.retrain_epochs = need_int(*v, "dt.retrain_epochs");
    if (const json* v = find(*dt, "retrain_learning_rate"))
      s.retrain_lr = static_cast<float>(need_number(*v, "dt.retrain_learning_rate"));
    c.dt = s;
  }

  if (const json* ap = find(j, "apt")) {
    check_keys(*ap, "apt",
               {"kind", "epsilons", "subset", "steps", "step_size", "max_iter", "overshoot",
                "write_corpus", "corpus_eps"});
    AptSection s;
    if (const json* v = find(*ap, "kind")) s.kind = need_string(*v, "apt.kind");
    if (const json* v = find(*ap, "epsilons")) {
      s.epsilons.clear();
      if (!v->is_array()) cfg_fail("apt.epsilons", "expected an array");
      for (std::size_t i = 0; i < v->size(); ++i)
        s.epsilons.push_back(need_number((*v)[i], "apt.epsilons[" + std::to_string(i) + "]"));
    }
    if (const json* v = find(*ap, "subset")) s.subset = need_int(*v, "apt.subset");
    if (const json* v = find(*ap, "steps")) s.steps = need_int(*v, "apt.steps");
    if (const json* v = find(*ap, "step_size")) s.step_size = need_number(*v, "apt.step_size");
    if (const json* v = find(*ap, "max_iter")) s.max_iter = need_int(*v, "apt.max_iter");
    if (const json* v = find(*ap, "overshoot")) s.overshoot = need_number(*v, "apt.overshoot");
    if (const json* v = find(*ap, "write_corpus")) {
      if (!v->is_boolean()) cfg_fail("apt.write_corpus", "expected a boolean");
      s.write_corpus = v->get<bool>();
    }
    if (const json* v = find(*ap, "corpus_eps")) s.corpus_eps = need_number(*v, "apt.corpus_eps");
    c.apt = s;
  }

  try {
    c.validate();
  } catch (const Error& e) {
    fail(std::string("config error: ") + e.what());
  }
  return c;
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream f(path);
  require(f.good(), "cannot open config file: " + path);
  std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return parse_config_text(text);
}

std::string config_to_json(const ExperimentConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["out_dir"] = c.out_dir;
  json d;
  if (c.dataset.synthetic) {
    d["synthetic"] = {{"train", c.dataset.synth_train},
                      {"test", c.dataset.synth_test},
                      {"seed", c.dataset.synth_seed}};
  } else {
    d["train_images"] = c.dataset.train_images;
    d["train_labels"] = c.dataset.train_labels;
    d["test_images"] = c.dataset.test_images;
    d["test_labels"] = c.dataset.test_labels;
  }
  if (c.dataset.limit) d["limit"] = c.dataset.limit;
  if (c.dataset.train_limit) d["train_limit"] = c.dataset.train_limit;
  j["dataset"] = d;
  j["train"] = {{"architecture", c.train.architecture},
                {"epochs", c.train.epochs},
                {"batch_size", c.train.batch_size},
                {"learning_rate", c.train.learning_rate},
                {"momentum", c.train.momentum}};
  if (c.coverage) {
    j["coverage"] = {{"threshold", c.coverage->threshold},
                     {"k", c.coverage->k},
                     {"sample", c.coverage->sample},
                     {"dsa_train_sample", c.coverage->dsa_train_sample},
                     {"dsa_band", {c.coverage->dsa_lo, c.coverage->dsa_hi}},
                     {"select_n", c.coverage->select_n}};
  }
  if (c.mt) {
    json cfgs = json::array();
    for (const auto& list : c.mt->configs) {
      json one = json::array();
      for (const auto& t : list) one.push_back(transform_json(t));
      cfgs.push_back(one);
    }
    json regimes = json::array();
    for (Regime r : c.mt->regimes) regimes.push_back(regime_name(r));
    j["mt"] = {{"regimes", regimes}, {"configs", cfgs}};
  }
  if (c.mut) {
    json kinds = json::array();
    for (MutKind k : c.mut->kinds) kinds.push_back(mut_kind_name(k));
    j["mut"] = {{"kinds", kinds},
                {"ratios", c.mut->ratios},
                {"layer_seeds", c.mut->layer_seeds},
                {"score_mutants", c.mut->score_mutants},
                {"kill_threshold", c.mut->kill_threshold},
                {"lcr_mutants", c.mut->lcr_mutants},
                {"lcr_ratio", c.mut->lcr_ratio},
                {"lcr_sample", c.mut->lcr_sample}};
    if (!c.mut->lcr_corpus.empty()) j["mut"]["lcr_corpus"] = c.mut->lcr_corpus;
  }
  if (c.ct) {
    json domains = json::array();
    for (const auto& dom : c.ct->domains)
      domains.push_back({{"name", dom.name}, {"levels", dom.levels}});
    j["ct"] = {{"domains", domains},
               {"strength", c.ct->strength},
               {"neuron_t", c.ct->neuron_t},
               {"neuron_threshold", c.ct->neuron_threshold},
               {"neuron_sample", c.ct->neuron_sample}};
  }
  if (c.dt) {
    json variants = json::array();
    for (const auto& v : c.dt->variants) {
      json one = {{"seed", v.seed}};
      if (!v.architecture.empty()) one["architecture"] = v.architecture;
      variants.push_back(one);
    }
    j["dt"] = {{"variants", variants},
               {"pool", c.dt->pool},
               {"retrain_epochs", c.dt->retrain_epochs},
               {"retrain_learning_rate", c.dt->retrain_lr}};
    if (!c.dt->pool_transforms.empty()) {
      json ts = json::array();
      for (const auto& t : c.dt->pool_transforms) ts.push_back(transform_json(t));
      j["dt"]["pool_transforms"] = ts;
    }
    if (!c.dt->pool_corpus.empty()) j["dt"]["pool_corpus"] = c.dt->pool_corpus;
  }
  if (c.apt) {
    j["apt"] = {{"kind", c.apt->kind},
                {"epsilons", c.apt->epsilons},
                {"subset", c.apt->subset},
                {"steps", c.apt->steps},
                {"step_size", c.apt->step_size},
                {"max_iter", c.apt->max_iter},
                {"overshoot", c.apt->overshoot},
                {"write_corpus", c.apt->write_corpus},
                {"corpus_eps", c.apt->corpus_eps}};
  }
  return j.dump(2);
}

}  // namespace dlt
