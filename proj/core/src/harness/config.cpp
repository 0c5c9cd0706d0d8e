// Copyright 2026 The hwarch Authors.
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
#include "hwarch/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hwarch/error.hpp"

namespace hwarch {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(Errc::kConfigError, path + ": " + what);
}

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

void require_object(const json& j, const std::string& path,
                    std::initializer_list<std::string_view> keys) {
  if (!j.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (std::string_view k : keys) known |= key == k;
    if (!known) fail(join(path, key), "unknown key");
  }
}

void read_count(const json& j, const std::string& path, std::string_view key, std::size_t& out) {
  if (!j.contains(key)) return;
  const json& v = j.at(std::string(key));
  if (!v.is_number_unsigned()) fail(join(path, key), "expected a non-negative integer");
  out = v.get<std::size_t>();
}

void read_seed(const json& j, const std::string& path, std::string_view key, std::uint64_t& out) {
  if (!j.contains(key)) return;
  const json& v = j.at(std::string(key));
  if (!v.is_number_unsigned()) fail(join(path, key), "expected an unsigned 64-bit integer");
  out = v.get<std::uint64_t>();
}

void read_real(const json& j, const std::string& path, std::string_view key, double& out) {
  if (!j.contains(key)) return;
  const json& v = j.at(std::string(key));
  if (!v.is_number()) fail(join(path, key), "expected a number");
  out = v.get<double>();
}

void read_bool(const json& j, const std::string& path, std::string_view key, bool& out) {
  if (!j.contains(key)) return;
  const json& v = j.at(std::string(key));
  if (!v.is_boolean()) fail(join(path, key), "expected true or false");
  out = v.get<bool>();
}

std::string read_string(const json& j, const std::string& path, std::string_view key) {
  const json& v = j.at(std::string(key));
  if (!v.is_string()) fail(join(path, key), "expected a string");
  return v.get<std::string>();
}

void read_counts(const json& j, const std::string& path, std::string_view key,
                 std::vector<std::size_t>& out) {
  if (!j.contains(key)) return;
  const json& v = j.at(std::string(key));
  const std::string here = join(path, key);
  if (!v.is_array()) fail(here, "expected an array of integers");
  out.clear();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_unsigned()) fail(here + "[" + std::to_string(i) + "]", "expected a non-negative integer");
    out.push_back(v[i].get<std::size_t>());
  }
}

void read_wta_list(const json& j, const std::string& path, std::string_view key,
                   std::vector<WtaParams>& out) {
  if (!j.contains(key)) return;
  const json& v = j.at(std::string(key));
  const std::string here = join(path, key);
  // A single object is shorthand for a one-element sweep.
  const json list = v.is_object() ? json::array({v}) : v;
  if (!list.is_array()) fail(here, "expected an object or an array of objects");
  out.clear();
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string item = here + "[" + std::to_string(i) + "]";
    require_object(list[i], item, {"window", "bands", "hashes"});
    WtaParams p;
    read_count(list[i], item, "window", p.window);
    read_count(list[i], item, "bands", p.bands);
    read_count(list[i], item, "hashes", p.hashes);
    out.push_back(p);
  }
}

Backend read_backend(const json& j, const std::string& path, std::string_view key, Backend fallback) {
  if (!j.contains(key)) return fallback;
  const std::string name = read_string(j, path, key);
  try {
    return parse_backend(name);
  } catch (const Error&) {
    fail(join(path, key), "unknown backend '" + name + "' (exact, svd, rp, wta)");
  }
}

std::string_view policy_name(AugmentPolicy::Kind k) {
  switch (k) {
    case AugmentPolicy::Kind::kNever: return "never";
    case AugmentPolicy::Kind::kAlways: return "always";
    case AugmentPolicy::Kind::kJlBound: return "jl";
  }
  return "jl";
}

std::string_view pooling_name(Pooling p) { return p == Pooling::kMax ? "max" : "sum"; }

std::string_view similarity_name(Similarity::Kind k) {
  return k == Similarity::Kind::kNormalizedDot ? "normalized_dot" : "sigmoid_dot";
}

json wta_json(const std::vector<WtaParams>& list) {
  json out = json::array();
  for (const WtaParams& p : list) {
    out.push_back({{"window", p.window}, {"bands", p.bands}, {"hashes", p.hashes}});
  }
  return out;
}

json backend_list(const std::vector<Backend>& list) {
  json out = json::array();
  for (Backend b : list) out.push_back(backend_name(b));
  return out;
}

void check(bool ok, const std::string& path, const std::string& what) {
  if (!ok) fail(path, what);
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

void validate_wta(const std::vector<WtaParams>& list, const std::string& path, std::size_t dim) {
  check(!list.empty(), path, "needs at least one parameter set");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string item = path + "[" + std::to_string(i) + "]";
    check(list[i].window >= 2 && list[i].window <= dim, item + ".window",
          "must lie in [2, " + std::to_string(dim) + "]");
    check(list[i].bands >= 1, item + ".bands", "must be >= 1");
    check(list[i].hashes >= 1, item + ".hashes", "must be >= 1");
  }
}

}  // namespace

std::string_view experiment_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::kVentral: return "ventral";
    case ExperimentKind::kMtl: return "mtl";
    case ExperimentKind::kEquiv: return "equiv";
    case ExperimentKind::kOjaDemo: return "oja-demo";
  }
  return "ventral";
}

ExperimentKind parse_experiment(std::string_view name) {
  for (ExperimentKind k : {ExperimentKind::kVentral, ExperimentKind::kMtl, ExperimentKind::kEquiv,
                           ExperimentKind::kOjaDemo}) {
    if (experiment_name(k) == name) return k;
  }
  fail("experiment", "unknown experiment '" + std::string(name) + "' (ventral, mtl, equiv, oja-demo)");
}

std::string_view format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::kCsv: return "csv";
    case OutputFormat::kJson: return "json";
    case OutputFormat::kBoth: return "both";
  }
  return "both";
}

OutputFormat parse_format(std::string_view name) {
  for (OutputFormat f : {OutputFormat::kCsv, OutputFormat::kJson, OutputFormat::kBoth}) {
    if (format_name(f) == name) return f;
  }
  fail("output.format", "unknown format '" + std::string(name) + "' (csv, json, both)");
}

ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig c;
  c.experiment = kind;
  c.reps = kind == ExperimentKind::kMtl ? 20 : 1;
  return c;
}

void validate(const ExperimentConfig& c) {
  check(c.reps >= 1, "reps", "must be >= 1");
  check(std::isfinite(c.similarity.gain) && c.similarity.gain > 0.0, "similarity.gain",
        "must be finite and > 0");

  check(c.cortex.backend == Backend::kExact || c.cortex.backend == Backend::kSvd,
        "cortex.backend", "must be exact or svd");
  check(c.cortex.rank >= 1, "cortex.rank", "must be >= 1");
  check(c.cortex.oja_epochs >= 1, "cortex.oja_epochs", "must be >= 1");

  const Backend hb = c.hippocampus.backend;
  check(hb == Backend::kExact || hb == Backend::kRp || hb == Backend::kWta,
        "hippocampus.backend", "must be exact, rp or wta");
  const std::size_t sig_dim = c.mtl.n_dev_faces + c.mtl.n_dev_names;
  const RpConfig& rp = c.hippocampus.rp;
  check(rp.initial_columns >= 1 && rp.initial_columns <= std::max<std::size_t>(sig_dim, 1),
        "hippocampus.rp.initial_columns", "must lie in [1, " + std::to_string(sig_dim) + "]");
  check(rp.policy.eps > 0.0 && rp.policy.eps < 1.0, "hippocampus.rp.eps", "must lie in (0, 1)");
  check(std::isfinite(rp.policy.c) && rp.policy.c > 0.0, "hippocampus.rp.c", "must be > 0");
  validate_wta(c.hippocampus.wta, "hippocampus.wta", std::max<std::size_t>(sig_dim, 2));

  const VentralConfig& v = c.ventral;
  check(v.n_train >= 2, "ventral.n_train", "must be >= 2");
  check(v.n_test >= 2, "ventral.n_test", "must be >= 2 (different pairs need two identities)");
  check(v.calibration == VentralConfig::Calibration::kTrain || v.n_calibration >= 2,
        "ventral.n_calibration", "must be >= 2 (different pairs need two identities)");
  check(v.dim >= 2, "ventral.dim", "must be >= 2");
  check(v.orbit_subset != 1 && v.orbit_subset <= v.dim, "ventral.orbit_subset",
        "must be 0 (full orbit) or lie in [2, dim]");
  check(finite_nonneg(v.noise), "ventral.noise", "must be finite and >= 0");
  check(v.pairs >= 1, "ventral.pairs", "must be >= 1");

  const MtlConfig& m = c.mtl;
  check(m.dim_a >= 2, "mtl.dim_a", "must be >= 2");
  check(m.dim_b >= 2, "mtl.dim_b", "must be >= 2");
  check(m.study_items >= 1, "mtl.study_items", "must be >= 1");
  check(m.probes >= 1, "mtl.probes", "must be >= 1");
  check(m.study_items + m.probes <= std::min(m.dim_a, m.dim_b), "mtl.probes",
        "study_items + probes must not exceed min(dim_a, dim_b)");
  check(m.fonts >= 1, "mtl.fonts", "must be >= 1");
  check(finite_nonneg(m.font_strength), "mtl.font_strength", "must be finite and >= 0");
  check(finite_nonneg(m.noise), "mtl.noise", "must be finite and >= 0");
  check(m.n_dev_faces >= 1, "mtl.n_dev_faces", "must be >= 1");
  check(m.n_dev_names >= 1, "mtl.n_dev_names", "must be >= 1");
  check(!m.study_sizes.empty(), "mtl.study_sizes", "needs at least one size");
  for (std::size_t i = 0; i < m.study_sizes.size(); ++i) {
    check(m.study_sizes[i] >= 1, "mtl.study_sizes[" + std::to_string(i) + "]", "must be >= 1");
  }

  const EquivConfig& e = c.equiv;
  check(e.dim >= 2, "equiv.dim", "must be >= 2");
  check(e.templates >= 1, "equiv.templates", "must be >= 1");
  check(e.queries >= 1, "equiv.queries", "must be >= 1");
  check(e.instances >= 1, "equiv.instances", "must be >= 1");
  for (std::size_t i = 0; i < e.ranks.size(); ++i) {
    check(e.ranks[i] >= 1, "equiv.ranks[" + std::to_string(i) + "]", "must be >= 1");
  }
  for (std::size_t i = 0; i < e.projections.size(); ++i) {
    check(e.projections[i] >= 1 && e.projections[i] <= e.dim,
          "equiv.projections[" + std::to_string(i) + "]", "must lie in [1, dim]");
  }
  if (!e.wta.empty()) validate_wta(e.wta, "equiv.wta", e.dim);
  check(!e.backends.empty(), "equiv.backends", "needs at least one backend");

  const OjaDemoConfig& o = c.oja;
  check(o.dim >= 1, "oja.dim", "must be >= 1");
  check(o.samples >= 1, "oja.samples", "must be >= 1");
  check(o.components >= 1 && o.components <= o.dim, "oja.components", "must lie in [1, dim]");
  check(o.epochs >= 1, "oja.epochs", "must be >= 1");
  check(std::isfinite(o.eigengap) && o.eigengap > 1.0, "oja.eigengap", "must be > 1");

  check(!c.output.dir.empty(), "output.dir", "must not be empty");
}

ExperimentConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    fail("<document>", std::string("malformed JSON: ") + e.what());
  }
  require_object(root, "", {"experiment", "seed", "reps", "pooling", "similarity", "cortex",
                            "hippocampus", "ventral", "mtl", "equiv", "oja", "output"});
  if (!root.contains("experiment")) fail("experiment", "missing required key");
  ExperimentConfig c = default_config(parse_experiment(read_string(root, "", "experiment")));

  read_seed(root, "", "seed", c.seed);
  read_count(root, "", "reps", c.reps);
  if (root.contains("pooling")) {
    const std::string p = read_string(root, "", "pooling");
    if (p == "max") c.pooling = Pooling::kMax;
    else if (p == "sum") c.pooling = Pooling::kSum;
    else fail("pooling", "expected max or sum");
  }
  if (root.contains("similarity")) {
    const json& s = root["similarity"];
    require_object(s, "similarity", {"kind", "gain"});
    if (s.contains("kind")) {
      const std::string k = read_string(s, "similarity", "kind");
      if (k == "normalized_dot") c.similarity.kind = Similarity::Kind::kNormalizedDot;
      else if (k == "sigmoid_dot") c.similarity.kind = Similarity::Kind::kSigmoidDot;
      else fail("similarity.kind", "expected normalized_dot or sigmoid_dot");
    }
    read_real(s, "similarity", "gain", c.similarity.gain);
  }
  if (root.contains("cortex")) {
    const json& s = root["cortex"];
    require_object(s, "cortex", {"backend", "rank", "learner", "oja_epochs"});
    c.cortex.backend = read_backend(s, "cortex", "backend", c.cortex.backend);
    read_count(s, "cortex", "rank", c.cortex.rank);
    if (s.contains("learner")) {
      const std::string l = read_string(s, "cortex", "learner");
      if (l == "svd") c.cortex.learner = CortexConfig::Learner::kSvd;
      else if (l == "oja") c.cortex.learner = CortexConfig::Learner::kOja;
      else fail("cortex.learner", "expected svd or oja");
    }
    read_count(s, "cortex", "oja_epochs", c.cortex.oja_epochs);
  }
  if (root.contains("hippocampus")) {
    const json& s = root["hippocampus"];
    require_object(s, "hippocampus", {"backend", "rp", "wta"});
    c.hippocampus.backend = read_backend(s, "hippocampus", "backend", c.hippocampus.backend);
    if (s.contains("rp")) {
      const json& r = s["rp"];
      const std::string path = "hippocampus.rp";
      require_object(r, path, {"initial_columns", "shared", "policy", "eps", "c"});
      read_count(r, path, "initial_columns", c.hippocampus.rp.initial_columns);
      read_bool(r, path, "shared", c.hippocampus.rp.shared);
      if (r.contains("policy")) {
        const std::string p = read_string(r, path, "policy");
        if (p == "never") c.hippocampus.rp.policy.kind = AugmentPolicy::Kind::kNever;
        else if (p == "always") c.hippocampus.rp.policy.kind = AugmentPolicy::Kind::kAlways;
        else if (p == "jl") c.hippocampus.rp.policy.kind = AugmentPolicy::Kind::kJlBound;
        else fail(path + ".policy", "expected never, always or jl");
      }
      read_real(r, path, "eps", c.hippocampus.rp.policy.eps);
      read_real(r, path, "c", c.hippocampus.rp.policy.c);
    }
    read_wta_list(s, "hippocampus", "wta", c.hippocampus.wta);
  }
  if (root.contains("ventral")) {
    const json& s = root["ventral"];
    require_object(s, "ventral", {"n_train", "n_test", "calibration", "n_calibration", "dim",
                                  "orbit_subset", "noise", "pairs"});
    read_count(s, "ventral", "n_train", c.ventral.n_train);
    read_count(s, "ventral", "n_test", c.ventral.n_test);
    if (s.contains("calibration")) {
      const std::string cal = read_string(s, "ventral", "calibration");
      if (cal == "heldout") c.ventral.calibration = VentralConfig::Calibration::kHeldout;
      else if (cal == "train") c.ventral.calibration = VentralConfig::Calibration::kTrain;
      else fail("ventral.calibration", "expected heldout or train");
    }
    read_count(s, "ventral", "n_calibration", c.ventral.n_calibration);
    read_count(s, "ventral", "dim", c.ventral.dim);
    read_count(s, "ventral", "orbit_subset", c.ventral.orbit_subset);
    read_real(s, "ventral", "noise", c.ventral.noise);
    read_count(s, "ventral", "pairs", c.ventral.pairs);
  }
  if (root.contains("mtl")) {
    const json& s = root["mtl"];
    require_object(s, "mtl", {"dim_a", "dim_b", "study_items", "probes", "fonts", "font_strength",
                              "noise", "n_dev_faces", "n_dev_names", "study_sizes"});
    read_count(s, "mtl", "dim_a", c.mtl.dim_a);
    read_count(s, "mtl", "dim_b", c.mtl.dim_b);
    read_count(s, "mtl", "study_items", c.mtl.study_items);
    read_count(s, "mtl", "probes", c.mtl.probes);
    read_count(s, "mtl", "fonts", c.mtl.fonts);
    read_real(s, "mtl", "font_strength", c.mtl.font_strength);
    read_real(s, "mtl", "noise", c.mtl.noise);
    read_count(s, "mtl", "n_dev_faces", c.mtl.n_dev_faces);
    read_count(s, "mtl", "n_dev_names", c.mtl.n_dev_names);
    read_counts(s, "mtl", "study_sizes", c.mtl.study_sizes);
  }
  if (root.contains("equiv")) {
    const json& s = root["equiv"];
    require_object(s, "equiv", {"dim", "templates", "queries", "instances", "ranks", "projections",
                                "wta", "backends"});
    read_count(s, "equiv", "dim", c.equiv.dim);
    read_count(s, "equiv", "templates", c.equiv.templates);
    read_count(s, "equiv", "queries", c.equiv.queries);
    read_count(s, "equiv", "instances", c.equiv.instances);
    read_counts(s, "equiv", "ranks", c.equiv.ranks);
    read_counts(s, "equiv", "projections", c.equiv.projections);
    read_wta_list(s, "equiv", "wta", c.equiv.wta);
    if (s.contains("backends")) {
      const json& list = s["backends"];
      if (!list.is_array()) fail("equiv.backends", "expected an array of backend names");
      c.equiv.backends.clear();
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string item = "equiv.backends[" + std::to_string(i) + "]";
        if (!list[i].is_string()) fail(item, "expected a string");
        try {
          c.equiv.backends.push_back(parse_backend(list[i].get<std::string>()));
        } catch (const Error&) {
          fail(item, "unknown backend '" + list[i].get<std::string>() + "'");
        }
      }
    }
  }
  if (root.contains("oja")) {
    const json& s = root["oja"];
    require_object(s, "oja", {"dim", "samples", "components", "epochs", "eigengap"});
    read_count(s, "oja", "dim", c.oja.dim);
    read_count(s, "oja", "samples", c.oja.samples);
    read_count(s, "oja", "components", c.oja.components);
    read_count(s, "oja", "epochs", c.oja.epochs);
    read_real(s, "oja", "eigengap", c.oja.eigengap);
  }
  if (root.contains("output")) {
    const json& s = root["output"];
    require_object(s, "output", {"dir", "format"});
    if (s.contains("dir")) c.output.dir = read_string(s, "output", "dir");
    if (s.contains("format")) c.output.format = parse_format(read_string(s, "output", "format"));
  }
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIoError, "cannot open config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  if (in.bad()) throw Error(Errc::kIoError, "cannot read config " + path.string());
  return parse_config(text.str());
}

std::string to_json_text(const ExperimentConfig& c) {
  const RpConfig& rp = c.hippocampus.rp;
  json root = {
      {"experiment", experiment_name(c.experiment)},
      {"seed", c.seed},
      {"reps", c.reps},
      {"pooling", pooling_name(c.pooling)},
      {"similarity", {{"kind", similarity_name(c.similarity.kind)}, {"gain", c.similarity.gain}}},
      {"cortex",
       {{"backend", backend_name(c.cortex.backend)},
        {"rank", c.cortex.rank},
        {"learner", c.cortex.learner == CortexConfig::Learner::kSvd ? "svd" : "oja"},
        {"oja_epochs", c.cortex.oja_epochs}}},
      {"hippocampus",
       {{"backend", backend_name(c.hippocampus.backend)},
        {"rp",
         {{"initial_columns", rp.initial_columns},
          {"shared", rp.shared},
          {"policy", policy_name(rp.policy.kind)},
          {"eps", rp.policy.eps},
          {"c", rp.policy.c}}},
        {"wta", wta_json(c.hippocampus.wta)}}},
      {"ventral",
       {{"n_train", c.ventral.n_train},
        {"n_test", c.ventral.n_test},
        {"calibration",
         c.ventral.calibration == VentralConfig::Calibration::kHeldout ? "heldout" : "train"},
        {"n_calibration", c.ventral.n_calibration},
        {"dim", c.ventral.dim},
        {"orbit_subset", c.ventral.orbit_subset},
        {"noise", c.ventral.noise},
        {"pairs", c.ventral.pairs}}},
      {"mtl",
       {{"dim_a", c.mtl.dim_a},
        {"dim_b", c.mtl.dim_b},
        {"study_items", c.mtl.study_items},
        {"probes", c.mtl.probes},
        {"fonts", c.mtl.fonts},
        {"font_strength", c.mtl.font_strength},
        {"noise", c.mtl.noise},
        {"n_dev_faces", c.mtl.n_dev_faces},
        {"n_dev_names", c.mtl.n_dev_names},
        {"study_sizes", c.mtl.study_sizes}}},
      {"equiv",
       {{"dim", c.equiv.dim},
        {"templates", c.equiv.templates},
        {"queries", c.equiv.queries},
        {"instances", c.equiv.instances},
        {"ranks", c.equiv.ranks},
        {"projections", c.equiv.projections},
        {"wta", wta_json(c.equiv.wta)},
        {"backends", backend_list(c.equiv.backends)}}},
      {"oja",
       {{"dim", c.oja.dim},
        {"samples", c.oja.samples},
        {"components", c.oja.components},
        {"epochs", c.oja.epochs},
        {"eigengap", c.oja.eigengap}}},
      {"output", {{"dir", c.output.dir}, {"format", format_name(c.output.format)}}},
  };
  return root.dump(2);
}

}  // namespace hwarch
