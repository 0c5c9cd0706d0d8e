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
#include "hwarch/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "hwarch/error.hpp"
#include "hwarch/oja.hpp"
#include "hwarch/rng.hpp"
#include "hwarch/svd.hpp"
#include "hwarch/wta.hpp"

namespace hwarch {

namespace {

using Params = std::vector<std::pair<std::string, std::string>>;

// Seed-derivation tags; changing them changes every result.
enum Tag : std::uint64_t {
  kTagRep = 1,
  kTagDataset = 2,
  kTagPairs = 3,
  kTagCortex = 4,
  kTagDevFaces = 5,
  kTagDevWords = 6,
  kTagHippocampus = 7,
  kTagInstance = 8,
};

[[noreturn]] void config_error(const std::string& field, const std::string& what) {
  throw Error(Errc::kConfigError, field + ": " + what);
}

class Recorder {
 public:
  explicit Recorder(const ExperimentConfig& c) : run_{c, {}} {}

  void add(std::string metric, double value, std::int64_t rep, std::uint64_t seed, Params params) {
    run_.records.push_back({std::string(experiment_name(run_.config.experiment)), std::move(metric),
                            value, rep, seed, std::move(params), 0.0});
  }

  /// Median and 25/75 percentiles of values (one per rep).
  void summarize(const std::string& metric, const std::vector<double>& values, const Params& params) {
    if (values.size() < 2) return;
    const std::uint64_t seed = run_.config.seed;
    add(metric + "_median", percentile_nearest_rank(values, 50), -1, seed, params);
    add(metric + "_p25", percentile_nearest_rank(values, 25), -1, seed, params);
    add(metric + "_p75", percentile_nearest_rank(values, 75), -1, seed, params);
  }

  RunResult take() { return std::move(run_); }

 private:
  RunResult run_;
};

std::string str(std::size_t v) { return std::to_string(v); }

Similarity layer_similarity(const ExperimentConfig& c) { return c.similarity; }

// Cached cortex-1 signatures of dataset frames, computed on first use.
class SignatureCache {
 public:
  SignatureCache(const HwArchitecture& arch, const std::vector<Identity>& ids)
      : arch_(arch), ids_(ids), frames_(ids.front().frames.size()), cache_(ids.size() * frames_) {}

  const Signature& get(std::size_t id, std::size_t frame) {
    std::optional<Signature>& slot = cache_[id * frames_ + frame];
    if (!slot) slot = arch_.feedforward(ids_[id].frames[frame]);
    return *slot;
  }

 private:
  const HwArchitecture& arch_;
  const std::vector<Identity>& ids_;
  std::size_t frames_;
  std::vector<std::optional<Signature>> cache_;
};

std::vector<FramePair> draw_pairs(std::size_t n_ids, std::size_t frames, std::size_t count,
                                  std::uint64_t seed) {
  Rng rng(seed);
  std::vector<FramePair> out;
  out.reserve(2 * count);
  for (std::size_t i = 0; i < count; ++i) {
    FramePair same;
    same.same = true;
    same.id_a = same.id_b = rng.below(n_ids);
    same.frame_a = rng.below(frames);
    same.frame_b = (same.frame_a + 1 + rng.below(frames - 1)) % frames;
    out.push_back(same);

    FramePair diff;
    diff.id_a = rng.below(n_ids);
    diff.id_b = (diff.id_a + 1 + rng.below(n_ids - 1)) % n_ids;
    diff.frame_a = rng.below(frames);
    diff.frame_b = rng.below(frames);
    out.push_back(diff);
  }
  return out;
}

std::vector<ScoredPair> score_pairs(const std::vector<FramePair>& pairs, auto&& score) {
  std::vector<ScoredPair> out;
  out.reserve(pairs.size());
  for (const FramePair& p : pairs) out.push_back({score(p), p.same});
  return out;
}

}  // namespace

std::uint64_t rep_seed(const ExperimentConfig& config, std::size_t rep) {
  return derive_seed(config.seed, {kTagRep, static_cast<std::uint64_t>(config.experiment), rep});
}

HwLayer build_cortex_layer(const ExperimentConfig& config, const std::vector<TemplateBook>& books,
                           std::uint64_t seed) {
  if (books.empty()) throw Error(Errc::kInvalidParams, "cortex needs at least one template book");
  const std::size_t dim = books.front().dim();
  if (config.cortex.backend == Backend::kExact) {
    ExactLayer layer(dim, layer_similarity(config), config.pooling);
    for (const TemplateBook& b : books) layer.add_module(b);
    return layer;
  }
  if (config.cortex.rank > dim) {
    config_error("cortex.rank", "exceeds the input dimension " + std::to_string(dim));
  }
  SvdLayer layer(dim, config.cortex.rank, config.pooling);
  for (std::size_t k = 0; k < books.size(); ++k) {
    const TemplateBook& b = books[k];
    if (config.cortex.learner == CortexConfig::Learner::kSvd) {
      layer.add_module(SvdModule::from_book(b, config.cortex.rank));
    } else {
      const Matrix basis = oja_train(b.templates(), config.cortex.rank, config.cortex.oja_epochs, {},
                                     derive_seed(seed, {k}));
      layer.add_module(SvdModule::from_basis(b, basis));
    }
  }
  return layer;
}

// ---------------------------------------------------------------- ventral

VentralRep prepare_ventral(const ExperimentConfig& config, std::size_t rep) {
  const VentralConfig& v = config.ventral;
  VentralRep out;
  out.seed = rep_seed(config, rep);
  IdentityParams ip;
  ip.n_train = v.n_train;
  out.calibrate_on_train = v.calibration == VentralConfig::Calibration::kTrain;
  ip.n_test = v.n_test + (out.calibrate_on_train ? 0 : v.n_calibration);
  ip.dim = v.dim;
  ip.orbit_subset = v.orbit_subset;
  ip.noise = v.noise;
  ip.seed = derive_seed(out.seed, {kTagDataset});
  out.data = generate_identity_dataset(ip);
  // Held-out identities beyond the first n_test form the calibration pool.
  const auto split = out.data.test.begin() + static_cast<std::ptrdiff_t>(v.n_test);
  out.calibration.assign(std::make_move_iterator(split), std::make_move_iterator(out.data.test.end()));
  out.data.test.erase(split, out.data.test.end());
  out.data.params.n_test = v.n_test;

  std::vector<TemplateBook> books;
  books.reserve(out.data.train.size());
  for (const Identity& id : out.data.train) {
    TemplateBook b(v.dim);
    for (const Vector& f : id.frames) b.insert(f);
    books.push_back(std::move(b));
  }
  out.cortex = HwArchitecture(v.dim);
  out.cortex.add_layer(build_cortex_layer(config, books, derive_seed(out.seed, {kTagCortex})));

  const std::size_t frames = out.data.train.front().frames.size();
  out.calibration_pairs = draw_pairs(out.calibration_identities().size(), frames, v.pairs,
                                     derive_seed(out.seed, {kTagPairs, 0}));
  out.test_pairs = draw_pairs(v.n_test, frames, v.pairs, derive_seed(out.seed, {kTagPairs, 1}));
  return out;
}

namespace {

Params ventral_params(const ExperimentConfig& config) {
  Params params = {{"backend", std::string(backend_name(config.cortex.backend))},
                   {"noise", format_double(config.ventral.noise)},
                   {"calibration", config.ventral.calibration == VentralConfig::Calibration::kHeldout
                                       ? "heldout"
                                       : "train"}};
  if (config.cortex.backend == Backend::kSvd) {
    params.emplace_back("rank", str(config.cortex.rank));
    params.emplace_back("learner", config.cortex.learner == CortexConfig::Learner::kSvd ? "svd" : "oja");
  }
  return params;
}

}  // namespace

VentralScore evaluate_ventral(const VentralRep& rep, const HwArchitecture& cortex) {
  SignatureCache calibration_cache(cortex, rep.calibration_identities());
  SignatureCache test_cache(cortex, rep.data.test);
  const auto score = [](SignatureCache& cache) {
    return [&cache](const FramePair& p) {
      return cosine(cache.get(p.id_a, p.frame_a), cache.get(p.id_b, p.frame_b));
    };
  };
  const auto calibration = score_pairs(rep.calibration_pairs, score(calibration_cache));
  const auto test = score_pairs(rep.test_pairs, score(test_cache));
  VentralScore out;
  out.threshold = calibrate_threshold(calibration);
  out.calibration_accuracy = balanced_accuracy(calibration, out.threshold);
  out.test_accuracy = balanced_accuracy(test, out.threshold);
  return out;
}

RunResult run_ventral_experiment(const ExperimentConfig& config) {
  validate(config);
  Recorder rec(config);
  std::vector<double> hw_acc, base_acc, gaps;
  const Params params = ventral_params(config);
  for (std::size_t r = 0; r < config.reps; ++r) {
    const VentralRep rep = prepare_ventral(config, r);
    const VentralScore hw_score = evaluate_ventral(rep, rep.cortex);
    const auto raw_score = [](const std::vector<Identity>& ids) {
      return [&ids](const FramePair& p) {
        return cosine(ids[p.id_a].frames[p.frame_a], ids[p.id_b].frames[p.frame_b]);
      };
    };
    const auto raw_calibration = score_pairs(rep.calibration_pairs, raw_score(rep.calibration_identities()));
    const auto raw_test = score_pairs(rep.test_pairs, raw_score(rep.data.test));
    const double raw_theta = calibrate_threshold(raw_calibration);
    const double hw = hw_score.test_accuracy;
    const double raw = balanced_accuracy(raw_test, raw_theta);
    const auto ri = static_cast<std::int64_t>(r);
    rec.add("hw_accuracy", hw, ri, rep.seed, params);
    rec.add("baseline_accuracy", raw, ri, rep.seed, params);
    rec.add("accuracy_gap", hw - raw, ri, rep.seed, params);
    rec.add("hw_threshold", hw_score.threshold, ri, rep.seed, params);
    rec.add("baseline_threshold", raw_theta, ri, rep.seed, params);
    rec.add("hw_calibration_accuracy", hw_score.calibration_accuracy, ri, rep.seed, params);
    rec.add("baseline_calibration_accuracy", balanced_accuracy(raw_calibration, raw_theta), ri, rep.seed, params);
    hw_acc.push_back(hw);
    base_acc.push_back(raw);
    gaps.push_back(hw - raw);
  }
  rec.summarize("hw_accuracy", hw_acc, params);
  rec.summarize("baseline_accuracy", base_acc, params);
  rec.summarize("accuracy_gap", gaps, params);
  return rec.take();
}

// -------------------------------------------------------------------- mtl

MtlRep prepare_mtl(const ExperimentConfig& config, std::size_t rep) {
  const MtlConfig& m = config.mtl;
  const std::uint64_t seed = rep_seed(config, rep);
  AssociationParams ap;
  ap.n_individuals = *std::max_element(m.study_sizes.begin(), m.study_sizes.end());
  ap.dim_a = m.dim_a;
  ap.dim_b = m.dim_b;
  ap.study_items = m.study_items;
  ap.probes = m.probes;
  ap.fonts = m.fonts;
  ap.font_strength = m.font_strength;
  ap.noise = m.noise;
  ap.seed = derive_seed(seed, {kTagDataset});

  const auto faces = face_development_books(m.n_dev_faces, m.dim_a, derive_seed(seed, {kTagDevFaces}));
  const auto words = word_development_books(m.n_dev_names, m.dim_b, m.fonts, m.font_strength,
                                            derive_seed(seed, {kTagDevWords}));
  return MtlRep{seed, generate_association_dataset(ap),
                build_cortex_layer(config, faces, derive_seed(seed, {kTagCortex, 1})),
                build_cortex_layer(config, words, derive_seed(seed, {kTagCortex, 2}))};
}

CortexHippocampusModel build_mtl_model(const ExperimentConfig& config, const MtlRep& rep,
                                       const HippocampusCell& cell) {
  const std::size_t sig_dim = rep.cortex1.size() + rep.cortex2.size();
  const std::uint64_t seed = derive_seed(rep.seed, {kTagHippocampus});
  switch (cell.backend) {
    case Backend::kExact:
      return {rep.cortex1, rep.cortex2, ExactLayer(sig_dim, config.similarity, config.pooling)};
    case Backend::kRp: {
      const RpConfig& rp = config.hippocampus.rp;
      RpLayer::Options o;
      o.initial_columns = std::min(rp.initial_columns, sig_dim);
      o.seed = seed;
      o.shared = rp.shared;
      o.policy = rp.policy;
      o.pooling = config.pooling;
      return {rep.cortex1, rep.cortex2, RpLayer(sig_dim, o)};
    }
    case Backend::kWta:
      return {rep.cortex1, rep.cortex2,
              LshLayer(WtaHashFamily(sig_dim, cell.wta.hashes, cell.wta.bands, cell.wta.window, seed),
                       config.pooling)};
    case Backend::kSvd:
      break;
  }
  config_error("hippocampus.backend", "must be exact, rp or wta");
}

void study_individuals(CortexHippocampusModel& model, const AssociationDataset& data,
                       std::size_t study_size) {
  std::vector<Episode> episodes;
  for (std::size_t i = 0; i < study_size; ++i) episodes.push_back({data.individuals[i].study_items, i});
  model.study(episodes);
}

MtlRecall evaluate_recall(const CortexHippocampusModel& model, const AssociationDataset& data,
                          std::size_t study_size) {
  auto rate = [&](auto member) {
    std::size_t hits = 0, total = 0;
    for (std::size_t i = 0; i < study_size; ++i) {
      for (const Vector& probe : data.individuals[i].*member) {
        hits += model.recall(probe) == i;
        ++total;
      }
    }
    return static_cast<double>(hits) / static_cast<double>(total);
  };
  return {rate(&Individual::study_items), rate(&Individual::heldout_probes),
          rate(&Individual::face_only_probes), rate(&Individual::name_only_probes)};
}

namespace {

struct EncodedIndividual {
  std::vector<Signature> study, heldout, face_only, name_only;
};

Params cell_params(const HippocampusCell& cell) {
  Params p = {{"backend", std::string(backend_name(cell.backend))}};
  if (cell.backend == Backend::kWta) {
    p.emplace_back("window", str(cell.wta.window));
    p.emplace_back("bands", str(cell.wta.bands));
    p.emplace_back("hashes", str(cell.wta.hashes));
  }
  return p;
}

}  // namespace

std::vector<HippocampusCell> mtl_cells(const ExperimentConfig& config) {
  std::vector<HippocampusCell> cells;
  if (config.hippocampus.backend == Backend::kWta) {
    for (const WtaParams& w : config.hippocampus.wta) cells.push_back({Backend::kWta, w});
  } else {
    cells.push_back({config.hippocampus.backend, {}});
  }
  // The exact hippocampus is the reference every approximate backend is
  // compared against.
  if (config.hippocampus.backend != Backend::kExact) cells.push_back({Backend::kExact, {}});
  return cells;
}

RunResult run_mtl_experiment(const ExperimentConfig& config) {
  validate(config);
  const MtlConfig& m = config.mtl;
  if (config.cortex.backend == Backend::kSvd &&
      config.cortex.rank > std::min(m.dim_a, m.dim_b)) {
    config_error("cortex.rank", "exceeds min(mtl.dim_a, mtl.dim_b)");
  }

  const std::vector<HippocampusCell> cells = mtl_cells(config);

  static constexpr const char* kMetrics[] = {"recall_studied", "recall_heldout", "recall_face_only",
                                             "recall_name_only"};
  // values[cell][size][metric] -> one entry per rep
  std::vector<std::vector<std::array<std::vector<double>, 4>>> values(
      cells.size(), std::vector<std::array<std::vector<double>, 4>>(m.study_sizes.size()));

  Recorder rec(config);
  for (std::size_t r = 0; r < config.reps; ++r) {
    const MtlRep rep = prepare_mtl(config, r);
    const CortexHippocampusModel encoder = build_mtl_model(config, rep, {Backend::kExact, {}});
    std::vector<EncodedIndividual> enc;
    for (const Individual& ind : rep.data.individuals) {
      EncodedIndividual e;
      for (const Vector& v : ind.study_items) e.study.push_back(encoder.encode(v));
      for (const Vector& v : ind.heldout_probes) e.heldout.push_back(encoder.encode(v));
      for (const Vector& v : ind.face_only_probes) e.face_only.push_back(encoder.encode(v));
      for (const Vector& v : ind.name_only_probes) e.name_only.push_back(encoder.encode(v));
      enc.push_back(std::move(e));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      for (std::size_t si = 0; si < m.study_sizes.size(); ++si) {
        const std::size_t size = m.study_sizes[si];
        CortexHippocampusModel model = build_mtl_model(config, rep, cells[c]);
        std::vector<Episode> episodes;
        for (std::size_t i = 0; i < size; ++i) episodes.push_back({enc[i].study, i});
        model.study_encoded(episodes);

        auto rate = [&](std::vector<Signature> EncodedIndividual::*member) {
          std::size_t hits = 0, total = 0;
          for (std::size_t i = 0; i < size; ++i) {
            for (const Signature& code : enc[i].*member) {
              hits += model.recall_encoded(code) == i;
              ++total;
            }
          }
          return static_cast<double>(hits) / static_cast<double>(total);
        };
        const double rates[4] = {rate(&EncodedIndividual::study), rate(&EncodedIndividual::heldout),
                                 rate(&EncodedIndividual::face_only), rate(&EncodedIndividual::name_only)};
        Params params = cell_params(cells[c]);
        params.emplace_back("study_size", str(size));
        for (int k = 0; k < 4; ++k) {
          rec.add(kMetrics[k], rates[k], static_cast<std::int64_t>(r), rep.seed, params);
          values[c][si][static_cast<std::size_t>(k)].push_back(rates[k]);
        }
      }
    }
  }

  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t si = 0; si < m.study_sizes.size(); ++si) {
      Params params = cell_params(cells[c]);
      params.emplace_back("study_size", str(m.study_sizes[si]));
      for (std::size_t k = 0; k < 4; ++k) rec.summarize(kMetrics[k], values[c][si][k], params);
    }
    if (m.study_sizes.size() < 2) continue;
    for (std::size_t k = 0; k < 4; ++k) {
      std::vector<double> xs, ys, medians;
      for (std::size_t si = 0; si < m.study_sizes.size(); ++si) {
        for (double y : values[c][si][k]) {
          xs.push_back(static_cast<double>(m.study_sizes[si]));
          ys.push_back(y);
        }
        medians.push_back(percentile_nearest_rank(values[c][si][k], 50));
      }
      const KendallTrend t = kendall_trend(xs, ys);
      bool nonincreasing = true;
      for (std::size_t i = 1; i < medians.size(); ++i) {
        const bool larger = m.study_sizes[i] > m.study_sizes[i - 1];
        nonincreasing &= larger ? medians[i] <= medians[i - 1] : medians[i] >= medians[i - 1];
      }
      const Params params = cell_params(cells[c]);
      const std::string base = kMetrics[k];
      rec.add(base + "_kendall_tau", t.tau_b, -1, config.seed, params);
      rec.add(base + "_kendall_p_decreasing", t.p_decreasing, -1, config.seed, params);
      rec.add(base + "_median_nonincreasing", nonincreasing ? 1.0 : 0.0, -1, config.seed, params);
    }
  }
  return rec.take();
}

// ------------------------------------------------------------ equivalence

RunResult run_backend_equivalence(const ExperimentConfig& config) {
  validate(config);
  const EquivConfig& e = config.equiv;
  Recorder rec(config);
  for (std::size_t r = 0; r < config.reps; ++r) {
    const std::uint64_t seed = rep_seed(config, r);
    const auto ri = static_cast<std::int64_t>(r);
    std::vector<TemplateBook> books;
    std::vector<std::vector<Vector>> queries;
    for (std::size_t i = 0; i < e.instances; ++i) {
      TemplateBook b(e.dim);
      std::vector<Vector> q;
      for (std::size_t k = 0; k < e.templates; ++k) {
        b.insert(random_unit(e.dim, derive_seed(seed, {kTagInstance, i, 0, k})));
      }
      for (std::size_t k = 0; k < e.queries; ++k) {
        q.push_back(random_unit(e.dim, derive_seed(seed, {kTagInstance, i, 1, k})));
      }
      books.push_back(std::move(b));
      queries.push_back(std::move(q));
    }
    // exact[i][q][p]
    std::vector<std::vector<std::array<double, 2>>> exact(e.instances);
    double oracle_dev = 0.0;
    for (std::size_t i = 0; i < e.instances; ++i) {
      for (const Vector& x : queries[i]) {
        std::array<double, 2> v{};
        for (int p = 0; p < 2; ++p) {
          const Pooling pool = p == 0 ? Pooling::kMax : Pooling::kSum;
          v[static_cast<std::size_t>(p)] = exact_query(books[i], x, {}, pool);
          oracle_dev = std::max(oracle_dev, std::abs(v[static_cast<std::size_t>(p)] -
                                                     oracle_exact_query(books[i], x, {}, pool)));
        }
        exact[i].push_back(v);
      }
    }
    auto wanted = [&](Backend b) {
      return std::find(e.backends.begin(), e.backends.end(), b) != e.backends.end();
    };

    if (wanted(Backend::kExact)) {
      rec.add("max_abs_dev", oracle_dev, ri, seed, {{"backend", "exact"}, {"reference", "oracle"}});
    }
    if (wanted(Backend::kSvd)) {
      for (std::size_t rank : e.ranks) {
        double dev = 0.0;
        std::size_t effective = 0;
        for (std::size_t i = 0; i < e.instances; ++i) {
          const SvdModule mod = SvdModule::from_book(books[i], rank);
          effective = mod.effective_rank();
          for (std::size_t q = 0; q < queries[i].size(); ++q) {
            dev = std::max(dev, std::abs(mod.query(queries[i][q], Pooling::kMax) - exact[i][q][0]));
            dev = std::max(dev, std::abs(mod.query(queries[i][q], Pooling::kSum) - exact[i][q][1]));
          }
        }
        rec.add("max_abs_dev", dev, ri, seed,
                {{"backend", "svd"}, {"rank", str(rank)}, {"effective_rank", str(effective)},
                 {"full_rank", effective == std::min(e.templates, e.dim) ? "1" : "0"}});
      }
    }
    if (wanted(Backend::kRp)) {
      for (std::size_t s : e.projections) {
        double dev = 0.0;
        for (std::size_t i = 0; i < e.instances; ++i) {
          RpProjection proj(e.dim, s, derive_seed(seed, {kTagInstance, i, 2}));
          std::vector<RpModule> mods{RpModule(e.dim)};
          for (const Vector& t : books[i].templates()) {
            rp_insert(mods, 0, proj, t, {AugmentPolicy::Kind::kNever});
          }
          for (std::size_t q = 0; q < queries[i].size(); ++q) {
            dev = std::max(dev, std::abs(mods[0].query(queries[i][q], proj, Pooling::kMax) - exact[i][q][0]));
            dev = std::max(dev, std::abs(mods[0].query(queries[i][q], proj, Pooling::kSum) - exact[i][q][1]));
          }
        }
        rec.add("max_abs_dev", dev, ri, seed,
                {{"backend", "rp"}, {"projection_dim", str(s)}, {"full_rank", s == e.dim ? "1" : "0"}});
      }
    }
    if (wanted(Backend::kWta)) {
      for (const WtaParams& w : e.wta) {
        double dev = 0.0, excess = -std::numeric_limits<double>::infinity();
        std::size_t agree = 0, total = 0;
        for (std::size_t i = 0; i < e.instances; ++i) {
          const WtaHashFamily family(e.dim, w.hashes, w.bands, w.window,
                                     derive_seed(seed, {kTagInstance, i, 3}));
          LshModule mod(e.dim);
          for (const Vector& t : books[i].templates()) mod.insert(t, family);
          for (std::size_t q = 0; q < queries[i].size(); ++q) {
            const double approx = mod.query(queries[i][q], family, Pooling::kMax);
            const double diff = approx - exact[i][q][0];
            dev = std::max(dev, std::abs(diff));
            excess = std::max(excess, diff);
            agree += std::abs(diff) <= 1e-12;
            ++total;
          }
        }
        const Params params = {{"backend", "wta"},
                               {"window", str(w.window)},
                               {"bands", str(w.bands)},
                               {"hashes", str(w.hashes)}};
        rec.add("max_abs_dev", dev, ri, seed, params);
        rec.add("max_excess", excess, ri, seed, params);
        rec.add("agreement_rate", static_cast<double>(agree) / static_cast<double>(total), ri, seed, params);
      }
    }
  }
  return rec.take();
}

// --------------------------------------------------------------- oja demo

namespace {

/// Principal angles between the spans of orthonormal a and b, ascending.
std::vector<double> principal_angles(const Matrix& a, const Matrix& b) {
  const Eigen::JacobiSVD<Matrix> svd(a.transpose() * b);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    out.push_back(std::acos(std::clamp(svd.singularValues()[i], -1.0, 1.0)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

RunResult run_oja_demo(const ExperimentConfig& config) {
  validate(config);
  const OjaDemoConfig& o = config.oja;
  Recorder rec(config);
  std::vector<double> spectrum(o.dim);
  for (std::size_t j = 0; j < o.dim; ++j) {
    spectrum[j] = std::pow(o.eigengap, -static_cast<double>(std::min(j, o.components)));
  }
  const Params params = {{"dim", str(o.dim)},
                         {"components", str(o.components)},
                         {"epochs", str(o.epochs)},
                         {"samples", str(o.samples)},
                         {"eigengap", format_double(o.eigengap)}};
  for (std::size_t r = 0; r < config.reps; ++r) {
    const std::uint64_t seed = rep_seed(config, r);
    const auto ri = static_cast<std::int64_t>(r);
    const SpectralStream stream = spectral_stream(o.samples, spectrum, derive_seed(seed, {kTagDataset}));

    Matrix moment = Matrix::Zero(static_cast<Eigen::Index>(o.dim), static_cast<Eigen::Index>(o.dim));
    for (const Vector& x : stream.samples) moment.noalias() += x * x.transpose();
    moment /= static_cast<double>(o.samples);
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(moment);
    // Eigen sorts ascending; the leading directions are the last columns.
    const auto rc = static_cast<Eigen::Index>(o.components);
    const Matrix batch = eig.eigenvectors().rightCols(rc).rowwise().reverse();
    const Matrix truth = stream.axes.leftCols(rc);

    const Matrix learned = oja_train(stream.samples, o.components, o.epochs, {},
                                     derive_seed(seed, {kTagCortex}));
    const std::vector<double> vs_batch = principal_angles(learned, batch);
    rec.add("max_principal_angle", vs_batch.back(), ri, seed, params);
    rec.add("max_principal_angle_truth", principal_angles(learned, truth).back(), ri, seed, params);
    rec.add("batch_max_principal_angle_truth", principal_angles(batch, truth).back(), ri, seed, params);
    rec.add("top_abs_cosine", std::abs(learned.col(0).dot(batch.col(0))), ri, seed, params);
    for (std::size_t j = 0; j < vs_batch.size(); ++j) {
      Params p = params;
      p.emplace_back("angle_index", str(j));
      rec.add("principal_angle", vs_batch[j], ri, seed, p);
    }
  }
  return rec.take();
}

// ---------------------------------------------------------------- general

RunResult run_experiment(const ExperimentConfig& config) {
  switch (config.experiment) {
    case ExperimentKind::kVentral: return run_ventral_experiment(config);
    case ExperimentKind::kMtl: return run_mtl_experiment(config);
    case ExperimentKind::kEquiv: return run_backend_equivalence(config);
    case ExperimentKind::kOjaDemo: return run_oja_demo(config);
  }
  config_error("experiment", "unknown experiment");
}

double reproduce_record(const ExperimentConfig& config, const ResultRecord& r) {
  ExperimentConfig c = config;
  // Repetitions are independent, so a per-rep record needs only reps 0..rep.
  if (r.rep >= 0) c.reps = std::min<std::size_t>(c.reps, static_cast<std::size_t>(r.rep) + 1);
  const RunResult run = run_experiment(c);
  for (const ResultRecord& other : run.records) {
    if (other.metric == r.metric && other.rep == r.rep && other.params == r.params) return other.value;
  }
  throw Error(Errc::kInvalidParams, "experiment did not produce metric " + r.metric);
}

std::vector<ResultRecord> replay_ventral(const ExperimentConfig& config, std::size_t rep,
                                         const HwArchitecture& cortex) {
  validate(config);
  if (config.experiment != ExperimentKind::kVentral) {
    config_error("experiment", "replaying a cortex needs a ventral config");
  }
  const VentralRep data = prepare_ventral(config, rep);
  if (cortex.input_dim() != config.ventral.dim) {
    throw Error(Errc::kDimensionMismatch, "cortex input dimension " + str(cortex.input_dim()) +
                                              " does not match ventral.dim " + str(config.ventral.dim));
  }
  const VentralScore score = evaluate_ventral(data, cortex);
  Recorder rec(config);
  const Params params = ventral_params(config);
  const auto ri = static_cast<std::int64_t>(rep);
  rec.add("hw_accuracy", score.test_accuracy, ri, data.seed, params);
  rec.add("hw_threshold", score.threshold, ri, data.seed, params);
  rec.add("hw_calibration_accuracy", score.calibration_accuracy, ri, data.seed, params);
  return rec.take().records;
}

std::vector<ResultRecord> replay_mtl(const ExperimentConfig& config, std::size_t rep,
                                     const CortexHippocampusModel& model) {
  validate(config);
  if (config.experiment != ExperimentKind::kMtl) {
    config_error("experiment", "replaying a model needs an mtl config");
  }
  const MtlRep data = prepare_mtl(config, rep);
  if (model.input_dim() != config.mtl.dim_a + config.mtl.dim_b) {
    throw Error(Errc::kDimensionMismatch, "model input dimension does not match mtl.dim_a + mtl.dim_b");
  }
  const HwLayer& hippocampus = model.hippocampus();
  HippocampusCell cell{hippocampus.backend(), {}};
  if (const auto* lsh = std::get_if<LshLayer>(&hippocampus.impl())) {
    cell.wta = {lsh->family().window(), lsh->family().bands(), lsh->family().num_hashes()};
  }
  const std::size_t size = hippocampus.size();
  if (size == 0 || size > data.data.individuals.size()) {
    throw Error(Errc::kInvalidParams, "model studied " + str(size) + " individuals; the config provides " +
                                          str(data.data.individuals.size()));
  }
  const MtlRecall recall = evaluate_recall(model, data.data, size);
  Params params = cell_params(cell);
  params.emplace_back("study_size", str(size));
  Recorder rec(config);
  const auto ri = static_cast<std::int64_t>(rep);
  rec.add("recall_studied", recall.studied, ri, data.seed, params);
  rec.add("recall_heldout", recall.heldout, ri, data.seed, params);
  rec.add("recall_face_only", recall.face_only, ri, data.seed, params);
  rec.add("recall_name_only", recall.name_only, ri, data.seed, params);
  return rec.take().records;
}

}  // namespace hwarch
