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
#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hwarch/architecture.hpp"
#include "hwarch/config.hpp"
#include "hwarch/core.hpp"
#include "hwarch/error.hpp"
#include "hwarch/experiments.hpp"
#include "hwarch/layer.hpp"
#include "hwarch/oja.hpp"
#include "hwarch/results.hpp"
#include "hwarch/rng.hpp"
#include "hwarch/rp.hpp"
#include "hwarch/snapshot.hpp"
#include "hwarch/svd.hpp"
#include "hwarch/synth.hpp"
#include "hwarch/wta.hpp"
#include "oracles.hpp"

namespace {

using namespace hwarch;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && failures_++ < 5) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  void note(const std::string& what) { info_ += (info_.empty() ? "" : ", ") + what; }
  Outcome outcome() const {
    if (failures_ == 0) return {true, info_};
    return {false, std::to_string(failures_) + " violation(s): " + notes_ + (info_.empty() ? "" : " | " + info_)};
  }

 private:
  int failures_ = 0;
  std::string notes_, info_;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Vector gaussian(std::size_t d, std::uint64_t seed) {
  Rng rng(seed, 31);
  Vector v(static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.normal();
  return v;
}

Vector rotate(const Vector& x, std::size_t j) {
  const std::size_t d = static_cast<std::size_t>(x.size());
  Vector y(x.size());
  for (std::size_t i = 0; i < d; ++i) y[static_cast<Eigen::Index>((i + j) % d)] = x[static_cast<Eigen::Index>(i)];
  return y;
}

TemplateBook shift_orbit(const Vector& base) {
  TemplateBook book(static_cast<std::size_t>(base.size()));
  for (std::size_t j = 0; j < static_cast<std::size_t>(base.size()); ++j) book.insert(rotate(base, j));
  return book;
}

Outcome oracle_equivalence() {
  Check c;
  double worst = 0.0;
  std::size_t instances = 0;
  for (std::uint64_t s = 0; s < 1200; ++s) {
    const std::size_t d = 1 + s % 64;
    const std::size_t n = 1 + (s * 13) % 50;
    TemplateBook book(d);
    for (std::size_t k = 0; k < n; ++k) book.insert(gaussian(d, derive_seed(s, {k})));
    const Vector x = gaussian(d, derive_seed(s, {1000}));
    const Similarity f = s % 4 == 3 ? Similarity::sigmoid_dot(1.0 + static_cast<double>(s % 5)) : Similarity::normalized_dot();
    for (Pooling p : {Pooling::kMax, Pooling::kSum}) {
      const double dev = std::abs(oracle_exact_query(book, x, f, p) - exact_query(book, x, f, p));
      worst = std::max(worst, dev);
      c.require(dev <= 1e-12, "instance " + std::to_string(s) + " deviates by " + num(dev));
    }
    ++instances;
  }
  c.note(std::to_string(instances) + " instances, max deviation " + num(worst));
  return c.outcome();
}

Outcome orbit_invariance() {
  Check c;
  double worst = 0.0;
  std::size_t bases = 0;
  for (std::uint64_t layer_seed = 0; layer_seed < 10; ++layer_seed) {
    const std::size_t d = 8 + 4 * layer_seed;
    for (Pooling p : {Pooling::kMax, Pooling::kSum}) {
      HwLayer layer = ExactLayer(d, Similarity::normalized_dot(), p);
      for (std::size_t k = 0; k < 10; ++k) {
        const std::size_t m = layer.add_module();
        const TemplateBook orbit = shift_orbit(gaussian(d, derive_seed(layer_seed, {k})));
        for (const Vector& t : orbit.templates()) layer.insert(m, t);
      }
      for (std::uint64_t q = 0; q < 5; ++q) {
        const Vector x = gaussian(d, derive_seed(layer_seed, {500 + q}));
        const Signature base = layer.signature(x);
        for (std::size_t j = 0; j < d; ++j) {
          const double dev = (layer.signature(rotate(x, j)) - base).cwiseAbs().maxCoeff();
          worst = std::max(worst, dev);
          c.require(dev <= 1e-12, "d=" + std::to_string(d) + " shift " + std::to_string(j) + " deviates by " + num(dev));
        }
      }
    }
    bases += 10;
  }
  c.note(std::to_string(bases) + " bases, Max and Sum, max deviation " + num(worst));
  return c.outcome();
}

Outcome svd_backend() {
  Check c;
  double full_dev = 0.0, ey_dev = 0.0;
  for (std::uint64_t s = 0; s < 40; ++s) {
    const std::size_t n = 2 + (s * 3) % 29, d = 2 + (s * 7) % 31;
    TemplateBook book(d);
    for (std::size_t k = 0; k < n; ++k) book.insert(gaussian(d, derive_seed(100 + s, {k})));
    const Matrix t = book.matrix();
    const oracle::Svd ref = oracle::jacobi_svd(oracle::to_dense(t));
    const std::size_t full = std::min(n, d);
    double previous = INFINITY;
    for (std::size_t r = 1; r <= full; ++r) {
      const SvdModule m = SvdModule::from_book(book, r);
      const Matrix v = m.basis();
      const double err = (t - t * v * v.transpose()).squaredNorm();
      double tail = 0.0;
      for (std::size_t j = r; j < ref.singular.size(); ++j) tail += ref.singular[j] * ref.singular[j];
      ey_dev = std::max(ey_dev, std::abs(err - tail));
      c.require(std::abs(err - tail) <= 1e-8, "Eckart-Young n=" + std::to_string(n) + " d=" + std::to_string(d) + " r=" + std::to_string(r));
      c.require(std::abs(m.reconstruction_error() - tail) <= 1e-8, "reported error r=" + std::to_string(r));
      c.require(err <= previous, "error increased at r=" + std::to_string(r));
      previous = err;
      if (r == full) {
        for (std::uint64_t q = 0; q < 10; ++q) {
          const Vector x = gaussian(d, derive_seed(100 + s, {900 + q}));
          for (Pooling p : {Pooling::kMax, Pooling::kSum}) {
            const double dev = std::abs(m.query(x, p) - oracle_exact_query(book, x, {}, p));
            full_dev = std::max(full_dev, dev);
            c.require(dev <= 1e-9, "full-rank query deviates by " + num(dev));
          }
        }
      }
    }
  }
  c.note("full-rank deviation " + num(full_dev) + ", Eckart-Young deviation " + num(ey_dev));
  return c.outcome();
}

Outcome oja_rule() {
  Check c;
  {
    std::vector<double> spectrum(16, 1.0);
    spectrum[0] = 3.0;
    const std::vector<Vector> xs = spectral_stream(1000, spectrum, 41).samples;
    const oracle::Eigen_ ref = oracle::jacobi_eigen(oracle::second_moment(xs));
    c.require(ref.values[0] >= 2.0 * ref.values[1], "sample eigengap below 2");
    const Matrix w = oja_train(xs, 1, 50, {}, 42);
    const double cosine = std::abs(w.col(0).dot(oracle::leading_columns(ref.vectors, 1).col(0))) / w.col(0).norm();
    c.require(cosine >= 0.99, "top direction |cos| " + num(cosine));
    c.note("|cos| " + num(cosine) + " (sample eigengap " + num(ref.values[0] / ref.values[1]) + ")");
  }
  {
    std::vector<double> spectrum(16, 1.0);
    spectrum[0] = 8.0;
    spectrum[1] = 4.0;
    spectrum[2] = 2.0;
    const SpectralStream stream = spectral_stream(1000, spectrum, 43);
    const oracle::Eigen_ ref = oracle::jacobi_eigen(oracle::second_moment(stream.samples));
    const Matrix basis = oja_train(stream.samples, 3, 50, {}, 44);
    const Matrix batch = oracle::leading_columns(ref.vectors, 3);
    const double angle = oracle::max_principal_angle(basis, batch);
    c.require(angle <= 0.1, "r=3 principal angle " + num(angle));
    c.note("r=3 d=16 max principal angle " + num(angle) + " vs sample PCA (population subspace: oja " +
           num(oracle::max_principal_angle(basis, stream.axes.leftCols(3))) + ", batch " +
           num(oracle::max_principal_angle(batch, stream.axes.leftCols(3))) + ")");
  }
  return c.outcome();
}

Outcome rp_backend() {
  Check c;
  double square_dev = 0.0;
  for (std::uint64_t s = 0; s < 30; ++s) {
    const std::size_t d = 3 + s % 30;
    RpProjection proj(d, d, 700 + s);
    std::vector<RpModule> modules{RpModule(d)};
    TemplateBook book(d);
    for (std::size_t k = 0; k < 1 + s % 9; ++k) {
      const Vector t = gaussian(d, derive_seed(700 + s, {k}));
      rp_insert(modules, 0, proj, t, {AugmentPolicy::Kind::kNever});
      book.insert(t);
    }
    for (std::uint64_t q = 0; q < 10; ++q) {
      const Vector x = gaussian(d, derive_seed(700 + s, {100 + q}));
      for (Pooling p : {Pooling::kMax, Pooling::kSum}) {
        const double dev = std::abs(modules[0].query(x, proj, p) - oracle_exact_query(book, x, {}, p));
        square_dev = std::max(square_dev, dev);
        c.require(dev <= 1e-10, "s=d deviation " + num(dev));
      }
    }
  }
  const std::size_t d = 512;
  const RpProjection proj(d, 128, 2026);
  const Matrix& r = proj.matrix();
  double total = 0.0;
  for (std::size_t i = 0; i < 1000; ++i) {
    const Vector u = random_unit(d, derive_seed(77, {i, 0}));
    const Vector v = random_unit(d, derive_seed(77, {i, 1}));
    total += std::abs(u.dot(v) - (r.transpose() * u).dot(r.transpose() * v));
  }
  const double distortion = total / 1000.0;
  c.require(distortion <= 0.1, "JL mean distortion " + num(distortion));

  std::size_t cases = 0;
  for (const double eps : {0.1, 0.25, 0.5, 0.9}) {
    for (const std::size_t s : {1, 16, 64, 128, 300}) {
      const double root = std::exp(static_cast<double>(s) * eps * eps / 8.0);
      if (root > 5e4) continue;
      for (std::size_t n = 0; n <= 50000; ++n) {
        const bool expected = static_cast<double>(std::max<std::size_t>(n, 2)) > root;
        if (jl_bound_check(n, s, eps) != expected) {
          c.require(false, "JL crossover s=" + std::to_string(s) + " eps=" + num(eps) + " n=" + std::to_string(n));
          break;
        }
      }
      ++cases;
    }
  }
  c.note("s=d deviation " + num(square_dev) + ", JL mean distortion " + num(distortion) + ", " +
         std::to_string(cases) + " crossover sweeps");
  return c.outcome();
}

Outcome wta_lsh() {
  Check c;
  std::size_t one_sided = 0;
  struct Params {
    std::size_t l, w, k;
  };
  for (const Params p : {Params{32, 1, 2}, Params{4, 2, 4}, Params{8, 3, 4}, Params{2, 1, 32}, Params{16, 2, 3}}) {
    const std::size_t d = 32;
    const WtaHashFamily f(d, p.l, p.w, p.k, 90 + p.l);
    std::size_t agree = 0, total = 0;
    for (std::uint64_t inst = 0; inst < 40; ++inst) {
      LshModule m(d);
      TemplateBook book(d);
      for (std::uint64_t k = 0; k < 12; ++k) {
        const Vector t = gaussian(d, derive_seed(3000 + inst, {k}));
        m.insert(t, f);
        book.insert(t);
      }
      for (std::uint64_t q = 0; q < 25; ++q) {
        const Vector x = gaussian(d, derive_seed(3000 + inst, {500 + q}));
        const double approx = m.query(x, f, Pooling::kMax);
        const double exact = oracle_exact_query(book, x, {}, Pooling::kMax);
        c.require(approx <= exact + 1e-12, "one-sided violation " + num(approx - exact));
        agree += std::abs(approx - exact) <= 1e-12;
        ++total;
        ++one_sided;
      }
    }
    if (p.l == 32 && p.w == 1 && p.k == 2) {
      const double rate = static_cast<double>(agree) / static_cast<double>(total);
      c.require(rate >= 0.95, "L=32 W=1 K=2 agreement " + num(rate));
      c.note("L=32 W=1 K=2 agreement rate " + num(rate) + " over " + std::to_string(total) + " queries");
    }
  }
  c.note(std::to_string(one_sided) + " one-sided checks");

  const std::size_t d = 24;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Vector x = gaussian(d, derive_seed(s, {77}));
    std::vector<Vector> ts;
    for (std::uint64_t k = 0; k < 30; ++k) ts.push_back(gaussian(d, derive_seed(s, {k})));
    auto candidates = [&](std::size_t l, std::size_t w) {
      const WtaHashFamily f(d, l, w, 4, 500 + s);
      LshModule m(d);
      for (const Vector& t : ts) m.insert(t, f);
      return m.candidates(x, f);
    };
    for (std::size_t l = 1; l < 8; ++l) {
      const auto a = candidates(l, 2), b = candidates(l + 1, 2);
      c.require(std::includes(b.begin(), b.end(), a.begin(), a.end()), "L superset fails at L=" + std::to_string(l));
    }
    for (std::size_t w = 1; w < 4; ++w) {
      const auto a = candidates(3, w), b = candidates(3, w + 1);
      c.require(std::includes(a.begin(), a.end(), b.begin(), b.end()), "W subset fails at W=" + std::to_string(w));
    }
  }

  const WtaHashFamily f(40, 6, 3, 5, 123);
  std::size_t violations = 0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const Vector x = gaussian(40, 9000 + s);
    Rng rng(s, 3);
    const double a = 0.1 + 5.0 * rng.uniform();
    const double b = 4.0 * rng.normal();
    Vector y(40);
    switch (s % 4) {
      case 0: y = (a * x.array()).exp(); break;
      case 1: y = a * x.array() + b; break;
      case 2: y = x.array().cube() + a * x.array() + b; break;
      default: y = (a * x.array()).tanh() + 1e-3 * x.array(); break;
    }
    violations += f.hash_all(x) != f.hash_all(y);
  }
  c.require(violations == 0, std::to_string(violations) + " monotone-transform violations");
  c.note("monotone-transform violations " + std::to_string(violations) + "/1000");
  return c.outcome();
}

std::vector<double> per_rep(const RunResult& run, const std::string& metric) {
  std::vector<double> out;
  for (const ResultRecord& r : run.records) {
    if (r.metric == metric && r.rep >= 0) out.push_back(r.value);
  }
  return out;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Outcome ventral() {
  Check c;
  ExperimentConfig clean = default_config(ExperimentKind::kVentral);
  clean.ventral.noise = 0.0;
  clean.cortex.backend = Backend::kExact;
  clean.reps = 3;
  for (double acc : per_rep(run_experiment(clean), "hw_accuracy")) {
    c.require(acc == 1.0, "noiseless exact accuracy " + num(acc));
  }
  const RunResult single = run_experiment(default_config(ExperimentKind::kVentral));
  const double gap = per_rep(single, "accuracy_gap").at(0);
  c.require(gap >= 0.10, "default gap " + num(gap));
  ExperimentConfig many = default_config(ExperimentKind::kVentral);
  many.reps = 10;
  const auto gaps = per_rep(run_experiment(many), "accuracy_gap");
  const double med = median(gaps);
  c.require(med >= 0.10, "median gap over 10 reps " + num(med));
  c.note("noiseless exact accuracy 1, default gap " + num(gap) + ", median gap over 10 reps " + num(med) +
         " (min " + num(*std::min_element(gaps.begin(), gaps.end())) + ")");
  return c.outcome();
}

std::string cell_of(const ResultRecord& r) {
  std::string key;
  for (const auto& [k, v] : r.params) {
    if (k != "study_size") key += k + "=" + v + " ";
  }
  return key;
}

std::string param(const ResultRecord& r, const std::string& name) {
  for (const auto& [k, v] : r.params) {
    if (k == name) return v;
  }
  return {};
}

Outcome mtl() {
  Check c;
  ExperimentConfig clean = default_config(ExperimentKind::kMtl);
  clean.mtl.noise = 0.0;
  clean.hippocampus.backend = Backend::kExact;
  clean.reps = 3;
  std::size_t clean_rows = 0;
  for (const ResultRecord& r : run_experiment(clean).records) {
    if (r.metric == "recall_heldout" && r.rep >= 0) {
      c.require(r.value == 1.0, "noiseless exact held-out recall " + num(r.value));
      ++clean_rows;
    }
  }
  c.require(clean_rows > 0, "no noiseless recall rows");

  const ExperimentConfig config = default_config(ExperimentKind::kMtl);
  c.require(config.reps == 20, "default reps " + std::to_string(config.reps));
  const RunResult run = run_experiment(config);
  std::map<std::string, std::map<std::size_t, std::vector<double>>> series;
  std::map<std::string, std::map<std::size_t, std::pair<bool, bool>>> bands;
  for (const ResultRecord& r : run.records) {
    if (param(r, "backend") != "wta") continue;
    const std::string size = param(r, "study_size");
    if (size.empty()) continue;
    const std::size_t n = std::stoul(size);
    if (r.metric == "recall_heldout" && r.rep >= 0) series[cell_of(r)][n].push_back(r.value);
    if (r.metric == "recall_heldout_p25") bands[cell_of(r)][n].first = true;
    if (r.metric == "recall_heldout_p75") bands[cell_of(r)][n].second = true;
  }
  c.require(series.size() == config.hippocampus.wta.size(), "missing WTA cells");
  double worst_p = 0.0;
  for (const auto& [cell, sizes] : series) {
    std::vector<double> xs, ys;
    double previous = INFINITY;
    for (const std::size_t n : config.mtl.study_sizes) {
      const auto it = sizes.find(n);
      c.require(it != sizes.end() && it->second.size() == 20, cell + "missing reps at size " + std::to_string(n));
      if (it == sizes.end()) continue;
      const double m = median(it->second);
      c.require(m <= previous, cell + "median rises at size " + std::to_string(n));
      previous = m;
      c.require(bands[cell][n].first && bands[cell][n].second, cell + "missing percentile band at " + std::to_string(n));
      for (double v : it->second) {
        xs.push_back(static_cast<double>(n));
        ys.push_back(v);
      }
    }
    const KendallTrend trend = kendall_trend(xs, ys);
    worst_p = std::max(worst_p, trend.p_decreasing);
    c.require(trend.p_decreasing < 0.05, cell + "trend p " + num(trend.p_decreasing));
  }
  c.note(std::to_string(series.size()) + " WTA cells non-increasing, largest trend p " + num(worst_p) +
         ", noiseless exact held-out recall 1 on " + std::to_string(clean_rows) + " rows");
  return c.outcome();
}

bool bit_equal(const Vector& a, const Vector& b) {
  return a.size() == b.size() &&
         std::equal(a.data(), a.data() + a.size(), b.data(),
                    [](double x, double y) { return std::bit_cast<std::uint64_t>(x) == std::bit_cast<std::uint64_t>(y); });
}

std::vector<std::uint8_t> slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool rejected(const std::vector<std::uint8_t>& bytes) {
  try {
    (void)decode_snapshot(bytes);
  } catch (const Error& e) {
    return e.code() == Errc::kCorruptSnapshot || e.code() == Errc::kVersionError;
  }
  return false;
}

Outcome persistence() {
  Check c;
  const auto dir = std::filesystem::temp_directory_path() / "hwarch_acceptance";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const std::size_t d = 20;
  std::vector<HwLayer> layers;
  layers.push_back(ExactLayer(d));
  layers.push_back(SvdLayer(d, 4, Pooling::kSum));
  layers.push_back(RpLayer(d, {6, 3, true, {}, Pooling::kMax}));
  layers.push_back(LshLayer(WtaHashFamily(d, 8, 2, 4, 5)));
  std::size_t queries = 0, corrupt = 0;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    HwLayer& layer = layers[i];
    for (std::size_t k = 0; k < 6; ++k) {
      const std::size_t m = layer.add_module();
      for (std::size_t j = 0; j < 5; ++j) layer.insert(m, gaussian(d, derive_seed(40 + i, {k, j})));
    }
    HwArchitecture arch(d);
    arch.add_layer(layer);
    const auto path = dir / ("layer" + std::to_string(i) + ".hwsn");
    save_model(arch, path);
    const HwArchitecture loaded = load_architecture(path);
    for (std::uint64_t q = 0; q < 100; ++q) {
      const Vector x = gaussian(d, derive_seed(50 + i, {q}));
      c.require(bit_equal(arch.feedforward(x), loaded.feedforward(x)), std::string(backend_name(layer.backend())) + " query differs");
      ++queries;
    }
    const std::vector<std::uint8_t> bytes = slurp(path);
    for (std::size_t n = 0; n < bytes.size(); n += 1 + bytes.size() / 40) {
      c.require(rejected({bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(n)}), "truncation accepted");
      ++corrupt;
    }
    for (std::size_t at = 0; at < bytes.size(); at += 1 + bytes.size() / 60) {
      std::vector<std::uint8_t> bad = bytes;
      bad[at] ^= static_cast<std::uint8_t>(1u << (at % 8));
      c.require(rejected(bad), "bit flip at " + std::to_string(at) + " accepted");
      ++corrupt;
    }
    std::vector<std::uint8_t> future = bytes;
    future[8] = 2;
    c.require(rejected(future), "future version accepted");
    ++corrupt;
  }

  const ExperimentConfig config = default_config(ExperimentKind::kMtl);
  const MtlRep rep = prepare_mtl(config, 0);
  CortexHippocampusModel model = build_mtl_model(config, rep, mtl_cells(config).front());
  study_individuals(model, rep.data, 16);
  save_model(model, dir / "model.hwsn");
  const CortexHippocampusModel loaded = load_model(dir / "model.hwsn");
  for (std::uint64_t q = 0; q < 100; ++q) {
    const Vector x = gaussian(model.input_dim(), derive_seed(60, {q}));
    c.require(bit_equal(model.hippocampal_signature(x), loaded.hippocampal_signature(x)) &&
                  model.recall(x) == loaded.recall(x),
              "model query differs");
    ++queries;
  }
  std::filesystem::remove_all(dir);
  c.note(std::to_string(queries) + " bit-identical queries across 4 backends and a model, " +
         std::to_string(corrupt) + " corrupted snapshots rejected");
  return c.outcome();
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "oracle equivalence", 10, oracle_equivalence},
      {2, "orbit invariance", 10, orbit_invariance},
      {3, "svd backend", 0, svd_backend},
      {4, "oja rule", 0, oja_rule},
      {5, "rp backend", 0, rp_backend},
      {6, "wta-lsh backend", 0, wta_lsh},
      {7, "ventral experiment", 120, ventral},
      {8, "mtl experiment", 300, mtl},
      {9, "persistence", 0, persistence},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  int failed = 0;
  for (const Criterion& k : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), k.id) == selected.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = k.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (k.budget_seconds > 0 && seconds >= k.budget_seconds) {
      o.pass = false;
      o.detail += "; runtime " + num(seconds) + " s exceeds " + num(k.budget_seconds) + " s";
    }
    failed += !o.pass;
    std::printf("criterion %d %s: %s [%.2f s] %s\n", k.id, k.name, o.pass ? "PASS" : "FAIL", seconds, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
