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
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hwarch/architecture.hpp"
#include "hwarch/model.hpp"
#include "hwarch/synth.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace hwarch {
namespace {

using testing::gaussian;

HwLayer exact_layer(const std::vector<TemplateBook>& books, Pooling p = Pooling::kMax) {
  ExactLayer layer(books.front().dim(), {}, p);
  for (const TemplateBook& b : books) layer.add_module(b);
  return layer;
}

std::vector<TemplateBook> random_books(std::size_t k, std::size_t n, std::size_t d, std::uint64_t seed) {
  std::vector<TemplateBook> out;
  for (std::size_t i = 0; i < k; ++i) {
    TemplateBook b(d);
    for (std::size_t j = 0; j < n; ++j) b.insert(gaussian(d, derive_seed(seed, {i, j})));
    out.push_back(std::move(b));
  }
  return out;
}

TEST(LayerSignature, BasisExample) {
  std::vector<TemplateBook> books;
  for (Eigen::Index i = 0; i < 3; ++i) {
    books.emplace_back(3);
    books.back().insert(Vector::Unit(3, i));
  }
  const HwLayer layer = exact_layer(books);
  EXPECT_EQ(layer.signature(Vector::Unit(3, 1)), Vector::Unit(3, 1));
}

TEST(LayerSignature, ModuleOrderPermutesSignature) {
  const auto books = random_books(6, 4, 10, 1);
  std::vector<std::size_t> perm = {3, 0, 5, 1, 4, 2};
  std::vector<TemplateBook> shuffled;
  for (std::size_t i : perm) shuffled.push_back(books[i]);
  const HwLayer a = exact_layer(books), b = exact_layer(shuffled);
  for (std::uint64_t q = 0; q < 10; ++q) {
    const Vector x = gaussian(10, 100 + q);
    const Signature sa = a.signature(x), sb = b.signature(x);
    for (std::size_t k = 0; k < perm.size(); ++k) EXPECT_EQ(sb[k], sa[perm[k]]);
  }
}

TEST(LayerSignature, MatchesPerModuleOracle) {
  const auto books = random_books(5, 7, 12, 2);
  for (Pooling p : {Pooling::kMax, Pooling::kSum}) {
    const HwLayer layer = exact_layer(books, p);
    for (std::uint64_t q = 0; q < 20; ++q) {
      const Vector x = gaussian(12, q);
      const Signature s = layer.signature(x);
      ASSERT_EQ(s.size(), 5);
      for (std::size_t k = 0; k < 5; ++k) EXPECT_NEAR(s[k], oracle_exact_query(books[k], x, {}, p), 1e-12);
    }
  }
}

TEST(LayerSignature, Errors) {
  ExactLayer empty(4);
  EXPECT_HW_ERROR(HwLayer(empty).signature(Vector::Ones(4)), Errc::kEmptyLayer);
  const HwLayer layer = exact_layer(random_books(2, 2, 4, 3));
  EXPECT_HW_ERROR(layer.signature(Vector::Ones(5)), Errc::kDimensionMismatch);
  HwLayer copy = layer;
  EXPECT_HW_ERROR(copy.insert(7, Vector::Ones(4)), Errc::kUnknownModule);
}

TEST(LayerBackends, ParseAndName) {
  for (Backend b : {Backend::kExact, Backend::kSvd, Backend::kRp, Backend::kWta}) {
    EXPECT_EQ(parse_backend(backend_name(b)), b);
  }
  EXPECT_HW_ERROR(parse_backend("pca"), Errc::kInvalidParams);
}

TEST(LayerBackends, AllBackendsAgreeAtFullResolution) {
  const std::size_t d = 12;
  const auto books = random_books(3, 5, d, 4);
  HwLayer exact = exact_layer(books);
  HwLayer svd = SvdLayer(d, d);
  HwLayer rp = RpLayer(d, {d, 9, true, {AugmentPolicy::Kind::kNever}, Pooling::kMax});
  for (HwLayer* l : {&svd, &rp}) {
    for (std::size_t k = 0; k < books.size(); ++k) {
      l->add_module();
      for (const Vector& t : books[k].templates()) l->insert(k, t);
    }
  }
  for (std::uint64_t q = 0; q < 20; ++q) {
    const Vector x = gaussian(d, 50 + q);
    const Signature ref = exact.signature(x);
    EXPECT_LT((svd.signature(x) - ref).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT((rp.signature(x) - ref).cwiseAbs().maxCoeff(), 1e-10);
  }
  EXPECT_EQ(svd.backend(), Backend::kSvd);
  EXPECT_EQ(rp.module_size(2), 5u);
}

TEST(LayerBackends, RpSharedProjectionGrowsForAllModules) {
  const std::size_t d = 30;
  RpLayer layer(d, {2, 3, true, {AugmentPolicy::Kind::kAlways}, Pooling::kMax});
  layer.add_module();
  layer.add_module();
  layer.insert(0, gaussian(d, 1));
  layer.insert(1, gaussian(d, 2));
  EXPECT_EQ(layer.projections().size(), 1u);
  EXPECT_EQ(layer.projection_for(0).size(), 4u);
  EXPECT_EQ(layer.module(0).projected().cols(), 4);
  EXPECT_NO_THROW(layer.query(0, gaussian(d, 3)));
}

TEST(LayerBackends, RpPerModuleProjections) {
  const std::size_t d = 20;
  RpLayer layer(d, {5, 3, false, {AugmentPolicy::Kind::kAlways}, Pooling::kMax});
  layer.add_module();
  layer.add_module();
  layer.insert(0, gaussian(d, 1));
  EXPECT_EQ(layer.projection_for(0).size(), 6u);
  EXPECT_EQ(layer.projection_for(1).size(), 5u);
  EXPECT_NE(layer.projection_for(0).matrix().col(0), layer.projection_for(1).matrix().col(0));
}

TEST(Feedforward, SingleLayerEqualsSignature) {
  const HwLayer layer = exact_layer(random_books(4, 3, 8, 5));
  HwArchitecture arch(8);
  arch.add_layer(layer);
  const Vector x = gaussian(8, 9);
  EXPECT_EQ(arch.feedforward(x), layer.signature(x));
}

TEST(Feedforward, TwoLayerShapesAndComposition) {
  const HwLayer l1 = exact_layer(random_books(10, 3, 16, 6));
  const HwLayer l2 = exact_layer(random_books(4, 3, 10, 7));
  HwArchitecture arch(16);
  arch.add_layer(l1).add_layer(l2);
  for (std::uint64_t q = 0; q < 20; ++q) {
    const Vector x = gaussian(16, q);
    const auto acts = arch.activations(x);
    ASSERT_EQ(acts.size(), 2u);
    EXPECT_EQ(acts[0].size(), 10);
    EXPECT_EQ(acts[1].size(), 4);
    EXPECT_EQ(arch.feedforward(x), l2.signature(l1.signature(x)));
  }
}

TEST(Feedforward, BranchedStageConcatenates) {
  const HwLayer a = exact_layer(random_books(3, 2, 5, 8));
  const HwLayer b = exact_layer(random_books(2, 2, 4, 9));
  HwArchitecture arch(9);
  arch.add_stage({{a, 0}, {b, 5}});
  const Vector x = gaussian(9, 1);
  Signature expected(5);
  expected << a.signature(x.head(5)), b.signature(x.tail(4));
  EXPECT_EQ(arch.feedforward(x), expected);
}

TEST(Feedforward, DimensionMismatchNamesStage) {
  HwArchitecture arch(8);
  arch.add_layer(exact_layer(random_books(5, 2, 8, 1))).add_layer(exact_layer(random_books(2, 2, 6, 2)));
  try {
    arch.feedforward(gaussian(8, 0));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kDimensionMismatch);
    EXPECT_NE(std::string(e.what()).find("stage 1"), std::string::npos);
  }
  EXPECT_HW_ERROR(arch.feedforward(gaussian(7, 0)), Errc::kDimensionMismatch);
  EXPECT_HW_ERROR(HwArchitecture(3).feedforward(gaussian(3, 0)), Errc::kEmptyLayer);
}

TEST(Feedforward, OrbitInvarianceComposesThroughDepth) {
  const std::size_t d = 16;
  std::vector<TemplateBook> orbits;
  for (std::uint64_t k = 0; k < 6; ++k) orbits.push_back(generate_orbit(random_unit(d, k), GroupSpec::full_cyclic(d)));
  for (Pooling p : {Pooling::kMax, Pooling::kSum}) {
    HwArchitecture arch(d);
    arch.add_layer(exact_layer(orbits, p))
        .add_layer(exact_layer(random_books(4, 3, 6, 20)))
        .add_layer(exact_layer(random_books(3, 2, 4, 21)));
    for (std::uint64_t q = 0; q < 10; ++q) {
      const Vector x = gaussian(d, 400 + q);
      const Signature ref = arch.feedforward(x);
      for (std::size_t j = 0; j < d; ++j) {
        EXPECT_LT((arch.feedforward(cyclic_shift(x, j)) - ref).cwiseAbs().maxCoeff(), 1e-12);
      }
    }
  }
}

// Hippocampus over a cortex-1 of full orbits, d = 12.
CortexHippocampusModel small_model(std::size_t cortex_modules, Backend hippocampus_backend) {
  const std::size_t d = 12;
  std::vector<TemplateBook> orbits;
  for (std::uint64_t k = 0; k < cortex_modules; ++k) {
    orbits.push_back(generate_orbit(random_unit(d, 900 + k), GroupSpec::full_cyclic(d)));
  }
  HwLayer cortex = exact_layer(orbits);
  if (hippocampus_backend == Backend::kWta) {
    return {cortex, std::nullopt, LshLayer(WtaHashFamily(cortex_modules, 16, 1, 2, 3))};
  }
  return {cortex, std::nullopt, ExactLayer(cortex_modules)};
}

TEST(Study, SingleItemRecall) {
  CortexHippocampusModel m = small_model(8, Backend::kWta);
  const Vector item = gaussian(12, 1);
  m.study(std::vector<Episode>{{{item}, 0}});
  EXPECT_EQ(m.recall(item), 0u);
}

TEST(Study, CortexIsFrozen) {
  CortexHippocampusModel m = small_model(8, Backend::kExact);
  const auto& before = std::get<ExactLayer>(m.cortex1().impl());
  std::vector<Matrix> snapshots;
  for (std::size_t k = 0; k < before.size(); ++k) snapshots.push_back(before.module(k).book().matrix());
  std::vector<Episode> eps;
  for (std::size_t e = 0; e < 5; ++e) eps.push_back({{gaussian(12, e), gaussian(12, 50 + e)}, e});
  m.study(eps);
  const auto& after = std::get<ExactLayer>(m.cortex1().impl());
  for (std::size_t k = 0; k < after.size(); ++k) EXPECT_EQ(after.module(k).book().matrix(), snapshots[k]);
}

TEST(Study, ModuleSizesAndRoundTrip) {
  CortexHippocampusModel exact = small_model(24, Backend::kExact);
  CortexHippocampusModel wta = small_model(24, Backend::kWta);
  std::vector<Episode> eps;
  for (std::size_t e = 0; e < 20; ++e) {
    Episode ep{{}, e};
    for (std::size_t i = 0; i < 8; ++i) ep.items.push_back(gaussian(12, derive_seed(e, {i})));
    eps.push_back(ep);
  }
  exact.study(eps);
  wta.study(eps);
  std::size_t exact_hits = 0, wta_hits = 0;
  for (const Episode& ep : eps) {
    EXPECT_EQ(exact.hippocampus().module_size(ep.module), 8u);
    EXPECT_EQ(wta.hippocampus().module_size(ep.module), 8u);
    for (const Vector& item : ep.items) {
      exact_hits += exact.recall(item) == ep.module;
      wta_hits += wta.recall(item) == ep.module;
    }
  }
  EXPECT_EQ(exact_hits, 160u);
  EXPECT_LE(wta_hits, exact_hits);
  EXPECT_EQ(wta_hits, 160u);  // studied items always find themselves
}

TEST(Study, Errors) {
  CortexHippocampusModel m = small_model(4, Backend::kExact);
  EXPECT_HW_ERROR(m.recall(gaussian(12, 0)), Errc::kNotStudied);
  EXPECT_HW_ERROR(m.study(std::vector<Episode>{{{gaussian(12, 0)}, 1}}), Errc::kUnknownModule);
  EXPECT_HW_ERROR(m.study(std::vector<Episode>{{{gaussian(11, 0)}, 0}}), Errc::kDimensionMismatch);
  EXPECT_EQ(m.hippocampus().size(), 0u);
  EXPECT_HW_ERROR(CortexHippocampusModel(exact_layer(random_books(3, 1, 4, 0)), std::nullopt, ExactLayer(4)),
                  Errc::kDimensionMismatch);
}

TEST(Recall, UnseenOrbitViewWithExactHippocampus) {
  CortexHippocampusModel m = small_model(10, Backend::kExact);
  std::vector<Episode> eps;
  std::vector<Vector> bases;
  for (std::size_t e = 0; e < 6; ++e) {
    bases.push_back(random_unit(12, 70 + e));
    eps.push_back({{bases.back()}, e});
  }
  m.study(eps);
  for (std::size_t e = 0; e < 6; ++e) {
    for (std::size_t j = 1; j < 12; ++j) EXPECT_EQ(m.recall(cyclic_shift(bases[e], j)), e);
  }
}

TEST(Recall, CrossModalZeroSlice) {
  const std::size_t da = 8, db = 6;
  std::vector<TemplateBook> fa, fb;
  for (std::uint64_t k = 0; k < 5; ++k) fa.push_back(generate_orbit(random_unit(da, k), GroupSpec::full_cyclic(da)));
  for (std::uint64_t k = 0; k < 4; ++k) fb.push_back(generate_orbit(random_unit(db, 50 + k), GroupSpec::full_cyclic(db)));
  CortexHippocampusModel m(exact_layer(fa), exact_layer(fb), ExactLayer(9));
  EXPECT_EQ(m.input_dim(), da + db);
  Vector probe = Vector::Zero(da + db);
  probe.head(da) = gaussian(da, 1);
  const Signature s = m.encode(probe);
  EXPECT_EQ(s.tail(4).squaredNorm(), 0.0);
  EXPECT_GT(s.head(5).squaredNorm(), 0.0);
  EXPECT_HW_ERROR(m.encode(Vector::Zero(da + db)), Errc::kZeroVector);
}

TEST(SameDifferent, Examples) {
  const CortexHippocampusModel m = small_model(6, Backend::kExact);
  const Vector x = gaussian(12, 4), y = gaussian(12, 5);
  EXPECT_NEAR(m.ventral_cosine(x, x), 1.0, 1e-12);
  EXPECT_TRUE(m.same_different(x, x, 1.0 - 1e-12));
  EXPECT_EQ(m.same_different(x, y, 0.3), m.same_different(y, x, 0.3));
  EXPECT_EQ(m.ventral_cosine(x, y), m.ventral_cosine(y, x));
}

TEST(SameDifferent, OrthogonalSignaturesAreDifferent) {
  std::vector<TemplateBook> books(2, TemplateBook(2));
  books[0].insert(Vector::Unit(2, 0));
  books[1].insert(Vector::Unit(2, 1));
  // With sigmoid-free normalized dot, e1 and e2 give signatures (1,0), (0,1).
  const CortexHippocampusModel m(exact_layer(books), std::nullopt, ExactLayer(2));
  EXPECT_FALSE(m.same_different(Vector::Unit(2, 0), Vector::Unit(2, 1), 1e-9));
}

TEST(CalibrateThreshold, Midpoint) {
  std::vector<ScoredPair> pairs;
  for (int i = 0; i < 5; ++i) pairs.push_back({0.9, true});
  for (int i = 0; i < 5; ++i) pairs.push_back({0.1, false});
  const double theta = calibrate_threshold(pairs);
  EXPECT_DOUBLE_EQ(theta, 0.5);
  EXPECT_DOUBLE_EQ(balanced_accuracy(pairs, theta), 1.0);
}

TEST(CalibrateThreshold, SeparableIsPerfect) {
  std::vector<ScoredPair> pairs;
  for (std::uint64_t i = 0; i < 40; ++i) {
    Rng rng(i, 0);
    const bool same = i % 3 == 0;
    pairs.push_back({same ? 0.6 + 0.4 * rng.uniform() : 0.55 * rng.uniform(), same});
  }
  EXPECT_DOUBLE_EQ(balanced_accuracy(pairs, calibrate_threshold(pairs)), 1.0);
}

TEST(CalibrateThreshold, MatchesExhaustiveScanOnRandomLabels) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    Rng rng(s, 1);
    std::vector<ScoredPair> pairs;
    for (int i = 0; i < 30; ++i) pairs.push_back({std::round(rng.uniform() * 10) / 10, rng.uniform() < 0.5});
    pairs.push_back({0.5, true});
    pairs.push_back({0.5, false});
    const double theta = calibrate_threshold(pairs);
    // Scan every candidate cut: below all, between each distinct pair, above all.
    std::vector<double> scores;
    for (const auto& p : pairs) scores.push_back(p.score);
    std::sort(scores.begin(), scores.end());
    double best = balanced_accuracy(pairs, scores.front());
    for (std::size_t i = 1; i < scores.size(); ++i) {
      best = std::max(best, balanced_accuracy(pairs, scores[i]));
    }
    best = std::max(best, balanced_accuracy(pairs, scores.back() + 1.0));
    EXPECT_DOUBLE_EQ(balanced_accuracy(pairs, theta), best);
    EXPECT_GE(balanced_accuracy(pairs, theta), 0.5);
  }
}

TEST(CalibrateThreshold, Errors) {
  std::vector<ScoredPair> one_class = {{0.3, true}, {0.7, true}};
  EXPECT_HW_ERROR(calibrate_threshold(one_class), Errc::kDegenerateLabels);
  std::vector<ScoredPair> none;
  EXPECT_HW_ERROR(calibrate_threshold(none), Errc::kDegenerateLabels);
  std::vector<ScoredPair> nan = {{std::nan(""), true}, {0.2, false}};
  EXPECT_HW_ERROR(calibrate_threshold(nan), Errc::kNonFinite);
}

}  // namespace
}  // namespace hwarch
