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
#include <thread>

#include "hwarch/core.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace hwarch {
namespace {

using testing::gaussian;
using testing::unit_vectors;

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

TEST(Normalize, Examples) {
  EXPECT_TRUE(normalize(vec({3, 4})).isApprox(vec({0.6, 0.8}), 1e-15));
  EXPECT_EQ(normalize(vec({1, 0, 0})), vec({1, 0, 0}));
  EXPECT_HW_ERROR(normalize(vec({0, 0})), Errc::kZeroVector);
  EXPECT_HW_ERROR(normalize(vec({1, NAN})), Errc::kNonFinite);
}

TEST(Normalize, UnitNormProperty) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const Vector v = gaussian(1 + s % 40, s) * std::pow(10.0, static_cast<double>(s % 13) - 6);
    EXPECT_NEAR(normalize(v).norm(), 1.0, 1e-12);
  }
}

TEST(Similarity, Examples) {
  EXPECT_DOUBLE_EQ(similarity(vec({1, 0}), vec({1, 0}), Similarity::normalized_dot()), 1.0);
  EXPECT_DOUBLE_EQ(similarity(vec({1, 0}), vec({0, 1}), {}), 0.0);
  EXPECT_NEAR(similarity(vec({1, 1}), vec({1, 0}), {}), 0.70711, 1e-5);
  EXPECT_NEAR(similarity(vec({2, 0}), vec({1, 0}), Similarity::sigmoid_dot()),
              1.0 / (1.0 + std::exp(-2.0)), 1e-15);
  EXPECT_NEAR(similarity(vec({2, 0}), vec({1, 0}), Similarity::sigmoid_dot(0.5)),
              1.0 / (1.0 + std::exp(-1.0)), 1e-15);
  EXPECT_HW_ERROR(similarity(vec({1, 0, 0}), vec({1, 0}), {}), Errc::kDimensionMismatch);
  EXPECT_HW_ERROR(similarity(vec({0, 0}), vec({1, 0}), {}), Errc::kZeroVector);
}

TEST(NormalizedDot, BoundedOnUnitInputs) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const double v = similarity(gaussian(9, s), random_unit(9, s + 1000), {});
    EXPECT_GE(v, -1.0 - 1e-15);
    EXPECT_LE(v, 1.0 + 1e-15);
  }
}

TEST(ExactInsert, NormalizesOnInsert) {
  TemplateBook book(2);
  book.insert(vec({0, 2}));
  ASSERT_EQ(book.size(), 1u);
  EXPECT_EQ(book[0], vec({0, 1}));
}

TEST(ExactInsert, KeepsDuplicates) {
  TemplateBook book(2);
  book.insert(vec({1, 0}));
  book.insert(vec({1, 0}));
  ASSERT_EQ(book.size(), 2u);
  EXPECT_EQ(book[0], book[1]);
}

TEST(ExactInsert, PreservesOrderLikeListAppend) {
  const auto ts = unit_vectors(5, 6, 11);
  TemplateBook book(6);
  std::vector<Vector> reference;
  for (const Vector& t : ts) {
    const std::vector<Vector> before(book.templates().begin(), book.templates().end());
    book.insert(t);
    reference.push_back(t / t.norm());
    for (std::size_t i = 0; i < before.size(); ++i) EXPECT_EQ(book[i], before[i]);
  }
  ASSERT_EQ(book.size(), reference.size());
  for (std::size_t i = 0; i < reference.size(); ++i) EXPECT_EQ(book[i], reference[i]);
}

TEST(ExactInsert, Errors) {
  TemplateBook book(3);
  EXPECT_HW_ERROR(book.insert(Vector::Zero(3)), Errc::kZeroVector);
  EXPECT_HW_ERROR(book.insert(Vector::Ones(2)), Errc::kDimensionMismatch);
  EXPECT_TRUE(book.empty());
}

TEST(ExactQuery, Examples) {
  TemplateBook book(2);
  book.insert(vec({1, 0}));
  book.insert(vec({0, 1}));
  EXPECT_DOUBLE_EQ(exact_query(book, vec({1, 0}), {}, Pooling::kMax), 1.0);
  EXPECT_NEAR(exact_query(book, vec({1, 1}) / std::sqrt(2.0), {}, Pooling::kSum), std::sqrt(2.0),
              1e-12);
}

TEST(ExactQuery, Errors) {
  TemplateBook book(2);
  EXPECT_HW_ERROR(exact_query(book, vec({1, 0}), {}, Pooling::kMax), Errc::kEmptyModule);
  book.insert(vec({1, 0}));
  EXPECT_HW_ERROR(exact_query(book, vec({0, 0}), {}, Pooling::kMax), Errc::kZeroVector);
  EXPECT_HW_ERROR(exact_query(book, vec({1, 0, 0}), {}, Pooling::kMax),
                  Errc::kDimensionMismatch);
}

TEST(ExactQuery, MatchesBruteForceLoop) {
  TemplateBook book(16);
  for (const Vector& t : unit_vectors(20, 16, 3)) book.insert(t);
  for (std::uint64_t q = 0; q < 50; ++q) {
    const Vector x = gaussian(16, 500 + q);
    double xn = 0.0;
    for (Eigen::Index i = 0; i < 16; ++i) xn += x[i] * x[i];
    xn = std::sqrt(xn);
    double best = -1e300, sum = 0.0;
    for (std::size_t k = 0; k < book.size(); ++k) {
      double dot = 0.0;
      for (Eigen::Index i = 0; i < 16; ++i) dot += x[i] * book[k][i];
      best = std::max(best, dot / xn);
      sum += dot / xn;
    }
    EXPECT_NEAR(exact_query(book, x, {}, Pooling::kMax), best, 1e-12);
    EXPECT_NEAR(exact_query(book, x, {}, Pooling::kSum), sum, 1e-12);
  }
}

TEST(ExactQuery, MaxIsLargestSimilarityAndBelowSumWhenNonnegative) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    TemplateBook book(8);
    std::vector<double> sims;
    Vector x = gaussian(8, s).cwiseAbs();
    for (std::uint64_t k = 0; k < 1 + s % 7; ++k) {
      const Vector t = gaussian(8, 900 + 10 * s + k).cwiseAbs();
      book.insert(t);
      sims.push_back(similarity(x, book[book.size() - 1], {}));
    }
    const double mx = exact_query(book, x, {}, Pooling::kMax);
    EXPECT_EQ(mx, *std::max_element(sims.begin(), sims.end()));
    EXPECT_LE(mx, exact_query(book, x, {}, Pooling::kSum) + 1e-15);
  }
}

TEST(ExactQuery, InvariantToTemplateOrder) {
  const auto ts = unit_vectors(12, 10, 21);
  std::vector<std::size_t> order(ts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  TemplateBook forward(10);
  for (const Vector& t : ts) forward.insert(t);
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng(s);
    for (std::size_t j = order.size(); j-- > 1;) std::swap(order[j], order[rng.below(j + 1)]);
    TemplateBook shuffled(10);
    for (std::size_t i : order) shuffled.insert(ts[i]);
    const Vector x = gaussian(10, 77 + s);
    EXPECT_EQ(exact_query(shuffled, x, {}, Pooling::kMax),
              exact_query(forward, x, {}, Pooling::kMax));
    EXPECT_NEAR(exact_query(shuffled, x, {}, Pooling::kSum),
                exact_query(forward, x, {}, Pooling::kSum), 1e-12);
  }
}

TEST(ExactQuery, OrbitInvariance) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const std::size_t d = 5 + s % 12;
    const TemplateBook book = generate_orbit(gaussian(d, s), GroupSpec::full_cyclic(d));
    const Vector x = gaussian(d, 1000 + s);
    for (Pooling p : {Pooling::kMax, Pooling::kSum}) {
      const double base = exact_query(book, x, {}, p);
      for (std::size_t j = 0; j < d; ++j) {
        EXPECT_NEAR(exact_query(book, cyclic_shift(x, j), {}, p), base, 1e-12);
      }
    }
  }
}

TEST(ExactModule, ConcurrentQueriesAgree) {
  ExactModule m(32);
  for (const Vector& t : unit_vectors(64, 32, 5)) m.insert(t);
  const Vector x = gaussian(32, 9);
  const double expected = m.query(x, {}, Pooling::kMax);
  std::vector<double> seen(4);
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    threads.emplace_back([&, i] {
      for (int r = 0; r < 200; ++r) seen[i] = m.query(x, {}, Pooling::kMax);
    });
  }
  for (auto& t : threads) t.join();
  for (double v : seen) EXPECT_EQ(v, expected);
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(vec({0.1, 0.9, 0.3})), 1u);
  EXPECT_EQ(classify(vec({0.5, 0.5})), 0u);
  EXPECT_HW_ERROR(classify(Signature()), Errc::kEmptySignature);
}

TEST(Classify, MatchesArgmaxOracleAndIsScaleInvariant) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const std::size_t k = 1 + s % 17;
    Vector sig = gaussian(k, s);
    if (s % 5 == 0) sig = sig.array().round();  // plenty of ties
    std::vector<double> plain(sig.data(), sig.data() + sig.size());
    EXPECT_EQ(classify(sig), oracle::argmax(plain));
    EXPECT_EQ(classify(sig * 3.5), classify(sig));
    EXPECT_EQ(classify(sig * 1e-3), classify(sig));
  }
}

}  // namespace
}  // namespace hwarch
