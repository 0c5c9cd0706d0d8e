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
#ifndef HWARCH_CORE_HPP_
#define HWARCH_CORE_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "hwarch/linalg.hpp"

namespace hwarch {

/// Similarity f(x, t) between a stimulus and a unit-norm template.
struct Similarity {
  enum class Kind { kNormalizedDot, kSigmoidDot };

  Kind kind = Kind::kNormalizedDot;
  /// Only used by kSigmoidDot: f = logistic(gain * x.t).
  double gain = 1.0;

  static constexpr Similarity normalized_dot() { return {}; }
  static constexpr Similarity sigmoid_dot(double gain = 1.0) {
    return {Kind::kSigmoidDot, gain};
  }

  friend bool operator==(const Similarity&, const Similarity&) = default;
};

/// Permutation-invariant reduction P over a similarity multiset.
enum class Pooling { kMax, kSum };

/// Returns v / ||v||. Throws ZeroVector when v has no nonzero entry.
Vector normalize(const Vector& v);

/// f(x, t). NormalizedDot is (x.t)/||x||; t is assumed unit norm.
double similarity(const Vector& x, const Vector& t, Similarity f);

/// P over values. Max of an empty range is an error left to callers.
double pool(std::span<const double> values, Pooling p);

/// Ordered multiset of unit-norm templates sharing one dimension.
///
/// Templates are normalized on insert; duplicates are kept, so Sum pooling
/// reflects multiplicity.
class TemplateBook {
 public:
  explicit TemplateBook(std::size_t dim);

  /// Appends normalize(t). Throws ZeroVector, DimensionMismatch, NonFinite.
  void insert(const Vector& t);

  /// Appends a template that is already unit norm (used when decoding).
  void insert_normalized(Vector t);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return templates_.size(); }
  bool empty() const { return templates_.empty(); }

  const Vector& operator[](std::size_t i) const { return templates_[i]; }
  std::span<const Vector> templates() const { return templates_; }

  /// Matrix form with one template per row (n x d).
  Matrix matrix() const;

 private:
  std::size_t dim_;
  std::vector<Vector> templates_;
};

/// QUERY for the exact module: P({f(x, t) : t in book}).
/// Throws EmptyModule, ZeroVector, DimensionMismatch.
double exact_query(const TemplateBook& book, const Vector& x, Similarity f,
                   Pooling p);

/// Nearest-neighbour HW-module: D = T, INSERT appends, QUERY pools f over T.
class ExactModule {
 public:
  explicit ExactModule(std::size_t dim) : book_(dim) {}
  explicit ExactModule(TemplateBook book) : book_(std::move(book)) {}

  void insert(const Vector& t) { book_.insert(t); }
  double query(const Vector& x, Similarity f, Pooling p) const {
    return exact_query(book_, x, f, p);
  }

  const TemplateBook& book() const { return book_; }
  std::size_t size() const { return book_.size(); }
  std::size_t dim() const { return book_.dim(); }

 private:
  TemplateBook book_;
};

/// Index of the largest signature entry; ties go to the lowest index.
/// Throws EmptySignature.
std::size_t classify(const Signature& sig);

}  // namespace hwarch

#endif  // HWARCH_CORE_HPP_
