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
#include "hwarch/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hwarch/error.hpp"

namespace hwarch {

Vector normalize(const Vector& v) {
  require_finite(v, "vector");
  const double n = v.norm();
  if (n == 0.0) throw Error(Errc::kZeroVector, "cannot normalize a zero vector");
  return v / n;
}

double similarity(const Vector& x, const Vector& t, Similarity f) {
  if (x.size() != t.size()) {
    throw Error(Errc::kDimensionMismatch, "stimulus and template lengths differ");
  }
  const double xn = x.norm();
  if (xn == 0.0) throw Error(Errc::kZeroVector, "zero stimulus");
  const double dot = x.dot(t);
  switch (f.kind) {
    case Similarity::Kind::kNormalizedDot:
      return dot / xn;
    case Similarity::Kind::kSigmoidDot:
      return 1.0 / (1.0 + std::exp(-f.gain * dot));
  }
  return 0.0;
}

double pool(std::span<const double> values, Pooling p) {
  switch (p) {
    case Pooling::kMax:
      if (values.empty()) throw Error(Errc::kEmptyModule, "max over no values");
      return *std::max_element(values.begin(), values.end());
    case Pooling::kSum:
      return std::accumulate(values.begin(), values.end(), 0.0);
  }
  return 0.0;
}

TemplateBook::TemplateBook(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw Error(Errc::kInvalidParams, "template dimension must be >= 1");
}

void TemplateBook::insert(const Vector& t) {
  require_dim(t, dim_, "template");
  templates_.push_back(normalize(t));
}

void TemplateBook::insert_normalized(Vector t) {
  require_dim(t, dim_, "template");
  require_finite(t, "template");
  templates_.push_back(std::move(t));
}

Matrix TemplateBook::matrix() const { return stack_rows(templates_, dim_); }

double exact_query(const TemplateBook& book, const Vector& x, Similarity f,
                   Pooling p) {
  if (book.empty()) throw Error(Errc::kEmptyModule, "query of an empty module");
  require_dim(x, book.dim(), "stimulus");
  require_finite(x, "stimulus");
  const double xn = x.norm();
  if (xn == 0.0) throw Error(Errc::kZeroVector, "zero stimulus");

  // The norm is shared by every template, so compute it once.
  std::vector<double> responses;
  responses.reserve(book.size());
  for (const Vector& t : book.templates()) {
    const double dot = x.dot(t);
    responses.push_back(f.kind == Similarity::Kind::kNormalizedDot
                            ? dot / xn
                            : 1.0 / (1.0 + std::exp(-f.gain * dot)));
  }
  return pool(responses, p);
}

std::size_t classify(const Signature& sig) {
  if (sig.size() == 0) throw Error(Errc::kEmptySignature, "classify of an empty signature");
  std::size_t best = 0;
  for (Eigen::Index k = 1; k < sig.size(); ++k) {
    if (sig[k] > sig[static_cast<Eigen::Index>(best)]) best = static_cast<std::size_t>(k);
  }
  return best;
}

}  // namespace hwarch
