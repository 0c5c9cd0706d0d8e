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
#include "hwarch/oja.hpp"

#include <cmath>
#include <vector>

#include "hwarch/error.hpp"
#include "hwarch/rng.hpp"

namespace hwarch {

OjaLearner::OjaLearner(Matrix initial_weights, OjaSchedule schedule)
    : weights_(std::move(initial_weights)), schedule_(schedule) {
  if (weights_.rows() == 0 || weights_.cols() == 0) {
    throw Error(Errc::kInvalidParams, "Oja learner needs d >= 1 and r >= 1");
  }
}

OjaLearner OjaLearner::random(std::size_t dim, std::size_t components,
                              std::uint64_t seed, OjaSchedule schedule) {
  if (dim == 0 || components == 0) {
    throw Error(Errc::kInvalidParams, "Oja learner needs d >= 1 and r >= 1");
  }
  Matrix w(dim, components);
  for (std::size_t j = 0; j < components; ++j) {
    Rng rng(seed, j);
    for (std::size_t i = 0; i < dim; ++i) w(i, j) = rng.normal();
    w.col(j).normalize();
  }
  return OjaLearner(std::move(w), schedule);
}

void OjaLearner::update(const Vector& x) {
  require_dim(x, dim(), "sample");
  require_finite(x, "sample");
  const double eta = schedule_.rate(steps_);
  const Vector y = weights_.transpose() * x;
  // Sanger: residual_j = x - sum_{i <= j} y_i w_i, built up column by column.
  Vector residual = x;
  for (Eigen::Index j = 0; j < weights_.cols(); ++j) {
    residual -= y[j] * weights_.col(j);
    weights_.col(j) += eta * y[j] * residual;
  }
  ++steps_;
}

Matrix oja_train(std::span<const Vector> stream, std::size_t components,
                 std::size_t epochs, OjaSchedule schedule, std::uint64_t seed) {
  if (stream.empty()) throw Error(Errc::kEmptyStream, "oja_train needs at least one sample");
  const std::size_t dim = static_cast<std::size_t>(stream.front().size());
  if (components == 0 || components > dim) {
    throw Error(Errc::kInvalidParams, "oja_train needs 1 <= r <= d");
  }
  for (const Vector& x : stream) {
    require_dim(x, dim, "sample");
    require_finite(x, "sample");
  }

  // Rescale to unit mean squared norm: eigenvectors are unchanged and the
  // fixed schedule stays stable whatever the data's scale.
  double mean_sq = 0.0;
  for (const Vector& x : stream) mean_sq += x.squaredNorm();
  mean_sq /= static_cast<double>(stream.size());
  const double scale = mean_sq > 0.0 ? 1.0 / std::sqrt(mean_sq) : 1.0;

  Matrix basis(dim, components);
  std::vector<Vector> deflated;
  deflated.reserve(stream.size());
  for (const Vector& x : stream) deflated.push_back(scale * x);
  for (std::size_t j = 0; j < components; ++j) {
    OjaLearner learner = OjaLearner::random(dim, 1, derive_seed(seed, {j}), schedule);
    for (std::size_t e = 0; e < epochs; ++e) {
      for (const Vector& x : deflated) learner.update(x);
    }
    Vector w = learner.weights().col(0);
    // Keep the next stage's data orthogonal to what has been found.
    for (std::size_t k = 0; k < j; ++k) w -= basis.col(k).dot(w) * basis.col(k);
    const double n = w.norm();
    if (n > 1e-12) w /= n;
    basis.col(j) = w;
    for (Vector& x : deflated) x -= w.dot(x) * w;
  }
  if (orthonormalize_columns(basis) != 0) {
    // Deflation exhausted the data's span; complete the basis with random
    // directions so the result is still orthonormal.
    Rng rng(seed, 0xC0FFEE);
    for (Eigen::Index j = 0; j < basis.cols(); ++j) {
      while (basis.col(j).squaredNorm() == 0.0) {
        for (Eigen::Index i = 0; i < basis.rows(); ++i) basis(i, j) = rng.normal();
        Matrix head = basis.leftCols(j + 1);
        orthonormalize_columns(head);
        basis.col(j) = head.col(j);
      }
    }
  }
  canonicalize_column_signs(basis);
  return basis;
}

}  // namespace hwarch
