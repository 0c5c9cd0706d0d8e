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
#include "hwarch/rp.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "hwarch/error.hpp"
#include "hwarch/rng.hpp"

namespace hwarch {

RpProjection::RpProjection(std::size_t dim, std::size_t columns, std::uint64_t seed)
    : dim_(dim), seed_(seed), matrix_(dim, 0) {
  if (dim == 0) throw Error(Errc::kInvalidParams, "projection dimension must be >= 1");
  if (columns > dim) {
    throw Error(Errc::kDimensionExhausted,
                "cannot draw " + std::to_string(columns) +
                    " orthonormal columns in dimension " + std::to_string(dim));
  }
  for (std::size_t j = 0; j < columns; ++j) extend();
}

RpProjection RpProjection::restore(std::size_t dim, std::uint64_t seed,
                                   std::uint64_t draws, Matrix matrix) {
  if (static_cast<std::size_t>(matrix.rows()) != dim ||
      static_cast<std::size_t>(matrix.cols()) > dim ||
      draws < static_cast<std::uint64_t>(matrix.cols())) {
    throw Error(Errc::kInvalidParams, "inconsistent projection state");
  }
  RpProjection p(dim, 0, seed);
  p.draws_ = draws;
  p.matrix_ = std::move(matrix);
  return p;
}

void RpProjection::extend() {
  const Eigen::Index s = matrix_.cols();
  if (static_cast<std::size_t>(s) == dim_) {
    throw Error(Errc::kDimensionExhausted, "projection already spans R^d");
  }
  const auto d = static_cast<Eigen::Index>(dim_);
  Vector r(d);
  for (;;) {
    Rng rng(seed_, draws_++);
    for (Eigen::Index i = 0; i < d; ++i) r[i] = rng.normal();
    const double drawn = r.norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index k = 0; k < s; ++k) r -= matrix_.col(k).dot(r) * matrix_.col(k);
    }
    const double left = r.norm();
    // A draw almost inside the current span is numerically unreliable.
    if (left > 1e-6 * drawn) {
      r /= left;
      break;
    }
  }
  matrix_.conservativeResize(Eigen::NoChange, s + 1);
  matrix_.col(s) = r;
}

std::size_t jl_min_dim(std::size_t n, double eps, double c) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error(Errc::kInvalidEps, "JL distortion must lie in (0, 1), got " +
                                       std::to_string(eps));
  }
  const double items = static_cast<double>(std::max<std::size_t>(n, 2));
  return static_cast<std::size_t>(std::ceil(c * std::log(items) / (eps * eps)));
}

bool jl_bound_check(std::size_t n, std::size_t s, double eps, double c) {
  return s < jl_min_dim(n, eps, c);
}

bool AugmentPolicy::fires(std::size_t stored, std::size_t s) const {
  switch (kind) {
    case Kind::kNever: return false;
    case Kind::kAlways: return true;
    case Kind::kJlBound: return jl_bound_check(stored, s, eps, c);
  }
  return false;
}

void RpModule::append(const Vector& t, const RpProjection& proj) {
  require_dim(t, proj.dim(), "template");
  raw_.insert(t);
  projected_.push_back(proj.matrix().transpose() * raw_.templates().back());
  ++ops_.rows_written;
  ops_.multiply_adds += proj.dim() * proj.size();
}

void RpModule::add_column(const Vector& column) {
  require_dim(column, raw_.dim(), "projection column");
  for (std::size_t i = 0; i < projected_.size(); ++i) {
    Vector& row = projected_[i];
    row.conservativeResize(row.size() + 1);
    row[row.size() - 1] = raw_[i].dot(column);
    ++ops_.rows_written;
    ops_.multiply_adds += raw_.dim();
  }
}

double RpModule::query(const Vector& x, const RpProjection& proj, Pooling p) const {
  if (projected_.empty()) throw Error(Errc::kEmptyModule, "query of an empty RP module");
  require_dim(x, proj.dim(), "stimulus");
  const Vector z = proj.matrix().transpose() * normalize(x);
  std::vector<double> responses;
  responses.reserve(projected_.size());
  for (const Vector& row : projected_) {
    if (row.size() != z.size()) {
      throw Error(Errc::kDimensionMismatch, "module is out of sync with its projection");
    }
    responses.push_back(row.dot(z));
  }
  return pool(responses, p);
}

Matrix RpModule::projected() const {
  const std::size_t s = projected_.empty() ? 0 : static_cast<std::size_t>(projected_.front().size());
  return stack_rows(projected_, s);
}

void RpModule::restore_row(Vector raw_template, Vector projected_row) {
  raw_.insert_normalized(std::move(raw_template));
  projected_.push_back(std::move(projected_row));
}

void rp_insert(std::span<RpModule> sharing, std::size_t k, RpProjection& proj,
               const Vector& t, const AugmentPolicy& policy) {
  if (k >= sharing.size()) {
    throw Error(Errc::kUnknownModule, "no module " + std::to_string(k));
  }
  require_dim(t, proj.dim(), "template");
  (void)normalize(t);  // reject zero or non-finite input before any mutation

  const std::size_t stored =
      std::accumulate(sharing.begin(), sharing.end(), std::size_t{1},
                      [](std::size_t acc, const RpModule& m) { return acc + m.size(); });
  const bool saturated = proj.size() == proj.dim();
  if (policy.fires(stored, proj.size()) &&
      !(saturated && policy.kind == AugmentPolicy::Kind::kJlBound)) {
    if (saturated) {
      throw Error(Errc::kDimensionExhausted,
                  "augmentation requested but the projection already spans R^d");
    }
    proj.extend();
    const Vector column = proj.matrix().col(proj.matrix().cols() - 1);
    for (RpModule& m : sharing) m.add_column(column);
  }
  sharing[k].append(t, proj);
}

}  // namespace hwarch
