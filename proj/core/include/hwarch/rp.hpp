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
#ifndef HWARCH_RP_HPP_
#define HWARCH_RP_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hwarch/core.hpp"

namespace hwarch {

/// d x s projection with orthonormal columns.
///
/// Column j is drawn from the Gaussian stream (seed, j) and orthogonalized
/// against columns 0..j-1, so a projection built with s columns equals one
/// built with s-1 columns and extended once.
class RpProjection {
 public:
  RpProjection(std::size_t dim, std::size_t columns, std::uint64_t seed);

  static RpProjection restore(std::size_t dim, std::uint64_t seed,
                              std::uint64_t draws, Matrix matrix);

  /// Appends one random column orthogonal to the existing ones.
  /// Throws DimensionExhausted when s == d.
  void extend();

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return static_cast<std::size_t>(matrix_.cols()); }
  std::uint64_t seed() const { return seed_; }
  /// Number of Gaussian streams consumed so far (>= size()).
  std::uint64_t draws() const { return draws_; }
  const Matrix& matrix() const { return matrix_; }

 private:
  std::size_t dim_;
  std::uint64_t seed_;
  std::uint64_t draws_ = 0;
  Matrix matrix_;
};

/// Minimum projection dimension ceil(c ln(max(n, 2)) / eps^2).
/// Throws InvalidEps unless 0 < eps < 1.
std::size_t jl_min_dim(std::size_t n, double eps, double c = 8.0);

/// True when s is below the JL bound for n items, i.e. augmentation is
/// advised.
bool jl_bound_check(std::size_t n, std::size_t s, double eps, double c = 8.0);

struct AugmentPolicy {
  enum class Kind { kNever, kAlways, kJlBound };

  Kind kind = Kind::kJlBound;
  double eps = 0.25;
  double c = 8.0;

  /// stored: item count through the projection after the pending insert.
  bool fires(std::size_t stored, std::size_t s) const;
};

/// Work done by a module since the last reset; used to check that a plain
/// insert costs O(s d) regardless of how many templates are stored.
struct RpOpCount {
  std::uint64_t rows_written = 0;
  std::uint64_t multiply_adds = 0;
};

/// Random-projection HW-module: stores the rows of T R plus the raw book,
/// which is needed to fill new columns when R is augmented.
class RpModule {
 public:
  explicit RpModule(std::size_t dim) : raw_(dim) {}

  /// Appends normalize(t) and its projection t R. No augmentation.
  void append(const Vector& t, const RpProjection& proj);
  /// Back-fills one new projection column from the raw templates.
  void add_column(const Vector& column);

  /// P over projected rows dotted with R^T x / ||x||.
  /// Throws EmptyModule, ZeroVector, DimensionMismatch.
  double query(const Vector& x, const RpProjection& proj, Pooling p) const;

  const TemplateBook& raw() const { return raw_; }
  std::span<const Vector> projected_rows() const { return projected_; }
  Matrix projected() const;
  std::size_t size() const { return raw_.size(); }
  std::size_t dim() const { return raw_.dim(); }

  const RpOpCount& ops() const { return ops_; }
  void reset_ops() { ops_ = {}; }

  /// Used by snapshot decoding.
  void restore_row(Vector raw_template, Vector projected_row);

 private:
  TemplateBook raw_;
  std::vector<Vector> projected_;
  RpOpCount ops_;
};

/// INSERT for modules sharing one projection: stores t in sharing[k]. If the
/// policy fires for the post-insert item count, the projection is first
/// extended and every module in `sharing` gains the new column.
/// Throws DimensionExhausted (nothing is inserted), ZeroVector,
/// DimensionMismatch, UnknownModule.
void rp_insert(std::span<RpModule> sharing, std::size_t k, RpProjection& proj,
               const Vector& t, const AugmentPolicy& policy);

}  // namespace hwarch

#endif  // HWARCH_RP_HPP_
