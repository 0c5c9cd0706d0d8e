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
#ifndef HWARCH_SVD_HPP_
#define HWARCH_SVD_HPP_

#include <cstddef>
#include <optional>

#include "hwarch/core.hpp"

namespace hwarch {

/// Rank-r SVD approximation of an HW-module.
///
/// Each S-cell stores one row of T V, where V holds the top right singular
/// vectors of the template matrix T. QUERY pools (T V)(V^T x / ||x||).
/// With the raw book retained, INSERT appends a row and refactorizes, which
/// keeps the module the best rank-r approximation. A compressed module has no
/// raw book and only supports QUERY; its basis is typically learned with
/// oja_train.
class SvdModule {
 public:
  SvdModule(std::size_t dim, std::size_t rank);

  static SvdModule from_book(const TemplateBook& book, std::size_t rank);
  /// Compressed module over an externally learned orthonormal basis (d x r).
  static SvdModule from_basis(const TemplateBook& book, Matrix basis);
  /// Rebuilds a module from stored factors without refactorizing.
  static SvdModule restore(std::size_t dim, std::size_t rank,
                           std::optional<TemplateBook> raw, Matrix basis,
                           Matrix projected, Vector singular_values);

  /// Throws RawUnavailable on a compressed module, ZeroVector, DimensionMismatch.
  void insert(const Vector& t);
  /// Throws EmptyModule, ZeroVector, DimensionMismatch.
  double query(const Vector& x, Pooling p) const;

  /// Drops the raw templates; INSERT is unavailable afterwards.
  void compress();

  bool retains_raw() const { return raw_.has_value(); }
  const std::optional<TemplateBook>& raw() const { return raw_; }
  std::size_t dim() const { return dim_; }
  /// Requested rank r.
  std::size_t rank() const { return rank_; }
  /// min(r, n, d): number of basis columns actually held.
  std::size_t effective_rank() const {
    return static_cast<std::size_t>(basis_.cols());
  }
  std::size_t size() const { return static_cast<std::size_t>(projected_.rows()); }

  /// d x r, orthonormal columns, first nonzero entry of each column >= 0.
  const Matrix& basis() const { return basis_; }
  /// n x r, rows are the stored templates projected onto the basis.
  const Matrix& projected() const { return projected_; }
  /// Full spectrum of the last factorization (empty for from_basis modules).
  const Vector& singular_values() const { return singular_values_; }

  /// ||T - T V V^T||_F^2. Requires the raw book.
  double reconstruction_error() const;

 private:
  void refactorize();

  std::size_t dim_;
  std::size_t rank_;
  std::optional<TemplateBook> raw_;
  Matrix basis_;
  Matrix projected_;
  Vector singular_values_;
};

}  // namespace hwarch

#endif  // HWARCH_SVD_HPP_
