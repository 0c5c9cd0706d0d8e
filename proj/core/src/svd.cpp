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
#include "hwarch/svd.hpp"

#include <algorithm>
#include <string>

#include "hwarch/error.hpp"

namespace hwarch {

SvdModule::SvdModule(std::size_t dim, std::size_t rank)
    : dim_(dim), rank_(rank), raw_(TemplateBook(dim)), basis_(dim, 0),
      projected_(0, 0) {
  if (rank == 0) throw Error(Errc::kInvalidParams, "SVD rank must be >= 1");
}

SvdModule SvdModule::from_book(const TemplateBook& book, std::size_t rank) {
  SvdModule m(book.dim(), rank);
  m.raw_ = book;
  if (!book.empty()) m.refactorize();
  return m;
}

SvdModule SvdModule::from_basis(const TemplateBook& book, Matrix basis) {
  if (static_cast<std::size_t>(basis.rows()) != book.dim() || basis.cols() == 0) {
    throw Error(Errc::kDimensionMismatch, "basis must be d x r with r >= 1");
  }
  const Matrix gram = basis.transpose() * basis;
  if (!gram.isIdentity(1e-8)) {
    throw Error(Errc::kInvalidParams, "basis columns are not orthonormal");
  }
  SvdModule m(book.dim(), static_cast<std::size_t>(basis.cols()));
  m.basis_ = std::move(basis);
  m.projected_ = book.empty() ? Matrix(0, m.basis_.cols())
                              : Matrix(book.matrix() * m.basis_);
  m.raw_.reset();
  return m;
}

SvdModule SvdModule::restore(std::size_t dim, std::size_t rank,
                             std::optional<TemplateBook> raw, Matrix basis,
                             Matrix projected, Vector singular_values) {
  if (static_cast<std::size_t>(basis.rows()) != dim ||
      projected.cols() != basis.cols() ||
      (raw && raw->size() != static_cast<std::size_t>(projected.rows()))) {
    throw Error(Errc::kDimensionMismatch, "inconsistent SVD module factors");
  }
  SvdModule m(dim, rank);
  m.raw_ = std::move(raw);
  m.basis_ = std::move(basis);
  m.projected_ = std::move(projected);
  m.singular_values_ = std::move(singular_values);
  return m;
}

void SvdModule::insert(const Vector& t) {
  if (!raw_) {
    throw Error(Errc::kRawUnavailable,
                "compressed SVD module keeps no raw templates to refactorize");
  }
  raw_->insert(t);
  refactorize();
}

void SvdModule::refactorize() {
  const Matrix t = raw_->matrix();
  Eigen::BDCSVD<Matrix> svd(t, Eigen::ComputeThinV);
  const auto keep = static_cast<Eigen::Index>(
      std::min({rank_, raw_->size(), dim_}));
  singular_values_ = svd.singularValues();
  basis_ = svd.matrixV().leftCols(keep);
  canonicalize_column_signs(basis_);
  projected_ = t * basis_;
}

double SvdModule::query(const Vector& x, Pooling p) const {
  if (projected_.rows() == 0) throw Error(Errc::kEmptyModule, "query of an empty SVD module");
  require_dim(x, dim_, "stimulus");
  const Vector y = basis_.transpose() * normalize(x);
  const Vector responses = projected_ * y;
  return pool(std::span<const double>(responses.data(),
                                      static_cast<std::size_t>(responses.size())),
              p);
}

void SvdModule::compress() { raw_.reset(); }

double SvdModule::reconstruction_error() const {
  if (!raw_) throw Error(Errc::kRawUnavailable, "reconstruction error needs raw templates");
  if (raw_->empty()) return 0.0;
  const Matrix t = raw_->matrix();
  return (t - projected_ * basis_.transpose()).squaredNorm();
}

}  // namespace hwarch
