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
#include "hwarch/linalg.hpp"

#include <cmath>
#include <string>

#include "hwarch/error.hpp"

namespace hwarch {

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) {
    throw Error(Errc::kNonFinite, std::string(what) + " has NaN or Inf entries");
  }
}

void require_dim(const Vector& v, std::size_t dim, const char* what) {
  if (static_cast<std::size_t>(v.size()) != dim) {
    throw Error(Errc::kDimensionMismatch,
                std::string(what) + " has dimension " + std::to_string(v.size()) +
                    ", expected " + std::to_string(dim));
  }
}

void canonicalize_column_signs(Matrix& m, double tol) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (std::abs(m(i, j)) > tol) {
        if (m(i, j) < 0.0) m.col(j) *= -1.0;
        break;
      }
    }
  }
}

std::size_t orthonormalize_columns(Matrix& m, double tol) {
  std::size_t dropped = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const double original = m.col(j).norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index k = 0; k < j; ++k) {
        m.col(j) -= m.col(k).dot(m.col(j)) * m.col(k);
      }
    }
    const double n = m.col(j).norm();
    if (n <= tol * std::max(original, 1.0)) {
      m.col(j).setZero();
      ++dropped;
    } else {
      m.col(j) /= n;
    }
  }
  return dropped;
}

Matrix stack_rows(std::span<const Vector> rows, std::size_t cols) {
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  }
  return m;
}

double cosine(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw Error(Errc::kDimensionMismatch, "cosine of vectors of different length");
  }
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) {
    throw Error(Errc::kZeroVector, "cosine with a zero vector is undefined");
  }
  return a.dot(b) / (na * nb);
}

}  // namespace hwarch
