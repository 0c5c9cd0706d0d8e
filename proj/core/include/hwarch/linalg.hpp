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

#ifndef HWARCH_LINALG_HPP_
#define HWARCH_LINALG_HPP_

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace hwarch {

/// Dense real feature vector (a stimulus x or a template t).
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Per-module signature: one entry per HW-module of the layer that produced it.
using Signature = Eigen::VectorXd;

void require_finite(const Vector& v, const char* what);
void require_dim(const Vector& v, std::size_t dim, const char* what);

/// Flips each column so that its first entry with |value| > tol is
/// nonnegative. Gives serialized bases a reproducible sign.
void canonicalize_column_signs(Matrix& m, double tol = 1e-12);

/// Orthonormalizes the columns in place with two passes of modified
/// Gram-Schmidt. Columns that become numerically dependent are left as zero
/// and counted in the return value.
std::size_t orthonormalize_columns(Matrix& m, double tol = 1e-10);

/// Stacks vectors of equal length as rows.
Matrix stack_rows(std::span<const Vector> rows, std::size_t cols);

/// Cosine of the angle between a and b; throws ZeroVector if either is zero.
double cosine(const Vector& a, const Vector& b);

}  // namespace hwarch

#endif  // HWARCH_LINALG_HPP_
