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

#include "oracles.hpp"
#include "test_util.hpp"

namespace {

using hwarch::testing::gaussian;

TEST(Oracles, JacobiSvdReconstructs) {
  Eigen::MatrixXd a(7, 5);
  for (Eigen::Index i = 0; i < a.rows(); ++i) a.row(i) = gaussian(5, 100 + i).transpose();
  const oracle::Svd svd = oracle::jacobi_svd(oracle::to_dense(a));
  const Eigen::MatrixXd v = oracle::from_dense(svd.v);
  EXPECT_TRUE((v.transpose() * v).isIdentity(1e-12));
  const Eigen::MatrixXd av = a * v;
  for (Eigen::Index j = 0; j < 5; ++j) {
    EXPECT_NEAR(av.col(j).norm(), svd.singular[j], 1e-12);
    for (Eigen::Index k = j + 1; k < 5; ++k) EXPECT_NEAR(av.col(j).dot(av.col(k)), 0.0, 1e-12);
  }
  EXPECT_TRUE(std::is_sorted(svd.singular.rbegin(), svd.singular.rend()));
}

TEST(Oracles, JacobiEigenDiagonalizes) {
  Eigen::MatrixXd b(6, 6);
  for (Eigen::Index i = 0; i < 6; ++i) b.row(i) = gaussian(6, 200 + i).transpose();
  const Eigen::MatrixXd s = b * b.transpose();
  const oracle::Eigen_ e = oracle::jacobi_eigen(oracle::to_dense(s));
  const Eigen::MatrixXd v = oracle::from_dense(e.vectors);
  for (Eigen::Index j = 0; j < 6; ++j) {
    EXPECT_LT((s * v.col(j) - e.values[j] * v.col(j)).norm(), 1e-10);
  }
}

}  // namespace
