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
#ifndef HWARCH_OJA_HPP_
#define HWARCH_OJA_HPP_

#include <cstddef>
#include <cstdint>
#include <span>

#include "hwarch/linalg.hpp"

namespace hwarch {

/// eta_t = eta0 / (1 + t / tau).
struct OjaSchedule {
  double eta0 = 0.1;
  double tau = 1000.0;

  double rate(std::uint64_t step) const {
    return eta0 / (1.0 + static_cast<double>(step) / tau);
  }
};

/// Online estimate of the top principal directions of a data stream.
///
/// One component follows Oja's rule, w <- w + eta y (x - y w) with y = w.x.
/// Several components use Sanger's generalized Hebbian rule, in which
/// component j learns from x with the reconstructions of components 0..j
/// subtracted.
class OjaLearner {
 public:
  OjaLearner(Matrix initial_weights, OjaSchedule schedule = {});

  /// Random unit-norm initial columns drawn from seed.
  static OjaLearner random(std::size_t dim, std::size_t components,
                           std::uint64_t seed, OjaSchedule schedule = {});

  /// One learning step. Throws DimensionMismatch, NonFinite.
  void update(const Vector& x);

  const Matrix& weights() const { return weights_; }
  std::size_t dim() const { return static_cast<std::size_t>(weights_.rows()); }
  std::size_t components() const {
    return static_cast<std::size_t>(weights_.cols());
  }
  std::uint64_t steps() const { return steps_; }
  const OjaSchedule& schedule() const { return schedule_; }

 private:
  Matrix weights_;
  OjaSchedule schedule_;
  std::uint64_t steps_ = 0;
};

/// Learns a d x components basis by sequential deflation: component j runs
/// single-unit Oja steps for `epochs` passes over the stream with the
/// projections onto components 0..j-1 removed. The result is orthonormalized
/// and sign-canonicalized.
///
/// Throws EmptyStream, InvalidParams (components == 0 or > d),
/// DimensionMismatch.
Matrix oja_train(std::span<const Vector> stream, std::size_t components,
                 std::size_t epochs, OjaSchedule schedule, std::uint64_t seed);

}  // namespace hwarch

#endif  // HWARCH_OJA_HPP_
