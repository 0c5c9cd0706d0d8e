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

#ifndef HWARCH_RNG_HPP_
#define HWARCH_RNG_HPP_

#include <cstdint>
#include <initializer_list>

namespace hwarch {

/// Counter-based generator (SplitMix64 finalizer over a Weyl sequence).
///
/// Every sample is a pure function of (key, counter), and the normal draws use
/// our own Box-Muller transform, so projections, permutations and datasets are
/// bit-identical across standard libraries. std::normal_distribution does not
/// give that guarantee.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

  std::uint64_t next_u64() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Uniform integer in [0, bound); bound must be > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;
  double normal() noexcept;

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t mix64(std::uint64_t x) noexcept;

/// Derives an independent child seed from a parent seed and a path of indices.
std::uint64_t derive_seed(std::uint64_t seed,
                          std::initializer_list<std::uint64_t> path) noexcept;

}  // namespace hwarch

#endif  // HWARCH_RNG_HPP_
