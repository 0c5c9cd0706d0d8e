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
#ifndef HWARCH_WTA_HPP_
#define HWARCH_WTA_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hwarch/core.hpp"

namespace hwarch {

/// W band codes of one hash function, each in [0, K).
struct HashCode {
  std::vector<std::uint32_t> codes;

  friend bool operator==(const HashCode&, const HashCode&) = default;
};

/// L winner-take-all hash functions with W bands each.
///
/// Band (i, b) owns a permutation of {0..d-1} generated by Fisher-Yates from
/// the stream derived from (seed, i, b). Its code is the position of the
/// largest of the first K permuted entries (ties to the lowest position).
/// Codes depend only on rank order, so any strictly increasing elementwise
/// transform of x hashes identically. Families that share a seed agree on
/// every (i, b) they both define.
class WtaHashFamily {
 public:
  WtaHashFamily(std::size_t dim, std::size_t num_hashes, std::size_t bands,
                std::size_t window, std::uint64_t seed);

  /// Rebuilds a family from stored permutations (validated).
  static WtaHashFamily restore(std::size_t dim, std::size_t num_hashes,
                               std::size_t bands, std::size_t window,
                               std::uint64_t seed,
                               std::vector<std::vector<std::uint32_t>> perms);

  /// Code of hash function i. Throws DimensionMismatch, InvalidParams (i >= L).
  HashCode hash(std::size_t i, const Vector& x) const;
  /// All L codes of x.
  std::vector<HashCode> hash_all(const Vector& x) const;

  std::size_t dim() const { return dim_; }
  std::size_t num_hashes() const { return num_hashes_; }
  std::size_t bands() const { return bands_; }
  std::size_t window() const { return window_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<std::uint32_t>& permutation(std::size_t i,
                                                std::size_t band) const {
    return perms_[i * bands_ + band];
  }

 private:
  WtaHashFamily(std::size_t dim, std::size_t num_hashes, std::size_t bands,
                std::size_t window, std::uint64_t seed, bool generate);

  std::size_t dim_;
  std::size_t num_hashes_;
  std::size_t bands_;
  std::size_t window_;
  std::uint64_t seed_;
  std::vector<std::vector<std::uint32_t>> perms_;
};

/// LSH-approximated HW-module: D = (T, H) with one L-tuple of codes per
/// template. QUERY scans the stored codes for the candidate set and pools
/// normalized dot products over the candidates only.
class LshModule {
 public:
  /// Returned by query when no stored template shares a code with x.
  static constexpr double kEmptySentinel = -1.0;

  explicit LshModule(std::size_t dim) : book_(dim) {}

  /// Throws ZeroVector, DimensionMismatch.
  void insert(const Vector& t, const WtaHashFamily& family);

  /// Sorted indices j with h_i(x) == h_i(t_j) for at least one i.
  std::vector<std::size_t> candidates(const Vector& x,
                                      const WtaHashFamily& family) const;
  std::vector<std::size_t> candidates(
      const std::vector<HashCode>& query_codes) const;

  /// Throws ZeroVector, DimensionMismatch.
  double query(const Vector& x, const WtaHashFamily& family, Pooling p) const;

  const TemplateBook& book() const { return book_; }
  const std::vector<std::vector<HashCode>>& hashes() const { return hashes_; }
  std::size_t size() const { return book_.size(); }
  std::size_t dim() const { return book_.dim(); }

  /// Used by snapshot decoding.
  void restore_entry(Vector unit_template, std::vector<HashCode> codes);

 private:
  TemplateBook book_;
  std::vector<std::vector<HashCode>> hashes_;
};

}  // namespace hwarch

#endif  // HWARCH_WTA_HPP_
