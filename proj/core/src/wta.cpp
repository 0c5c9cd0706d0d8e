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
#include "hwarch/wta.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "hwarch/error.hpp"
#include "hwarch/rng.hpp"

namespace hwarch {

WtaHashFamily::WtaHashFamily(std::size_t dim, std::size_t num_hashes,
                             std::size_t bands, std::size_t window,
                             std::uint64_t seed)
    : WtaHashFamily(dim, num_hashes, bands, window, seed, true) {}

WtaHashFamily::WtaHashFamily(std::size_t dim, std::size_t num_hashes,
                             std::size_t bands, std::size_t window,
                             std::uint64_t seed, bool generate)
    : dim_(dim), num_hashes_(num_hashes), bands_(bands), window_(window), seed_(seed) {
  if (num_hashes == 0 || bands == 0) {
    throw Error(Errc::kInvalidParams, "WTA family needs L >= 1 and W >= 1");
  }
  if (window < 2 || window > dim) {
    throw Error(Errc::kInvalidParams, "WTA window K must satisfy 2 <= K <= d (K = " +
                                          std::to_string(window) + ", d = " +
                                          std::to_string(dim) + ")");
  }
  if (!generate) return;
  perms_.reserve(num_hashes * bands);
  for (std::size_t i = 0; i < num_hashes; ++i) {
    for (std::size_t b = 0; b < bands; ++b) {
      std::vector<std::uint32_t> p(dim);
      std::iota(p.begin(), p.end(), 0u);
      Rng rng(derive_seed(seed, {i, b}));
      for (std::size_t j = dim - 1; j > 0; --j) {
        std::swap(p[j], p[rng.below(j + 1)]);
      }
      perms_.push_back(std::move(p));
    }
  }
}

WtaHashFamily WtaHashFamily::restore(std::size_t dim, std::size_t num_hashes,
                                     std::size_t bands, std::size_t window,
                                     std::uint64_t seed,
                                     std::vector<std::vector<std::uint32_t>> perms) {
  WtaHashFamily f(dim, num_hashes, bands, window, seed, false);
  if (perms.size() != num_hashes * bands) {
    throw Error(Errc::kInvalidParams, "expected L * W permutations");
  }
  std::vector<char> seen(dim);
  for (const auto& p : perms) {
    if (p.size() != dim) throw Error(Errc::kInvalidParams, "permutation has wrong length");
    std::fill(seen.begin(), seen.end(), 0);
    for (std::uint32_t v : p) {
      if (v >= dim || seen[v]) throw Error(Errc::kInvalidParams, "not a permutation");
      seen[v] = 1;
    }
  }
  f.perms_ = std::move(perms);
  return f;
}

HashCode WtaHashFamily::hash(std::size_t i, const Vector& x) const {
  if (i >= num_hashes_) {
    throw Error(Errc::kInvalidParams, "hash index " + std::to_string(i) + " >= L");
  }
  require_dim(x, dim_, "hashed vector");
  HashCode code;
  code.codes.resize(bands_);
  for (std::size_t b = 0; b < bands_; ++b) {
    const auto& p = perms_[i * bands_ + b];
    std::uint32_t best = 0;
    double best_value = x[p[0]];
    for (std::uint32_t pos = 1; pos < window_; ++pos) {
      if (x[p[pos]] > best_value) {
        best_value = x[p[pos]];
        best = pos;
      }
    }
    code.codes[b] = best;
  }
  return code;
}

std::vector<HashCode> WtaHashFamily::hash_all(const Vector& x) const {
  require_dim(x, dim_, "hashed vector");
  std::vector<HashCode> codes;
  codes.reserve(num_hashes_);
  for (std::size_t i = 0; i < num_hashes_; ++i) codes.push_back(hash(i, x));
  return codes;
}

void LshModule::insert(const Vector& t, const WtaHashFamily& family) {
  require_dim(t, family.dim(), "template");
  require_dim(t, book_.dim(), "template");
  book_.insert(t);
  hashes_.push_back(family.hash_all(book_.templates().back()));
}

std::vector<std::size_t> LshModule::candidates(const Vector& x,
                                               const WtaHashFamily& family) const {
  require_dim(x, book_.dim(), "stimulus");
  // Hash the normalized stimulus, exactly as stored templates were hashed.
  return candidates(family.hash_all(normalize(x)));
}

std::vector<std::size_t> LshModule::candidates(
    const std::vector<HashCode>& query_codes) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < hashes_.size(); ++j) {
    const auto& stored = hashes_[j];
    const std::size_t n = std::min(stored.size(), query_codes.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (stored[i] == query_codes[i]) {
        out.push_back(j);
        break;
      }
    }
  }
  return out;
}

double LshModule::query(const Vector& x, const WtaHashFamily& family, Pooling p) const {
  const std::vector<std::size_t> cand = candidates(x, family);
  if (cand.empty()) return kEmptySentinel;
  const double xn = x.norm();
  std::vector<double> responses;
  responses.reserve(cand.size());
  for (std::size_t j : cand) responses.push_back(x.dot(book_[j]) / xn);
  return pool(responses, p);
}

void LshModule::restore_entry(Vector unit_template, std::vector<HashCode> codes) {
  book_.insert_normalized(std::move(unit_template));
  hashes_.push_back(std::move(codes));
}

}  // namespace hwarch
