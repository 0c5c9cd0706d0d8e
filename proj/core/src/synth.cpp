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
#include "hwarch/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hwarch/error.hpp"
#include "hwarch/rng.hpp"

namespace hwarch {

namespace {

// Stream tags keep the different kinds of draws independent under one seed.
enum : std::uint64_t {
  kTagIdentityBase = 0,
  kTagIdentityNoise = 1,
  kTagFace = 10,
  kTagName = 11,
  kTagFont = 12,
  kTagShiftsA = 13,
  kTagShiftsB = 14,
  kTagItemNoise = 15,
  kTagDevFace = 20,
  kTagDevWord = 21,
  kTagDevFont = 22,
};

std::vector<std::size_t> shuffled_range(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t j = n; j-- > 1;) std::swap(v[j], v[rng.below(j + 1)]);
  return v;
}

Vector concat(const Vector& a, const Vector& b) {
  Vector out(a.size() + b.size());
  out << a, b;
  return out;
}

}  // namespace

Vector cyclic_shift(const Vector& v, std::size_t j) {
  const auto d = static_cast<std::size_t>(v.size());
  Vector out(v.size());
  for (std::size_t i = 0; i < d; ++i) {
    out[static_cast<Eigen::Index>((i + j) % d)] = v[static_cast<Eigen::Index>(i)];
  }
  return out;
}

Vector SignedPermutation::apply(const Vector& v) const {
  if (static_cast<std::size_t>(v.size()) != perm.size()) {
    throw Error(Errc::kDimensionMismatch, "signed permutation of the wrong size");
  }
  Vector out(v.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = sign[i] * v[perm[i]];
  }
  return out;
}

std::vector<SignedPermutation> signed_permutations(std::size_t dim, const GroupSpec& group) {
  if (group.degree == 0) throw Error(Errc::kInvalidParams, "group degree must be >= 1");
  std::vector<SignedPermutation> out;
  out.reserve(group.degree);
  for (std::size_t e = 0; e < group.degree; ++e) {
    SignedPermutation g;
    g.perm.resize(dim);
    std::iota(g.perm.begin(), g.perm.end(), 0u);
    g.sign.assign(dim, 1.0);
    if (e > 0) {
      Rng rng(group.seed, e);
      for (std::size_t j = dim; j-- > 1;) std::swap(g.perm[j], g.perm[rng.below(j + 1)]);
      for (double& s : g.sign) s = (rng.next_u64() & 1U) ? -1.0 : 1.0;
    }
    out.push_back(std::move(g));
  }
  return out;
}

TemplateBook generate_orbit(const Vector& base, const GroupSpec& group) {
  const Vector unit = normalize(base);
  const auto dim = static_cast<std::size_t>(base.size());
  TemplateBook book(dim);
  switch (group.kind) {
    case GroupSpec::Kind::kCyclicShift:
      if (group.degree == 0 || group.degree > dim) {
        throw Error(Errc::kInvalidParams, "cyclic orbit degree must lie in [1, d], got " +
                                              std::to_string(group.degree));
      }
      // Shifts permute entries, so every element keeps the exact norm of unit.
      for (std::size_t j = 0; j < group.degree; ++j) {
        book.insert_normalized(cyclic_shift(unit, j));
      }
      break;
    case GroupSpec::Kind::kSignedPermutation:
      for (const SignedPermutation& g : signed_permutations(dim, group)) {
        book.insert_normalized(g.apply(unit));
      }
      break;
  }
  return book;
}

Vector random_unit(std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw Error(Errc::kInvalidParams, "dimension must be >= 1");
  Rng rng(seed);
  Vector v(static_cast<Eigen::Index>(dim));
  do {
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.normal();
  } while (v.squaredNorm() == 0.0);
  return v / v.norm();
}

Vector add_noise(const Vector& v, double noise, std::uint64_t seed) {
  if (noise == 0.0) return v;
  Rng rng(seed);
  const double scale = noise / std::sqrt(static_cast<double>(v.size()));
  Vector out = v;
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] += scale * rng.normal();
  return normalize(out);
}

IdentityDataset generate_identity_dataset(const IdentityParams& p) {
  if (p.n_train == 0 || p.n_test == 0) {
    throw Error(Errc::kInvalidParams, "need at least one train and one test identity");
  }
  if (p.dim == 0) throw Error(Errc::kInvalidParams, "dimension must be >= 1");
  if (p.orbit_subset > p.dim) {
    throw Error(Errc::kInvalidParams, "orbit subset larger than the cyclic group");
  }
  if (!(p.noise >= 0.0) || !std::isfinite(p.noise)) {
    throw Error(Errc::kInvalidParams, "noise must be finite and >= 0");
  }
  const std::size_t degree = p.orbit_subset == 0 ? p.dim : p.orbit_subset;

  IdentityDataset ds;
  ds.params = p;
  const auto make = [&](std::size_t index) {
    Identity id;
    id.base = random_unit(p.dim, derive_seed(p.seed, {kTagIdentityBase, index}));
    for (std::size_t j = 0; j < degree; ++j) {
      id.frames.push_back(add_noise(cyclic_shift(id.base, j), p.noise,
                                    derive_seed(p.seed, {kTagIdentityNoise, index, j})));
      id.shifts.push_back(j);
    }
    return id;
  };
  for (std::size_t i = 0; i < p.n_train; ++i) ds.train.push_back(make(i));
  for (std::size_t i = 0; i < p.n_test; ++i) ds.test.push_back(make(p.n_train + i));
  return ds;
}

std::vector<Vector> font_variants(const Vector& base, std::size_t fonts, double strength,
                                  std::uint64_t seed) {
  std::vector<Vector> out;
  out.reserve(fonts);
  for (std::size_t f = 0; f < fonts; ++f) {
    out.push_back(add_noise(base, strength, derive_seed(seed, {f})));
  }
  return out;
}

AssociationDataset generate_association_dataset(const AssociationParams& p) {
  if (p.n_individuals == 0 || p.dim_a == 0 || p.dim_b == 0 || p.study_items == 0 ||
      p.fonts == 0) {
    throw Error(Errc::kInvalidParams,
                "need >= 1 individual, study item, font, and nonzero modality dimensions");
  }
  if (p.study_items + p.probes > std::min(p.dim_a, p.dim_b)) {
    throw Error(Errc::kInvalidParams,
                "study items plus probes exceed the number of distinct shifts");
  }
  if (!(p.noise >= 0.0) || !std::isfinite(p.noise) || !(p.font_strength >= 0.0)) {
    throw Error(Errc::kInvalidParams, "noise and font strength must be finite and >= 0");
  }

  AssociationDataset ds;
  ds.params = p;
  const Vector zero_a = Vector::Zero(static_cast<Eigen::Index>(p.dim_a));
  const Vector zero_b = Vector::Zero(static_cast<Eigen::Index>(p.dim_b));
  const std::size_t studied_fonts = std::min(p.fonts, p.study_items);

  for (std::size_t i = 0; i < p.n_individuals; ++i) {
    Individual ind;
    ind.face = random_unit(p.dim_a, derive_seed(p.seed, {kTagFace, i}));
    const Vector name = random_unit(p.dim_b, derive_seed(p.seed, {kTagName, i}));
    ind.name_fonts =
        font_variants(name, p.fonts, p.font_strength, derive_seed(p.seed, {kTagFont, i}));
    const auto shifts_a = shuffled_range(p.dim_a, derive_seed(p.seed, {kTagShiftsA, i}));
    const auto shifts_b = shuffled_range(p.dim_b, derive_seed(p.seed, {kTagShiftsB, i}));

    const auto view_a = [&](std::size_t slot) {
      return add_noise(cyclic_shift(ind.face, shifts_a[slot]), p.noise,
                       derive_seed(p.seed, {kTagItemNoise, i, 0, slot}));
    };
    const auto view_b = [&](std::size_t slot, std::size_t font) {
      return add_noise(cyclic_shift(ind.name_fonts[font], shifts_b[slot]), p.noise,
                       derive_seed(p.seed, {kTagItemNoise, i, 1, slot}));
    };

    for (std::size_t s = 0; s < p.study_items; ++s) {
      ind.study_items.push_back(concat(view_a(s), view_b(s, s % p.fonts)));
    }
    for (std::size_t q = 0; q < p.probes; ++q) {
      const std::size_t slot = p.study_items + q;
      const Vector a = view_a(slot);
      const Vector b = view_b(slot, q % studied_fonts);
      ind.heldout_probes.push_back(concat(a, b));
      ind.face_only_probes.push_back(concat(a, zero_b));
      ind.name_only_probes.push_back(concat(zero_a, b));
    }
    ds.individuals.push_back(std::move(ind));
  }
  return ds;
}

std::vector<TemplateBook> face_development_books(std::size_t n, std::size_t dim,
                                                 std::uint64_t seed) {
  std::vector<TemplateBook> books;
  books.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    books.push_back(generate_orbit(random_unit(dim, derive_seed(seed, {kTagDevFace, i})),
                                   GroupSpec::full_cyclic(dim)));
  }
  return books;
}

std::vector<TemplateBook> word_development_books(std::size_t n, std::size_t dim,
                                                 std::size_t fonts, double font_strength,
                                                 std::uint64_t seed) {
  if (fonts == 0) throw Error(Errc::kInvalidParams, "need at least one font");
  std::vector<TemplateBook> books;
  books.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vector word = random_unit(dim, derive_seed(seed, {kTagDevWord, i}));
    TemplateBook book(dim);
    for (const Vector& variant :
         font_variants(word, fonts, font_strength, derive_seed(seed, {kTagDevFont, i}))) {
      const TemplateBook orbit = generate_orbit(variant, GroupSpec::full_cyclic(dim));
      for (const Vector& t : orbit.templates()) book.insert_normalized(t);
    }
    books.push_back(std::move(book));
  }
  return books;
}

SpectralStream spectral_stream(std::size_t n, const std::vector<double>& spectrum,
                               std::uint64_t seed) {
  if (spectrum.empty()) throw Error(Errc::kInvalidParams, "spectrum must be nonempty");
  for (double v : spectrum) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(Errc::kInvalidParams, "spectrum entries must be finite and >= 0");
    }
  }
  const auto d = static_cast<Eigen::Index>(spectrum.size());
  SpectralStream out;
  out.axes.resize(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    Rng rng(derive_seed(seed, {1, static_cast<std::uint64_t>(j)}));
    for (Eigen::Index i = 0; i < d; ++i) out.axes(i, j) = rng.normal();
  }
  orthonormalize_columns(out.axes, 1e-12);
  Vector scale(d);
  for (Eigen::Index j = 0; j < d; ++j) scale[j] = std::sqrt(spectrum[static_cast<std::size_t>(j)]);
  out.samples.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    Rng rng(derive_seed(seed, {2, k}));
    Vector g(d);
    for (Eigen::Index i = 0; i < d; ++i) g[i] = rng.normal();
    out.samples.push_back(out.axes * g.cwiseProduct(scale));
  }
  return out;
}

double oracle_exact_query(const TemplateBook& book, const Vector& x, Similarity f,
                          Pooling p) {
  if (book.size() == 0) throw Error(Errc::kEmptyModule, "oracle: empty book");
  const std::size_t d = book.dim();
  if (static_cast<std::size_t>(x.size()) != d) {
    throw Error(Errc::kDimensionMismatch, "oracle: stimulus length differs from book");
  }
  const double* xs = x.data();
  double sq = 0.0;
  for (std::size_t i = 0; i < d; ++i) sq += xs[i] * xs[i];
  if (sq == 0.0) throw Error(Errc::kZeroVector, "oracle: zero stimulus");
  const double xnorm = std::sqrt(sq);

  double acc = p == Pooling::kMax ? -std::numeric_limits<double>::infinity() : 0.0;
  for (std::size_t k = 0; k < book.size(); ++k) {
    const double* ts = book[k].data();
    double dot = 0.0;
    for (std::size_t i = 0; i < d; ++i) dot += xs[i] * ts[i];
    const double response = f.kind == Similarity::Kind::kNormalizedDot
                                ? dot / xnorm
                                : 1.0 / (1.0 + std::exp(-f.gain * dot));
    acc = p == Pooling::kMax ? std::max(acc, response) : acc + response;
  }
  return acc;
}

}  // namespace hwarch
