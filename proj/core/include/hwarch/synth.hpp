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
#ifndef HWARCH_SYNTH_HPP_
#define HWARCH_SYNTH_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hwarch/core.hpp"

namespace hwarch {

/// (shift_j v)_i = v_{(i - j) mod d}: rotates coordinates forward by j.
Vector cyclic_shift(const Vector& v, std::size_t j);

/// Signed permutation g: (g v)_i = sign_i * v_{perm_i}.
struct SignedPermutation {
  std::vector<std::uint32_t> perm;
  std::vector<double> sign;

  Vector apply(const Vector& v) const;
};

/// Finite group acting on R^d, restricted to `degree` of its elements.
struct GroupSpec {
  enum class Kind { kCyclicShift, kSignedPermutation };

  Kind kind = Kind::kCyclicShift;
  /// Cyclic shifts use shifts 0..degree-1 (degree == d is the full orbit).
  /// Signed permutations draw `degree` elements from `seed`, the first one
  /// being the identity.
  std::size_t degree = 0;
  std::uint64_t seed = 0;

  static GroupSpec full_cyclic(std::size_t dim) {
    return {Kind::kCyclicShift, dim, 0};
  }
};

/// The elements selected by a signed-permutation GroupSpec.
std::vector<SignedPermutation> signed_permutations(std::size_t dim,
                                                   const GroupSpec& group);

/// {g normalize(base) : g in group}. Throws ZeroVector, InvalidParams.
TemplateBook generate_orbit(const Vector& base, const GroupSpec& group);

/// Unit vector with i.i.d. Gaussian entries.
Vector random_unit(std::size_t dim, std::uint64_t seed);

/// normalize(v + noise * g / sqrt(d)) with g standard normal; v itself when
/// noise == 0.
Vector add_noise(const Vector& v, double noise, std::uint64_t seed);

struct Identity {
  Vector base;
  /// The "video": frames[j] is the noisy shift_{shifts[j]} of base.
  std::vector<Vector> frames;
  std::vector<std::size_t> shifts;
};

struct IdentityParams {
  std::size_t n_train = 64;
  std::size_t n_test = 16;
  std::size_t dim = 256;
  /// Frames per video: shifts 0..orbit_subset-1; 0 means the full orbit.
  std::size_t orbit_subset = 0;
  double noise = 0.0;
  std::uint64_t seed = 0;
};

struct IdentityDataset {
  IdentityParams params;
  std::vector<Identity> train;
  std::vector<Identity> test;
};

/// Deterministic in params.seed. Throws InvalidParams.
IdentityDataset generate_identity_dataset(const IdentityParams& params);

struct AssociationParams {
  std::size_t n_individuals = 16;
  std::size_t dim_a = 64;
  std::size_t dim_b = 64;
  /// Study items per individual (each pairs one A-view with one B-view).
  std::size_t study_items = 8;
  /// Held-out probes per individual.
  std::size_t probes = 4;
  /// Typeface variants per name; position is the cyclic shift.
  std::size_t fonts = 2;
  double font_strength = 0.3;
  double noise = 0.0;
  std::uint64_t seed = 0;
};

struct Individual {
  Vector face;
  /// Unit-norm font variants of the name.
  std::vector<Vector> name_fonts;
  std::vector<Vector> study_items;
  /// Unseen A-shift concatenated with an unseen B-shift of a studied font.
  std::vector<Vector> heldout_probes;
  /// Held-out views with modality B zeroed.
  std::vector<Vector> face_only_probes;
  /// Held-out views with modality A zeroed.
  std::vector<Vector> name_only_probes;
};

struct AssociationDataset {
  AssociationParams params;
  std::vector<Individual> individuals;

  std::size_t dim() const { return params.dim_a + params.dim_b; }
};

/// Deterministic in params.seed. Throws InvalidParams (e.g. more study items
/// plus probes than available shifts).
AssociationDataset generate_association_dataset(const AssociationParams& params);

/// Font variants normalize(base + strength * g_f / sqrt(d)) for one word.
std::vector<Vector> font_variants(const Vector& base, std::size_t fonts,
                                  double strength, std::uint64_t seed);

/// Cortex-1 development books: full cyclic orbits of n random faces.
std::vector<TemplateBook> face_development_books(std::size_t n, std::size_t dim,
                                                 std::uint64_t seed);

/// Cortex-2 development books: for each of n words, the union of the full
/// cyclic orbits of its font variants.
std::vector<TemplateBook> word_development_books(std::size_t n, std::size_t dim,
                                                 std::size_t fonts,
                                                 double font_strength,
                                                 std::uint64_t seed);

/// Zero-mean Gaussian samples whose covariance has eigenvalue spectrum[j]
/// along column j of a random orthogonal matrix.
struct SpectralStream {
  std::vector<Vector> samples;
  Matrix axes;
};

SpectralStream spectral_stream(std::size_t n, const std::vector<double>& spectrum,
                               std::uint64_t seed);

/// Reference evaluation of P({f(x, t) : t in book}) with plain loops. Kept
/// free of the core implementation so tests can compare the two.
double oracle_exact_query(const TemplateBook& book, const Vector& x,
                          Similarity f, Pooling p);

}  // namespace hwarch

#endif  // HWARCH_SYNTH_HPP_
