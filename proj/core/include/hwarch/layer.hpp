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
#ifndef HWARCH_LAYER_HPP_
#define HWARCH_LAYER_HPP_

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "hwarch/core.hpp"
#include "hwarch/rp.hpp"
#include "hwarch/svd.hpp"
#include "hwarch/wta.hpp"

namespace hwarch {

enum class Backend { kExact, kSvd, kRp, kWta };

std::string_view backend_name(Backend b);
/// Throws InvalidParams for unknown names.
Backend parse_backend(std::string_view name);

class ExactLayer {
 public:
  ExactLayer(std::size_t dim, Similarity f = {}, Pooling p = Pooling::kMax)
      : dim_(dim), similarity_(f), pooling_(p) {}

  std::size_t add_module();
  std::size_t add_module(TemplateBook book);
  void insert(std::size_t k, const Vector& t);
  double query(std::size_t k, const Vector& x) const;

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return modules_.size(); }
  Similarity similarity() const { return similarity_; }
  Pooling pooling() const { return pooling_; }
  const ExactModule& module(std::size_t k) const;

 private:
  std::size_t dim_;
  Similarity similarity_;
  Pooling pooling_;
  std::vector<ExactModule> modules_;
};

class SvdLayer {
 public:
  SvdLayer(std::size_t dim, std::size_t rank, Pooling p = Pooling::kMax)
      : dim_(dim), rank_(rank), pooling_(p) {}

  std::size_t add_module();
  std::size_t add_module(SvdModule module);
  void insert(std::size_t k, const Vector& t);
  double query(std::size_t k, const Vector& x) const;

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rank_; }
  std::size_t size() const { return modules_.size(); }
  Pooling pooling() const { return pooling_; }
  const SvdModule& module(std::size_t k) const;

 private:
  std::size_t dim_;
  std::size_t rank_;
  Pooling pooling_;
  std::vector<SvdModule> modules_;
};

/// Random-projection layer. By default every module shares one projection,
/// so augmenting R back-fills all of them; with shared == false module k owns
/// a projection seeded from (seed, k).
class RpLayer {
 public:
  struct Options {
    std::size_t initial_columns = 16;
    std::uint64_t seed = 0;
    bool shared = true;
    AugmentPolicy policy{};
    Pooling pooling = Pooling::kMax;
  };

  RpLayer(std::size_t dim, Options options);

  std::size_t add_module();
  void insert(std::size_t k, const Vector& t);
  double query(std::size_t k, const Vector& x) const;

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return modules_.size(); }
  Pooling pooling() const { return options_.pooling; }
  const Options& options() const { return options_; }
  const RpModule& module(std::size_t k) const;
  const RpProjection& projection_for(std::size_t k) const;
  std::span<const RpProjection> projections() const { return projections_; }

  /// Rebuilds a layer from stored state without drawing projections.
  /// Throws InvalidParams when the state is inconsistent.
  static RpLayer restore(std::size_t dim, Options options,
                         std::vector<RpProjection> projections,
                         std::vector<RpModule> modules);

 private:
  struct Restored {};
  RpLayer(std::size_t dim, Options options, Restored)
      : dim_(dim), options_(options) {}

  std::size_t dim_;
  Options options_;
  std::vector<RpProjection> projections_;
  std::vector<RpModule> modules_;
};

class LshLayer {
 public:
  LshLayer(WtaHashFamily family, Pooling p = Pooling::kMax)
      : family_(std::move(family)), pooling_(p) {}

  std::size_t add_module();
  void insert(std::size_t k, const Vector& t);
  /// kEmptySentinel when module k has no candidate for x.
  double query(std::size_t k, const Vector& x) const;

  std::size_t dim() const { return family_.dim(); }
  std::size_t size() const { return modules_.size(); }
  Pooling pooling() const { return pooling_; }
  const WtaHashFamily& family() const { return family_; }
  const LshModule& module(std::size_t k) const;

  /// Used by snapshot decoding.
  void restore(std::vector<LshModule> modules);

 private:
  WtaHashFamily family_;
  Pooling pooling_;
  std::vector<LshModule> modules_;
};

/// One HW-layer: K modules of a single backend fed by the same input.
class HwLayer {
 public:
  using Impl = std::variant<ExactLayer, SvdLayer, RpLayer, LshLayer>;

  HwLayer(ExactLayer layer) : impl_(std::move(layer)) {}
  HwLayer(SvdLayer layer) : impl_(std::move(layer)) {}
  HwLayer(RpLayer layer) : impl_(std::move(layer)) {}
  HwLayer(LshLayer layer) : impl_(std::move(layer)) {}

  Backend backend() const;
  std::size_t input_dim() const;
  /// Module count K, i.e. the signature length.
  std::size_t size() const;
  std::size_t module_size(std::size_t k) const;

  std::size_t add_module();
  /// INSERT into module k. Throws UnknownModule when k >= size().
  void insert(std::size_t k, const Vector& t);
  /// QUERY of module k.
  double query(std::size_t k, const Vector& x) const;

  /// Entry k is module k's QUERY of x. Throws EmptyLayer,
  /// DimensionMismatch, and whatever an empty module raises for its backend.
  Signature signature(const Vector& x) const;

  const Impl& impl() const { return impl_; }
  Impl& impl() { return impl_; }

 private:
  Impl impl_;
};

}  // namespace hwarch

#endif  // HWARCH_LAYER_HPP_
