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
#include "hwarch/layer.hpp"

#include <string>

#include "hwarch/error.hpp"
#include "hwarch/rng.hpp"

namespace hwarch {

namespace {

void check_module(std::size_t k, std::size_t size) {
  if (k >= size) {
    throw Error(Errc::kUnknownModule, "module " + std::to_string(k) +
                                          " does not exist (layer has " +
                                          std::to_string(size) + ")");
  }
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::kExact: return "exact";
    case Backend::kSvd: return "svd";
    case Backend::kRp: return "rp";
    case Backend::kWta: return "wta";
  }
  return "unknown";
}

Backend parse_backend(std::string_view name) {
  if (name == "exact") return Backend::kExact;
  if (name == "svd") return Backend::kSvd;
  if (name == "rp") return Backend::kRp;
  if (name == "wta") return Backend::kWta;
  throw Error(Errc::kInvalidParams, "unknown backend '" + std::string(name) + "'");
}

// ExactLayer

std::size_t ExactLayer::add_module() {
  modules_.emplace_back(dim_);
  return modules_.size() - 1;
}

std::size_t ExactLayer::add_module(TemplateBook book) {
  if (book.dim() != dim_) throw Error(Errc::kDimensionMismatch, "book dimension differs from layer");
  modules_.emplace_back(std::move(book));
  return modules_.size() - 1;
}

void ExactLayer::insert(std::size_t k, const Vector& t) {
  check_module(k, modules_.size());
  modules_[k].insert(t);
}

double ExactLayer::query(std::size_t k, const Vector& x) const {
  check_module(k, modules_.size());
  return modules_[k].query(x, similarity_, pooling_);
}

const ExactModule& ExactLayer::module(std::size_t k) const {
  check_module(k, modules_.size());
  return modules_[k];
}

// SvdLayer

std::size_t SvdLayer::add_module() {
  modules_.emplace_back(dim_, rank_);
  return modules_.size() - 1;
}

std::size_t SvdLayer::add_module(SvdModule module) {
  if (module.dim() != dim_) throw Error(Errc::kDimensionMismatch, "module dimension differs from layer");
  modules_.push_back(std::move(module));
  return modules_.size() - 1;
}

void SvdLayer::insert(std::size_t k, const Vector& t) {
  check_module(k, modules_.size());
  modules_[k].insert(t);
}

double SvdLayer::query(std::size_t k, const Vector& x) const {
  check_module(k, modules_.size());
  return modules_[k].query(x, pooling_);
}

const SvdModule& SvdLayer::module(std::size_t k) const {
  check_module(k, modules_.size());
  return modules_[k];
}

// RpLayer

RpLayer::RpLayer(std::size_t dim, Options options) : dim_(dim), options_(options) {
  if (options_.initial_columns > dim) {
    throw Error(Errc::kInvalidParams, "initial projection width exceeds d");
  }
  if (options_.shared) {
    projections_.emplace_back(dim, options_.initial_columns, options_.seed);
  }
}

std::size_t RpLayer::add_module() {
  if (!options_.shared) {
    projections_.emplace_back(dim_, options_.initial_columns,
                              derive_seed(options_.seed, {modules_.size()}));
  }
  modules_.emplace_back(dim_);
  return modules_.size() - 1;
}

void RpLayer::insert(std::size_t k, const Vector& t) {
  check_module(k, modules_.size());
  if (options_.shared) {
    rp_insert(modules_, k, projections_.front(), t, options_.policy);
  } else {
    rp_insert(std::span<RpModule>(&modules_[k], 1), 0, projections_[k], t,
              options_.policy);
  }
}

double RpLayer::query(std::size_t k, const Vector& x) const {
  check_module(k, modules_.size());
  return modules_[k].query(x, projection_for(k), options_.pooling);
}

const RpModule& RpLayer::module(std::size_t k) const {
  check_module(k, modules_.size());
  return modules_[k];
}

const RpProjection& RpLayer::projection_for(std::size_t k) const {
  return options_.shared ? projections_.front() : projections_.at(k);
}

RpLayer RpLayer::restore(std::size_t dim, Options options,
                         std::vector<RpProjection> projections,
                         std::vector<RpModule> modules) {
  const std::size_t expected = options.shared ? 1 : modules.size();
  if (projections.size() != expected) {
    throw Error(Errc::kInvalidParams, "projection count does not match sharing mode");
  }
  for (std::size_t k = 0; k < modules.size(); ++k) {
    const RpProjection& p = projections[options.shared ? 0 : k];
    if (p.dim() != dim || modules[k].dim() != dim) {
      throw Error(Errc::kInvalidParams, "restored RP state disagrees with the layer dimension");
    }
    for (const Vector& row : modules[k].projected_rows()) {
      if (static_cast<std::size_t>(row.size()) != p.size()) {
        throw Error(Errc::kInvalidParams, "RP module row does not match its projection");
      }
    }
  }
  RpLayer layer(dim, options, Restored{});
  layer.projections_ = std::move(projections);
  layer.modules_ = std::move(modules);
  return layer;
}

// LshLayer

std::size_t LshLayer::add_module() {
  modules_.emplace_back(family_.dim());
  return modules_.size() - 1;
}

void LshLayer::insert(std::size_t k, const Vector& t) {
  check_module(k, modules_.size());
  modules_[k].insert(t, family_);
}

double LshLayer::query(std::size_t k, const Vector& x) const {
  check_module(k, modules_.size());
  return modules_[k].query(x, family_, pooling_);
}

const LshModule& LshLayer::module(std::size_t k) const {
  check_module(k, modules_.size());
  return modules_[k];
}

void LshLayer::restore(std::vector<LshModule> modules) { modules_ = std::move(modules); }

// HwLayer

Backend HwLayer::backend() const {
  switch (impl_.index()) {
    case 0: return Backend::kExact;
    case 1: return Backend::kSvd;
    case 2: return Backend::kRp;
    default: return Backend::kWta;
  }
}

std::size_t HwLayer::input_dim() const {
  return std::visit([](const auto& l) { return l.dim(); }, impl_);
}

std::size_t HwLayer::size() const {
  return std::visit([](const auto& l) { return l.size(); }, impl_);
}

std::size_t HwLayer::module_size(std::size_t k) const {
  return std::visit([k](const auto& l) { return l.module(k).size(); }, impl_);
}

std::size_t HwLayer::add_module() {
  return std::visit([](auto& l) { return l.add_module(); }, impl_);
}

void HwLayer::insert(std::size_t k, const Vector& t) {
  std::visit([&](auto& l) { l.insert(k, t); }, impl_);
}

double HwLayer::query(std::size_t k, const Vector& x) const {
  return std::visit([&](const auto& l) { return l.query(k, x); }, impl_);
}

Signature HwLayer::signature(const Vector& x) const {
  const std::size_t k_count = size();
  if (k_count == 0) throw Error(Errc::kEmptyLayer, "signature of a layer with no modules");
  require_dim(x, input_dim(), "layer input");
  Signature sig(static_cast<Eigen::Index>(k_count));
  std::visit(
      [&](const auto& l) {
        for (std::size_t k = 0; k < k_count; ++k) {
          sig[static_cast<Eigen::Index>(k)] = l.query(k, x);
        }
      },
      impl_);
  return sig;
}

}  // namespace hwarch
