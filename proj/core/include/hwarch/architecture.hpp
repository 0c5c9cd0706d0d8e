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
#ifndef HWARCH_ARCHITECTURE_HPP_
#define HWARCH_ARCHITECTURE_HPP_

#include <cstddef>
#include <vector>

#include "hwarch/layer.hpp"

namespace hwarch {

/// A layer reading the slice [offset, offset + layer.input_dim()) of its
/// stage input.
struct Branch {
  HwLayer layer;
  std::size_t offset = 0;
};

/// Stage of an architecture. Its output is the concatenation of the branch
/// signatures in order.
struct Stage {
  std::vector<Branch> branches;

  std::size_t output_dim() const;
};

/// Stacked HW-layers: the signature emitted by stage l is the input of
/// stage l + 1, and QUERY is the cascade through every stage.
class HwArchitecture {
 public:
  explicit HwArchitecture(std::size_t input_dim) : input_dim_(input_dim) {}

  /// Appends a single-layer stage reading its whole input.
  HwArchitecture& add_layer(HwLayer layer);
  HwArchitecture& add_stage(std::vector<Branch> branches);

  /// Final-stage signature. Throws DimensionMismatch naming the stage whose
  /// input does not fit, EmptyLayer when there are no stages.
  Signature feedforward(const Vector& x) const;
  /// Output of every stage, input excluded.
  std::vector<Signature> activations(const Vector& x) const;

  std::size_t input_dim() const { return input_dim_; }
  std::size_t depth() const { return stages_.size(); }
  const Stage& stage(std::size_t i) const { return stages_.at(i); }
  Stage& stage(std::size_t i) { return stages_.at(i); }

 private:
  std::size_t input_dim_;
  std::vector<Stage> stages_;
};

}  // namespace hwarch

#endif  // HWARCH_ARCHITECTURE_HPP_
