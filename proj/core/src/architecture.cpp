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
#include "hwarch/architecture.hpp"

#include <string>

#include "hwarch/error.hpp"

namespace hwarch {

std::size_t Stage::output_dim() const {
  std::size_t n = 0;
  for (const Branch& b : branches) n += b.layer.size();
  return n;
}

HwArchitecture& HwArchitecture::add_layer(HwLayer layer) {
  std::vector<Branch> branches;
  branches.push_back(Branch{std::move(layer), 0});
  return add_stage(std::move(branches));
}

HwArchitecture& HwArchitecture::add_stage(std::vector<Branch> branches) {
  if (branches.empty()) throw Error(Errc::kEmptyLayer, "a stage needs at least one branch");
  stages_.push_back(Stage{std::move(branches)});
  return *this;
}

std::vector<Signature> HwArchitecture::activations(const Vector& x) const {
  if (stages_.empty()) throw Error(Errc::kEmptyLayer, "architecture has no stages");
  require_dim(x, input_dim_, "architecture input");
  std::vector<Signature> out;
  out.reserve(stages_.size());
  const Vector* input = &x;
  for (std::size_t s = 0; s < stages_.size(); ++s) {
    const Stage& stage = stages_[s];
    const auto in_dim = static_cast<std::size_t>(input->size());
    Signature sig(static_cast<Eigen::Index>(stage.output_dim()));
    Eigen::Index at = 0;
    for (const Branch& b : stage.branches) {
      const std::size_t need = b.layer.input_dim();
      if (b.offset + need > in_dim || (stage.branches.size() == 1 && need != in_dim)) {
        throw Error(Errc::kDimensionMismatch,
                    "stage " + std::to_string(s) + ": branch expects input [" +
                        std::to_string(b.offset) + ", " + std::to_string(b.offset + need) +
                        ") but the stage input has length " + std::to_string(in_dim));
      }
      const Vector slice = input->segment(static_cast<Eigen::Index>(b.offset),
                                          static_cast<Eigen::Index>(need));
      const Signature part = b.layer.signature(slice);
      sig.segment(at, part.size()) = part;
      at += part.size();
    }
    out.push_back(std::move(sig));
    input = &out.back();
  }
  return out;
}

Signature HwArchitecture::feedforward(const Vector& x) const {
  return activations(x).back();
}

}  // namespace hwarch
