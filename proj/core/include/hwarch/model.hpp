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
#ifndef HWARCH_MODEL_HPP_
#define HWARCH_MODEL_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hwarch/layer.hpp"

namespace hwarch {

/// Items to store in one hippocampal module (one remembered individual).
struct Episode {
  std::vector<Vector> items;
  std::size_t module = 0;
};

/// Two-stage model: frozen cortical layers (cortex-1, optional cortex-2)
/// encode raw input, and a hippocampal layer stores the concatenated
/// cortical signatures of studied items, one module per episode.
///
/// Raw input layout is [cortex-1 slice | cortex-2 slice]. A slice that is
/// entirely zero is an absent modality: its cortical signature entries are
/// all zero instead of raising ZeroVector.
class CortexHippocampusModel {
 public:
  CortexHippocampusModel(HwLayer cortex1, std::optional<HwLayer> cortex2,
                         HwLayer hippocampus);

  std::size_t input_dim() const;
  /// Concatenated cortical signature of raw input x.
  Signature encode(const Vector& x) const;
  /// Cortex-1 signature only (the ventral-stream representation).
  Signature ventral_signature(const Vector& x) const;
  Signature hippocampal_signature(const Vector& probe) const;

  /// Encodes every item and inserts it into the episode's hippocampal module.
  /// A module id equal to the current module count allocates a new module;
  /// larger ids throw UnknownModule. Cortical layers are not modified.
  void study(std::span<const Episode> episodes);

  /// study() for items that are already cortical codes (see encode()).
  void study_encoded(std::span<const Episode> episodes);

  /// Argmax hippocampal module for the probe. Throws NotStudied when the
  /// hippocampus is empty.
  std::size_t recall(const Vector& probe) const;
  /// recall() for a probe that is already a cortical code.
  std::size_t recall_encoded(const Signature& code) const;
  Signature hippocampal_signature_encoded(const Signature& code) const;

  /// Cosine between the cortex-1 signatures of x1 and x2.
  double ventral_cosine(const Vector& x1, const Vector& x2) const;
  bool same_different(const Vector& x1, const Vector& x2, double theta) const;

  const HwLayer& cortex1() const { return cortex1_; }
  const std::optional<HwLayer>& cortex2() const { return cortex2_; }
  const HwLayer& hippocampus() const { return hippocampus_; }

 private:
  HwLayer cortex1_;
  std::optional<HwLayer> cortex2_;
  HwLayer hippocampus_;
};

struct ScoredPair {
  double score = 0.0;
  bool same = false;
};

/// Balanced accuracy of predicting "same" iff score >= theta.
double balanced_accuracy(std::span<const ScoredPair> pairs, double theta);

/// Threshold maximizing balanced accuracy. Within the lowest optimal interval
/// between consecutive distinct scores the midpoint is returned; if the
/// optimum calls every pair "same" the smallest score is returned, and if it
/// calls every pair "different" the next double above the largest score.
/// Throws DegenerateLabels when only one class is present.
double calibrate_threshold(std::span<const ScoredPair> pairs);

}  // namespace hwarch

#endif  // HWARCH_MODEL_HPP_
