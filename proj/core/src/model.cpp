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
#include "hwarch/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hwarch/error.hpp"

namespace hwarch {

CortexHippocampusModel::CortexHippocampusModel(HwLayer cortex1,
                                               std::optional<HwLayer> cortex2,
                                               HwLayer hippocampus)
    : cortex1_(std::move(cortex1)),
      cortex2_(std::move(cortex2)),
      hippocampus_(std::move(hippocampus)) {
  const std::size_t width = cortex1_.size() + (cortex2_ ? cortex2_->size() : 0);
  if (hippocampus_.input_dim() != width) {
    throw Error(Errc::kDimensionMismatch,
                "hippocampal input dimension " + std::to_string(hippocampus_.input_dim()) +
                    " != cortical signature length " + std::to_string(width));
  }
}

std::size_t CortexHippocampusModel::input_dim() const {
  return cortex1_.input_dim() + (cortex2_ ? cortex2_->input_dim() : 0);
}

namespace {

Signature encode_slice(const HwLayer& layer, const Vector& slice) {
  if (slice.isZero(0.0)) return Signature::Zero(static_cast<Eigen::Index>(layer.size()));
  return layer.signature(slice);
}

}  // namespace

Signature CortexHippocampusModel::encode(const Vector& x) const {
  require_dim(x, input_dim(), "raw input");
  if (x.isZero(0.0)) throw Error(Errc::kZeroVector, "raw input is the zero vector");
  const auto d1 = static_cast<Eigen::Index>(cortex1_.input_dim());
  const Signature s1 = encode_slice(cortex1_, x.head(d1));
  if (!cortex2_) return s1;
  const Signature s2 =
      encode_slice(*cortex2_, x.segment(d1, static_cast<Eigen::Index>(cortex2_->input_dim())));
  Signature out(s1.size() + s2.size());
  out << s1, s2;
  return out;
}

Signature CortexHippocampusModel::ventral_signature(const Vector& x) const {
  require_dim(x, input_dim(), "raw input");
  return cortex1_.signature(x.head(static_cast<Eigen::Index>(cortex1_.input_dim())));
}

Signature CortexHippocampusModel::hippocampal_signature(const Vector& probe) const {
  return hippocampal_signature_encoded(encode(probe));
}

Signature CortexHippocampusModel::hippocampal_signature_encoded(const Signature& code) const {
  const std::size_t k_count = hippocampus_.size();
  bool any = false;
  for (std::size_t k = 0; k < k_count && !any; ++k) any = hippocampus_.module_size(k) > 0;
  if (!any) throw Error(Errc::kNotStudied, "hippocampus holds no studied items");
  require_dim(code, hippocampus_.input_dim(), "cortical code");

  Signature sig(static_cast<Eigen::Index>(k_count));
  for (std::size_t k = 0; k < k_count; ++k) {
    // A module that was allocated but never filled can never win.
    sig[static_cast<Eigen::Index>(k)] = hippocampus_.module_size(k) == 0
                                            ? -std::numeric_limits<double>::infinity()
                                            : hippocampus_.query(k, code);
  }
  return sig;
}

void CortexHippocampusModel::study(std::span<const Episode> episodes) {
  std::vector<Episode> encoded;
  encoded.reserve(episodes.size());
  for (const Episode& e : episodes) {
    Episode& out = encoded.emplace_back();
    out.module = e.module;
    for (const Vector& item : e.items) {
      require_dim(item, input_dim(), "study item");
      out.items.push_back(encode(item));
    }
  }
  study_encoded(encoded);
}

void CortexHippocampusModel::study_encoded(std::span<const Episode> episodes) {
  // Validate everything first so a bad episode leaves the hippocampus untouched.
  std::size_t next = hippocampus_.size();
  for (const Episode& e : episodes) {
    if (e.module > next) {
      throw Error(Errc::kUnknownModule,
                  "episode targets module " + std::to_string(e.module) +
                      " but only " + std::to_string(next) + " exist");
    }
    if (e.module == next) ++next;
    for (const Signature& code : e.items) {
      require_dim(code, hippocampus_.input_dim(), "cortical code");
      if (code.isZero(0.0)) {
        throw Error(Errc::kZeroVector, "study item has an all-zero cortical signature");
      }
    }
  }
  for (const Episode& e : episodes) {
    if (e.module == hippocampus_.size()) hippocampus_.add_module();
    for (const Signature& code : e.items) hippocampus_.insert(e.module, code);
  }
}

std::size_t CortexHippocampusModel::recall(const Vector& probe) const {
  return classify(hippocampal_signature(probe));
}

std::size_t CortexHippocampusModel::recall_encoded(const Signature& code) const {
  return classify(hippocampal_signature_encoded(code));
}

double CortexHippocampusModel::ventral_cosine(const Vector& x1, const Vector& x2) const {
  return cosine(ventral_signature(x1), ventral_signature(x2));
}

bool CortexHippocampusModel::same_different(const Vector& x1, const Vector& x2,
                                            double theta) const {
  return ventral_cosine(x1, x2) >= theta;
}

double balanced_accuracy(std::span<const ScoredPair> pairs, double theta) {
  std::size_t same = 0, diff = 0, same_hit = 0, diff_hit = 0;
  for (const ScoredPair& p : pairs) {
    if (p.same) {
      ++same;
      if (p.score >= theta) ++same_hit;
    } else {
      ++diff;
      if (p.score < theta) ++diff_hit;
    }
  }
  if (same == 0 || diff == 0) {
    throw Error(Errc::kDegenerateLabels, "need both same and different pairs");
  }
  return 0.5 * (static_cast<double>(same_hit) / static_cast<double>(same) +
                static_cast<double>(diff_hit) / static_cast<double>(diff));
}

double calibrate_threshold(std::span<const ScoredPair> pairs) {
  std::vector<ScoredPair> sorted(pairs.begin(), pairs.end());
  for (const ScoredPair& p : sorted) {
    if (!std::isfinite(p.score)) throw Error(Errc::kNonFinite, "non-finite pair score");
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const ScoredPair& a, const ScoredPair& b) { return a.score < b.score; });
  const auto total_same = static_cast<std::size_t>(
      std::count_if(sorted.begin(), sorted.end(), [](const ScoredPair& p) { return p.same; }));
  const std::size_t total_diff = sorted.size() - total_same;
  if (total_same == 0 || total_diff == 0) {
    throw Error(Errc::kDegenerateLabels, "need both same and different pairs");
  }

  // Cut i places the threshold on the i-th distinct score: everything at or
  // above it is called "same".
  std::vector<double> distinct;
  std::size_t same_below = 0, diff_below = 0;
  double best = -1.0;
  std::size_t best_cut = 0;
  std::size_t i = 0;
  while (true) {
    const double ba =
        0.5 * (static_cast<double>(total_same - same_below) / static_cast<double>(total_same) +
               static_cast<double>(diff_below) / static_cast<double>(total_diff));
    if (ba > best) {
      best = ba;
      best_cut = distinct.size();
    }
    if (i == sorted.size()) break;
    const double value = sorted[i].score;
    distinct.push_back(value);
    for (; i < sorted.size() && sorted[i].score == value; ++i) {
      (sorted[i].same ? same_below : diff_below) += 1;
    }
  }

  if (best_cut == 0) return distinct.front();
  if (best_cut == distinct.size()) {
    return std::nextafter(distinct.back(), std::numeric_limits<double>::infinity());
  }
  return 0.5 * (distinct[best_cut - 1] + distinct[best_cut]);
}

}  // namespace hwarch
