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
#ifndef HWARCH_EXPERIMENTS_HPP_
#define HWARCH_EXPERIMENTS_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hwarch/architecture.hpp"
#include "hwarch/config.hpp"
#include "hwarch/model.hpp"
#include "hwarch/results.hpp"
#include "hwarch/synth.hpp"

namespace hwarch {

/// Dispatches on config.experiment. Throws ConfigError.
RunResult run_experiment(const ExperimentConfig& config);

RunResult run_ventral_experiment(const ExperimentConfig& config);
RunResult run_mtl_experiment(const ExperimentConfig& config);
RunResult run_backend_equivalence(const ExperimentConfig& config);
RunResult run_oja_demo(const ExperimentConfig& config);

/// Seed of repetition rep; every random choice of the repetition derives
/// from it.
std::uint64_t rep_seed(const ExperimentConfig& config, std::size_t rep);

/// Re-runs the experiment described by config and returns the value of the
/// record matching r's metric, rep and params. Throws InvalidParams when no
/// such record is produced.
double reproduce_record(const ExperimentConfig& config, const ResultRecord& r);

// Building blocks, exposed so models can be saved and replayed.

/// Cortical layer with one module per book (exact, SVD or Oja-trained SVD).
HwLayer build_cortex_layer(const ExperimentConfig& config, const std::vector<TemplateBook>& books,
                           std::uint64_t seed);

/// (identity, frame) on both sides of a same/different pair.
struct FramePair {
  std::size_t id_a = 0, frame_a = 0, id_b = 0, frame_b = 0;
  bool same = false;
};

struct VentralRep {
  std::uint64_t seed = 0;
  IdentityDataset data;
  /// Held-out calibration pool (empty when calibrating on train identities).
  std::vector<Identity> calibration;
  bool calibrate_on_train = false;
  /// Cortex-1 only: one module per training identity.
  HwArchitecture cortex{0};
  std::vector<FramePair> calibration_pairs;
  std::vector<FramePair> test_pairs;

  const std::vector<Identity>& calibration_identities() const {
    return calibrate_on_train ? data.train : calibration;
  }
};

VentralRep prepare_ventral(const ExperimentConfig& config, std::size_t rep);

struct VentralScore {
  double threshold = 0.0;
  double calibration_accuracy = 0.0;
  double test_accuracy = 0.0;
};

/// Signature-cosine same/different decision with cortex: the threshold is
/// calibrated on the calibration pairs; accuracies are balanced.
VentralScore evaluate_ventral(const VentralRep& rep, const HwArchitecture& cortex);

struct MtlRep {
  std::uint64_t seed = 0;
  AssociationDataset data;
  HwLayer cortex1;
  HwLayer cortex2;
};

MtlRep prepare_mtl(const ExperimentConfig& config, std::size_t rep);

/// One sweep cell of the hippocampus.
struct HippocampusCell {
  Backend backend = Backend::kWta;
  WtaParams wta{};
};

/// Hippocampus cells of an mtl run: the configured sweep, followed by the
/// exact reference when the configured backend is approximate.
std::vector<HippocampusCell> mtl_cells(const ExperimentConfig& config);

/// Cortex of rep with an empty hippocampus for cell.
CortexHippocampusModel build_mtl_model(const ExperimentConfig& config, const MtlRep& rep,
                                       const HippocampusCell& cell);

/// Studies individuals 0..study_size-1, one module each.
void study_individuals(CortexHippocampusModel& model, const AssociationDataset& data,
                       std::size_t study_size);

struct MtlRecall {
  double studied = 0.0;
  double heldout = 0.0;
  double face_only = 0.0;
  double name_only = 0.0;
};

/// Recall@1 of each probe kind over individuals 0..study_size-1.
MtlRecall evaluate_recall(const CortexHippocampusModel& model, const AssociationDataset& data,
                          std::size_t study_size);

/// Re-evaluates a stored cortex on repetition rep of a ventral config. The
/// records match the hw_* records of that repetition.
std::vector<ResultRecord> replay_ventral(const ExperimentConfig& config, std::size_t rep,
                                         const HwArchitecture& cortex);

/// Re-evaluates a stored, studied model on repetition rep of an mtl config;
/// the study size is the number of hippocampal modules.
std::vector<ResultRecord> replay_mtl(const ExperimentConfig& config, std::size_t rep,
                                     const CortexHippocampusModel& model);

}  // namespace hwarch

#endif  // HWARCH_EXPERIMENTS_HPP_
