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
#ifndef HWARCH_CONFIG_HPP_
#define HWARCH_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hwarch/core.hpp"
#include "hwarch/layer.hpp"
#include "hwarch/rp.hpp"

namespace hwarch {

enum class ExperimentKind { kVentral, kMtl, kEquiv, kOjaDemo };

std::string_view experiment_name(ExperimentKind k);
/// Throws ConfigError.
ExperimentKind parse_experiment(std::string_view name);

enum class OutputFormat { kCsv, kJson, kBoth };

std::string_view format_name(OutputFormat f);
/// Throws ConfigError.
OutputFormat parse_format(std::string_view name);

struct WtaParams {
  std::size_t window = 4;  // K
  std::size_t bands = 2;   // W
  std::size_t hashes = 4;  // L

  friend bool operator==(const WtaParams&, const WtaParams&) = default;
};

struct CortexConfig {
  enum class Learner { kSvd, kOja };

  Backend backend = Backend::kSvd;  // exact or svd
  std::size_t rank = 8;
  Learner learner = Learner::kSvd;
  std::size_t oja_epochs = 20;

  friend bool operator==(const CortexConfig&, const CortexConfig&) = default;
};

struct RpConfig {
  std::size_t initial_columns = 16;
  bool shared = true;
  AugmentPolicy policy{};

  friend bool operator==(const RpConfig& a, const RpConfig& b) {
    return a.initial_columns == b.initial_columns && a.shared == b.shared &&
           a.policy.kind == b.policy.kind && a.policy.eps == b.policy.eps &&
           a.policy.c == b.policy.c;
  }
};

struct HippocampusConfig {
  Backend backend = Backend::kWta;  // exact, rp or wta
  RpConfig rp{};
  /// One hippocampus per entry (the WTA parameter sweep).
  std::vector<WtaParams> wta{{4, 2, 4}, {8, 3, 4}, {2, 1, 32}};

  friend bool operator==(const HippocampusConfig&, const HippocampusConfig&) = default;
};

struct VentralConfig {
  /// Identities whose pairs calibrate the threshold: a held-out pool
  /// disjoint from the cortex and test identities, or the cortex (train)
  /// identities themselves.
  enum class Calibration { kHeldout, kTrain };

  std::size_t n_train = 64;
  std::size_t n_test = 16;
  Calibration calibration = Calibration::kHeldout;
  /// Size of the held-out calibration pool.
  std::size_t n_calibration = 16;
  std::size_t dim = 256;
  std::size_t orbit_subset = 0;
  double noise = 0.6;
  /// Same pairs and different pairs drawn per split.
  std::size_t pairs = 200;

  friend bool operator==(const VentralConfig&, const VentralConfig&) = default;
};

struct MtlConfig {
  std::size_t dim_a = 64;
  std::size_t dim_b = 64;
  std::size_t study_items = 8;
  std::size_t probes = 4;
  std::size_t fonts = 2;
  double font_strength = 0.3;
  double noise = 0.8;
  std::size_t n_dev_faces = 32;
  std::size_t n_dev_names = 32;
  std::vector<std::size_t> study_sizes{4, 8, 16, 32, 64};

  friend bool operator==(const MtlConfig&, const MtlConfig&) = default;
};

struct EquivConfig {
  std::size_t dim = 32;
  std::size_t templates = 20;
  std::size_t queries = 50;
  std::size_t instances = 5;
  std::vector<std::size_t> ranks{1, 4, 8, 20};
  std::vector<std::size_t> projections{8, 16, 32};
  std::vector<WtaParams> wta{{2, 1, 32}, {4, 2, 8}, {8, 3, 4}};
  /// Backends whose rows are reported.
  std::vector<Backend> backends{Backend::kExact, Backend::kSvd, Backend::kRp, Backend::kWta};

  friend bool operator==(const EquivConfig&, const EquivConfig&) = default;
};

struct OjaDemoConfig {
  std::size_t dim = 16;
  std::size_t samples = 1000;
  std::size_t components = 3;
  std::size_t epochs = 50;
  /// Ratio between consecutive leading eigenvalues, and between the last
  /// leading one and the flat tail.
  double eigengap = 2.0;

  friend bool operator==(const OjaDemoConfig&, const OjaDemoConfig&) = default;
};

struct OutputConfig {
  std::string dir = ".";
  OutputFormat format = OutputFormat::kBoth;

  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::kVentral;
  std::uint64_t seed = 0;
  std::size_t reps = 1;
  Pooling pooling = Pooling::kMax;
  Similarity similarity{};
  CortexConfig cortex{};
  HippocampusConfig hippocampus{};
  VentralConfig ventral{};
  MtlConfig mtl{};
  EquivConfig equiv{};
  OjaDemoConfig oja{};
  OutputConfig output{};

  friend bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
    return a.experiment == b.experiment && a.seed == b.seed && a.reps == b.reps &&
           a.pooling == b.pooling && a.similarity.kind == b.similarity.kind &&
           a.similarity.gain == b.similarity.gain && a.cortex == b.cortex &&
           a.hippocampus == b.hippocampus && a.ventral == b.ventral && a.mtl == b.mtl &&
           a.equiv == b.equiv && a.oja == b.oja && a.output == b.output;
  }
};

/// Defaults for one experiment (e.g. 20 repetitions for mtl).
ExperimentConfig default_config(ExperimentKind kind);

/// Parses a JSON document. Keys not given keep the experiment's defaults.
/// Unknown keys, wrong types and out-of-range values throw ConfigError
/// naming the offending field.
ExperimentConfig parse_config(std::string_view json_text);
/// Throws IoError when the file cannot be read, ConfigError otherwise.
ExperimentConfig load_config(const std::filesystem::path& path);
/// Complete JSON form; parse_config(to_json_text(c)) == c.
std::string to_json_text(const ExperimentConfig& config);

/// Range checks shared by parsing and CLI overrides. Throws ConfigError.
void validate(const ExperimentConfig& config);

}  // namespace hwarch

#endif  // HWARCH_CONFIG_HPP_
