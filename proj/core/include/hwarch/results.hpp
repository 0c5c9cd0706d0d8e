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
#ifndef HWARCH_RESULTS_HPP_
#define HWARCH_RESULTS_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hwarch/config.hpp"

namespace hwarch {

/// One measured value. rep is the repetition index, or -1 for a summary
/// across repetitions (median, percentiles, trend statistics).
struct ResultRecord {
  std::string experiment;
  std::string metric;
  double value = 0.0;
  std::int64_t rep = 0;
  /// Seed of the repetition (the base seed for summaries).
  std::uint64_t seed = 0;
  /// Flattened sweep coordinates in emission order.
  std::vector<std::pair<std::string, std::string>> params;
  /// Largest difference a re-run from the embedded config may show.
  double tolerance = 0.0;

  friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

struct RunResult {
  ExperimentConfig config;
  std::vector<ResultRecord> records;
};

/// Columns experiment, metric, value, rep, seed, one column per parameter
/// name (first-appearance order), tolerance. Numbers use the shortest
/// round-trip representation.
void write_csv(std::ostream& out, const RunResult& run);
/// Nested document {"config": ..., "records": [...]}.
void write_json(std::ostream& out, const RunResult& run);

/// Parsers for the two formats above. Empty CSV cells are dropped from
/// params. Throw ConfigError on malformed input.
std::vector<ResultRecord> read_csv(std::istream& in);
RunResult read_json(std::istream& in);

/// Writes <dir>/<experiment>.csv and/or .json. Returns the files written.
/// Throws IoError.
std::vector<std::filesystem::path> write_outputs(const RunResult& run,
                                                 const std::filesystem::path& dir,
                                                 OutputFormat format);

/// Nearest-rank percentile: the ceil(p/100 * n)-th smallest value (the
/// smallest for p == 0). Throws InvalidParams on empty input or p outside
/// [0, 100].
double percentile_nearest_rank(std::vector<double> values, double p);

struct KendallTrend {
  double tau_b = 0.0;
  /// Concordant minus discordant pairs.
  double s = 0.0;
  /// Tie-corrected variance of s under independence.
  double var_s = 0.0;
  double z = 0.0;
  /// One-sided p-values of the normal approximation.
  double p_decreasing = 1.0;
  double p_increasing = 1.0;
};

/// Kendall tau-b between x and y with the tie-corrected normal
/// approximation (no continuity correction). Throws InvalidParams when the
/// lengths differ or fewer than two points are given.
KendallTrend kendall_trend(std::span<const double> x, std::span<const double> y);

/// Shortest decimal text that parses back to exactly v.
std::string format_double(double v);

}  // namespace hwarch

#endif  // HWARCH_RESULTS_HPP_
