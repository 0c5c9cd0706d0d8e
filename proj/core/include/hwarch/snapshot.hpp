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
#ifndef HWARCH_SNAPSHOT_HPP_
#define HWARCH_SNAPSHOT_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <variant>
#include <vector>

#include "hwarch/architecture.hpp"
#include "hwarch/model.hpp"

namespace hwarch {

/// Binary snapshot layout:
///
///   "HWARCHSN" | u32 version | u8 kind | payload | u32 crc32
///
/// All integers are little-endian, sizes are u64 and doubles are stored as
/// their IEEE-754 bit patterns, so a reloaded model answers every QUERY
/// bit-identically. WTA permutations and RP matrices are stored in full;
/// loading never consults the random generator.
inline constexpr std::uint32_t kSnapshotVersion = 1;

enum class SnapshotKind : std::uint8_t { kArchitecture = 1, kModel = 2 };

using Snapshot = std::variant<HwArchitecture, CortexHippocampusModel>;

std::vector<std::uint8_t> encode_snapshot(const HwArchitecture& arch);
std::vector<std::uint8_t> encode_snapshot(const CortexHippocampusModel& model);

/// Throws CorruptSnapshot (bad magic, checksum, truncation, inconsistent
/// payload) and VersionError (unsupported version).
Snapshot decode_snapshot(std::span<const std::uint8_t> bytes);

/// Throw IoError when the file cannot be written.
void save_model(const HwArchitecture& arch, const std::filesystem::path& path);
void save_model(const CortexHippocampusModel& model, const std::filesystem::path& path);

/// Throws IoError, VersionError, CorruptSnapshot.
Snapshot load_snapshot(const std::filesystem::path& path);
/// As load_snapshot; InvalidParams when the file holds the other kind.
HwArchitecture load_architecture(const std::filesystem::path& path);
CortexHippocampusModel load_model(const std::filesystem::path& path);

}  // namespace hwarch

#endif  // HWARCH_SNAPSHOT_HPP_
