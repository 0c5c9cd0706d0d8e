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
#include "hwarch/error.hpp"

namespace hwarch {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::kZeroVector: return "ZeroVector";
    case Errc::kDimensionMismatch: return "DimensionMismatch";
    case Errc::kNonFinite: return "NonFinite";
    case Errc::kEmptyModule: return "EmptyModule";
    case Errc::kEmptySignature: return "EmptySignature";
    case Errc::kRawUnavailable: return "RawUnavailable";
    case Errc::kDimensionExhausted: return "DimensionExhausted";
    case Errc::kInvalidEps: return "InvalidEps";
    case Errc::kEmptyStream: return "EmptyStream";
    case Errc::kEmptyLayer: return "EmptyLayer";
    case Errc::kUnknownModule: return "UnknownModule";
    case Errc::kNotStudied: return "NotStudied";
    case Errc::kDegenerateLabels: return "DegenerateLabels";
    case Errc::kInvalidParams: return "InvalidParams";
    case Errc::kConfigError: return "ConfigError";
    case Errc::kIoError: return "IoError";
    case Errc::kVersionError: return "VersionError";
    case Errc::kCorruptSnapshot: return "CorruptSnapshot";
  }
  return "Unknown";
}

}  // namespace hwarch
