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

#ifndef HWARCH_ERROR_HPP_
#define HWARCH_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace hwarch {

enum class Errc {
  kZeroVector,
  kDimensionMismatch,
  kNonFinite,
  kEmptyModule,
  kEmptySignature,
  kRawUnavailable,
  kDimensionExhausted,
  kInvalidEps,
  kEmptyStream,
  kEmptyLayer,
  kUnknownModule,
  kNotStudied,
  kDegenerateLabels,
  kInvalidParams,
  kConfigError,
  kIoError,
  kVersionError,
  kCorruptSnapshot,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure in the library is reported as an Error carrying an Errc, so
/// callers can branch on the condition without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace hwarch

#endif  // HWARCH_ERROR_HPP_
