// Copyright 2026 The nerfvfx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <string>
#include <string_view>

#include "nerfvfx/error.hpp"

namespace nerfvfx {

/// Shortest decimal text that reads back as the same double, always in
/// JSON-number form with a fraction or exponent so it reads as a real.
/// Negative zero is written as 0.0.
inline std::string format_real(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::OutOfRange, "cannot serialize a non-finite number");
  }
  if (value == 0.0) return "0.0";
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  std::string out(buf.data(), end);
  if (out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

}  // namespace nerfvfx
