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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace nerfvfx {

enum class ErrorCode {
  MalformedDocument,
  SchemaViolation,
  UnsupportedVersion,
  InvalidFrameRange,
  FrameCoverageGap,
  NonAffineMatrix,
  SingularMatrix,
  NonPositive,
  OutOfRange,
  DimensionMismatch,
  InvalidPattern,
  MissingFrame,
  DecodeError,
  IoError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::InvalidFrameRange: return "InvalidFrameRange";
    case ErrorCode::FrameCoverageGap: return "FrameCoverageGap";
    case ErrorCode::NonAffineMatrix: return "NonAffineMatrix";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NonPositive: return "NonPositive";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidPattern: return "InvalidPattern";
    case ErrorCode::MissingFrame: return "MissingFrame";
    case ErrorCode::DecodeError: return "DecodeError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// The single exception type thrown by the library.
///
/// `subject` names what the error is about: a document path such as
/// `camera.frames[3].world`, an object name, a sequence role, or a file.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::optional<int> frame = {},
        std::string subject = {})
      : std::runtime_error(compose(code, message, frame, subject)),
        code_(code),
        frame_(frame),
        subject_(std::move(subject)) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<int> frame() const noexcept { return frame_; }
  const std::string& subject() const noexcept { return subject_; }

 private:
  static std::string compose(ErrorCode code, const std::string& message,
                             std::optional<int> frame,
                             const std::string& subject) {
    std::string out(to_string(code));
    if (!subject.empty()) out += " [" + subject + "]";
    if (frame) out += " at frame " + std::to_string(*frame);
    out += ": " + message;
    return out;
  }

  ErrorCode code_;
  std::optional<int> frame_;
  std::string subject_;
};

}  // namespace nerfvfx
