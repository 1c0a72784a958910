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

// Pipeline commands behind the `nerfvfx` executable. Each returns the
// process exit code and writes diagnostics to the given stream.

#pragma once

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>

#include "nerfvfx/camera_path.hpp"
#include "nerfvfx/error.hpp"
#include "nerfvfx/file_io.hpp"
#include "nerfvfx/interchange.hpp"
#include "nerfvfx/sequence.hpp"

namespace nerfvfx::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitMath = 3;
inline constexpr int kExitIo = 4;

/// Parses `A..B` (inclusive). Returns nullopt on any other shape or when
/// A > B.
inline std::optional<FrameRange> parse_frame_range(std::string_view text) {
  const auto sep = text.find("..");
  if (sep == std::string_view::npos) return std::nullopt;
  auto parse_int = [](std::string_view s) -> std::optional<int> {
    int v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size() || s.empty()) {
      return std::nullopt;
    }
    return v;
  };
  const auto first = parse_int(text.substr(0, sep));
  const auto last = parse_int(text.substr(sep + 2));
  if (!first || !last || *first > *last) return std::nullopt;
  return FrameRange{*first, *last};
}

namespace detail {

inline void print_warnings(const ParseReport& report, std::ostream& diag) {
  for (const auto& w : report.warnings) {
    diag << "warning: ";
    if (w.frame) diag << "frame " << *w.frame << ": ";
    diag << w.code << ": " << w.message << "\n";
  }
}

inline std::optional<std::string> load_scene_text(
    const std::filesystem::path& scene_file, std::ostream& diag) {
  try {
    return read_text_file(scene_file);
  } catch (const Error&) {
    diag << "error: cannot read scene file " << scene_file.string() << "\n";
    return std::nullopt;
  }
}

}  // namespace detail

struct ExportOptions {
  std::filesystem::path scene;
  std::filesystem::path out;
  std::optional<double> real_scale;
};

inline int export_path_cmd(const ExportOptions& opts, std::ostream& diag) {
  if (opts.real_scale && !(*opts.real_scale > 0.0)) {
    diag << "error: --real-scale must be positive\n";
    return kExitInvalid;
  }
  const auto text = detail::load_scene_text(opts.scene, diag);
  if (!text) return kExitIo;

  ParsedScene parsed;
  try {
    parsed = parse_interchange(*text);
  } catch (const Error& e) {
    diag << "error: " << opts.scene.string() << ": " << e.what() << "\n";
    return e.code() == ErrorCode::SingularMatrix ? kExitMath : kExitInvalid;
  }
  detail::print_warnings(parsed.report, diag);
  if (opts.real_scale) parsed.scene.real_scale = opts.real_scale;

  CameraPathDocument doc;
  try {
    doc = build_path(parsed.scene);
  } catch (const Error& e) {
    diag << "error: " << opts.scene.string() << ": " << e.what() << "\n";
    return e.code() == ErrorCode::SingularMatrix ? kExitMath : kExitInvalid;
  }

  try {
    write_file_atomic(opts.out, serialize_path(doc));
  } catch (const Error& e) {
    diag << "error: " << e.what() << "\n";
    return kExitIo;
  }
  diag << "wrote " << doc.entries.size() << " frames to " << opts.out.string()
       << "\n";
  return kExitOk;
}

inline int validate_cmd(const std::filesystem::path& scene_file,
                        std::ostream& diag) {
  const auto text = detail::load_scene_text(scene_file, diag);
  if (!text) return kExitIo;
  try {
    const ParsedScene parsed = parse_interchange(*text);
    detail::print_warnings(parsed.report, diag);
    diag << scene_file.string() << ": " << parsed.scene.frame_count()
         << " frames, 0 errors, " << parsed.report.warnings.size()
         << " warnings\n";
    return kExitOk;
  } catch (const Error& e) {
    diag << "error: " << scene_file.string() << ": " << e.what() << "\n";
    diag << scene_file.string() << ": 1 error\n";
    return kExitInvalid;
  }
}

struct CompositeOptions {
  CompositeMode mode = CompositeMode::Over;
  std::optional<std::string> fg;
  std::string mask;
  std::string bg;
  std::string out;
  std::string frames;
  std::optional<double> strength;
  unsigned jobs = 0;  // 0 means hardware concurrency
};

inline int composite_cmd(const CompositeOptions& opts, std::ostream& diag) {
  const auto range = parse_frame_range(opts.frames);
  if (!range) {
    diag << "error: --frames must look like A..B with A <= B\n";
    return kExitInvalid;
  }
  if (opts.strength && !(*opts.strength >= 0.0 && *opts.strength <= 1.0)) {
    diag << "error: --strength must be within [0, 1]\n";
    return kExitInvalid;
  }
  if (opts.mode == CompositeMode::Over && !opts.fg) {
    diag << "error: over mode requires --fg\n";
    return kExitInvalid;
  }
  if (opts.mode == CompositeMode::Over && opts.strength) {
    diag << "warning: --strength is ignored in over mode\n";
  }
  if (opts.mode == CompositeMode::Shadow && opts.fg) {
    diag << "warning: --fg is ignored in shadow mode\n";
  }

  std::optional<CompositeJob> job;
  try {
    std::optional<SequencePattern> fg;
    if (opts.fg && opts.mode == CompositeMode::Over) fg.emplace(*opts.fg, *range);
    job.emplace(CompositeJob{opts.mode, fg, SequencePattern(opts.mask, *range),
                             SequencePattern(opts.bg, *range),
                             SequencePattern(opts.out, *range),
                             opts.strength.value_or(1.0),
                             opts.jobs == 0
                                 ? std::max(1u, std::thread::hardware_concurrency())
                                 : opts.jobs});
  } catch (const Error& e) {
    diag << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  try {
    const std::size_t written = composite_sequence(
        *job, [&diag](int frame) { diag << "frame " << frame << " ok\n"; });
    diag << written << " frames written\n";
    return kExitOk;
  } catch (const Error& e) {
    diag << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::MissingFrame:
      case ErrorCode::DecodeError:
      case ErrorCode::DimensionMismatch:
      case ErrorCode::IoError:
        return kExitIo;
      default:
        return kExitInvalid;
    }
  }
}

}  // namespace nerfvfx::cli
