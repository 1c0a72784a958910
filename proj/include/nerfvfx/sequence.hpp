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

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "nerfvfx/error.hpp"
#include "nerfvfx/image.hpp"
#include "nerfvfx/png_io.hpp"

namespace nerfvfx {

struct FrameRange {
  int first = 1;
  int last = 1;

  std::size_t size() const { return static_cast<std::size_t>(last - first) + 1; }
  friend bool operator==(const FrameRange&, const FrameRange&) = default;
};

/// A numbered image sequence such as `shot/rgb_{frame:04}.png`.
///
/// The template holds exactly one placeholder: `{frame}` (width 4),
/// `{frame:NN}` or `{frame:0NN}`. Frames are zero-padded to that width.
class SequencePattern {
 public:
  SequencePattern(std::string pattern, FrameRange range)
      : template_(std::move(pattern)), range_(range) {
    if (range_.first > range_.last) {
      throw Error(ErrorCode::InvalidFrameRange, "sequence range is empty", {},
                  template_);
    }
    const auto open = template_.find("{frame");
    if (open == std::string::npos) {
      throw Error(ErrorCode::InvalidPattern, "missing {frame} placeholder", {},
                  template_);
    }
    const auto close = template_.find('}', open);
    if (close == std::string::npos) {
      throw Error(ErrorCode::InvalidPattern, "unterminated placeholder", {},
                  template_);
    }
    if (template_.find("{frame", close) != std::string::npos) {
      throw Error(ErrorCode::InvalidPattern, "more than one {frame} placeholder",
                  {}, template_);
    }
    const std::string spec = template_.substr(open + 6, close - open - 6);
    if (!spec.empty()) {
      if (spec.size() < 2 || spec[0] != ':' ||
          !std::all_of(spec.begin() + 1, spec.end(),
                       [](char c) { return c >= '0' && c <= '9'; }) ||
          spec.size() > 4) {
        throw Error(ErrorCode::InvalidPattern,
                    "placeholder width must look like {frame:04}", {}, template_);
      }
      width_ = std::stoi(spec.substr(1));
      if (width_ < 1) {
        throw Error(ErrorCode::InvalidPattern, "placeholder width must be positive",
                    {}, template_);
      }
    }
    prefix_ = template_.substr(0, open);
    suffix_ = template_.substr(close + 1);
  }

  const std::string& pattern() const { return template_; }
  FrameRange range() const { return range_; }
  int width() const { return width_; }

  std::filesystem::path path_for(int frame) const {
    char digits[32];
    std::snprintf(digits, sizeof(digits), "%0*d", width_, frame);
    return prefix_ + digits + suffix_;
  }

 private:
  std::string template_;
  FrameRange range_;
  int width_ = 4;
  std::string prefix_;
  std::string suffix_;
};

enum class CompositeMode { Over, Shadow };

struct CompositeJob {
  CompositeMode mode = CompositeMode::Over;
  /// RGB render; only read in Over mode.
  std::optional<SequencePattern> fg;
  /// Accumulation render (Over) or shadow pass (Shadow). Channel 0 is used.
  SequencePattern mask;
  SequencePattern bg;
  SequencePattern out;
  double strength = 1.0;
  unsigned jobs = 1;
};

/// Composites one frame and returns the output image.
inline ImagePlane composite_frame(const CompositeJob& job, int frame) {
  auto load = [frame](const SequencePattern& seq, const char* role) {
    const auto path = seq.path_for(frame);
    if (!std::filesystem::exists(path)) {
      throw Error(ErrorCode::MissingFrame, path.string() + " does not exist",
                  frame, role);
    }
    return read_png(path);
  };

  try {
    if (job.mode == CompositeMode::Over) {
      const ImagePlane rgb = load(*job.fg, "fg");
      const ImagePlane mask = load(job.mask, "mask");
      const ImagePlane bg = gray_to_rgb(load(job.bg, "bg"));
      return over(attach_alpha(rgb, mask), bg);
    }
    const ImagePlane mask = load(job.mask, "mask");
    const ImagePlane bg = load(job.bg, "bg");
    return apply_shadow(bg, extract_channel(mask, 0), job.strength);
  } catch (const Error& e) {
    if (e.frame()) throw;
    // Attribute frame-agnostic failures (decode, size) to this frame.
    std::string message = e.what();
    throw Error(e.code(), message, frame, e.subject());
  }
}

/// Composites every frame of the shared range and writes each result at the
/// background's bit depth. Stops at the first failing frame; outputs already
/// written stay on disk. `on_frame_done` is called in ascending frame order.
/// Returns the number of frames written.
inline std::size_t composite_sequence(
    const CompositeJob& job,
    const std::function<void(int frame)>& on_frame_done = {}) {
  if (job.mode == CompositeMode::Over && !job.fg) {
    throw Error(ErrorCode::InvalidPattern, "over mode needs a foreground sequence");
  }
  if (job.mode == CompositeMode::Shadow &&
      !(job.strength >= 0.0 && job.strength <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "shadow strength must be in [0, 1]");
  }
  const FrameRange range = job.out.range();
  for (const SequencePattern* seq : {&job.mask, &job.bg}) {
    if (!(seq->range() == range)) {
      throw Error(ErrorCode::InvalidFrameRange,
                  "all sequences must cover the same frames", {}, seq->pattern());
    }
  }
  if (job.fg && job.mode == CompositeMode::Over && !(job.fg->range() == range)) {
    throw Error(ErrorCode::InvalidFrameRange,
                "all sequences must cover the same frames", {}, job.fg->pattern());
  }

  const std::size_t total = range.size();
  const unsigned workers = static_cast<unsigned>(
      std::clamp<std::size_t>(job.jobs == 0 ? 1 : job.jobs, 1, total));

  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex mu;
  std::optional<Error> first_error;
  std::optional<std::size_t> first_error_index;
  std::vector<char> done(total, 0);
  std::size_t reported = 0;

  auto report_ready = [&] {
    // Called with mu held.
    while (reported < total && done[reported]) {
      if (first_error_index && reported >= *first_error_index) break;
      if (on_frame_done) on_frame_done(range.first + static_cast<int>(reported));
      ++reported;
    }
  };

  auto worker = [&] {
    while (!stop.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= total) return;
      const int frame = range.first + static_cast<int>(i);
      try {
        const ImagePlane result = composite_frame(job, frame);
        write_png(job.out.path_for(frame), result);
        std::lock_guard lock(mu);
        done[i] = 1;
        report_ready();
      } catch (const Error& e) {
        std::lock_guard lock(mu);
        if (!first_error_index || i < *first_error_index) {
          first_error_index = i;
          first_error = e;
        }
        stop.store(true);
      }
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  if (first_error) throw *first_error;
  return static_cast<std::size_t>(
      std::count(done.begin(), done.end(), static_cast<char>(1)));
}

}  // namespace nerfvfx
