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

// Straight-alpha compositing on normalized float rasters. Values are used
// exactly as stored; no color-space conversion happens here.

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nerfvfx/error.hpp"

namespace nerfvfx {

/// A decoded raster. Samples are row-major, top-left origin, interleaved,
/// normalized to [0, 1].
struct ImagePlane {
  int width = 0;
  int height = 0;
  int channels = 0;  // 1, 3 or 4
  int source_bit_depth = 8;
  std::vector<float> samples;

  ImagePlane() = default;
  ImagePlane(int w, int h, int c, int bit_depth = 8, float fill = 0.0f)
      : width(w),
        height(h),
        channels(c),
        source_bit_depth(bit_depth),
        samples(static_cast<std::size_t>(w) * h * c, fill) {}

  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width) * height;
  }

  float& at(int x, int y, int c) {
    return samples[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  float at(int x, int y, int c) const {
    return samples[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }

  friend bool operator==(const ImagePlane&, const ImagePlane&) = default;
};

namespace detail {

inline void require_same_size(const ImagePlane& a, const ImagePlane& b,
                              const char* what) {
  if (a.width != b.width || a.height != b.height) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": " + std::to_string(a.width) + "x" +
                    std::to_string(a.height) + " vs " +
                    std::to_string(b.width) + "x" + std::to_string(b.height));
  }
}

inline void require_channels(const ImagePlane& img, std::initializer_list<int> allowed,
                             const char* what) {
  for (int c : allowed) {
    if (img.channels == c) return;
  }
  throw Error(ErrorCode::DimensionMismatch,
              std::string(what) + " has an unsupported channel count " +
                  std::to_string(img.channels));
}

// Blends in double and rounds once, so the result never leaves
// [min(a, b), max(a, b)] and weights of exactly 0 or 1 reproduce an input.
inline float lerp(float bg, float fg, float weight) {
  const double w = weight;
  return static_cast<float>(w * fg + (1.0 - w) * bg);
}

}  // namespace detail

/// Combines an RGB render with an accumulation render used as straight
/// alpha. Alpha comes from channel 0 of the accumulation image.
inline ImagePlane attach_alpha(const ImagePlane& rgb,
                               const ImagePlane& accumulation) {
  detail::require_same_size(rgb, accumulation, "attach_alpha");
  detail::require_channels(rgb, {3, 4}, "RGB render");
  detail::require_channels(accumulation, {1, 3, 4}, "accumulation render");

  ImagePlane out(rgb.width, rgb.height, 4, rgb.source_bit_depth);
  for (std::size_t p = 0; p < out.pixel_count(); ++p) {
    for (int c = 0; c < 3; ++c) {
      out.samples[p * 4 + c] = rgb.samples[p * rgb.channels + c];
    }
    out.samples[p * 4 + 3] = accumulation.samples[p * accumulation.channels];
  }
  return out;
}

/// Straight-alpha "over". The result has the background's channel count
/// and bit depth.
inline ImagePlane over(const ImagePlane& fg, const ImagePlane& bg) {
  detail::require_same_size(fg, bg, "over");
  detail::require_channels(fg, {4}, "foreground");
  detail::require_channels(bg, {3, 4}, "background");

  ImagePlane out = bg;
  const int bc = bg.channels;
  for (std::size_t p = 0; p < out.pixel_count(); ++p) {
    const float a = fg.samples[p * 4 + 3];
    for (int c = 0; c < 3; ++c) {
      float& dst = out.samples[p * bc + c];
      dst = detail::lerp(dst, fg.samples[p * 4 + c], a);
    }
    if (bc == 4) {
      float& dst_a = out.samples[p * 4 + 3];
      dst_a = static_cast<float>(static_cast<double>(a) +
                                 (1.0 - a) * static_cast<double>(dst_a));
    }
  }
  return out;
}

/// Composites layers back-to-front over a background.
inline ImagePlane stack(std::span<const ImagePlane> layers,
                        const ImagePlane& background) {
  ImagePlane out = background;
  for (const ImagePlane& layer : layers) out = over(layer, out);
  return out;
}

/// Darkens a plate by a shadow-catcher mask: rgb * (1 - strength * mask).
/// Alpha, if present, is untouched.
inline ImagePlane apply_shadow(const ImagePlane& bg,
                               const ImagePlane& shadow_mask, double strength) {
  if (!(strength >= 0.0 && strength <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "shadow strength must be in [0, 1]");
  }
  detail::require_same_size(bg, shadow_mask, "apply_shadow");
  detail::require_channels(bg, {1, 3, 4}, "background");
  detail::require_channels(shadow_mask, {1}, "shadow mask");

  ImagePlane out = bg;
  const int bc = bg.channels;
  const int color = bc == 4 ? 3 : bc;
  for (std::size_t p = 0; p < out.pixel_count(); ++p) {
    const double factor = 1.0 - strength * shadow_mask.samples[p];
    for (int c = 0; c < color; ++c) {
      float& dst = out.samples[p * bc + c];
      dst = static_cast<float>(dst * factor);
    }
  }
  return out;
}

/// Single-channel view of channel `index`.
inline ImagePlane extract_channel(const ImagePlane& img, int index) {
  if (index < 0 || index >= img.channels) {
    throw Error(ErrorCode::DimensionMismatch, "channel index out of range");
  }
  ImagePlane out(img.width, img.height, 1, img.source_bit_depth);
  for (std::size_t p = 0; p < out.pixel_count(); ++p) {
    out.samples[p] = img.samples[p * img.channels + index];
  }
  return out;
}

/// Repeats a single gray channel into RGB.
inline ImagePlane gray_to_rgb(const ImagePlane& img) {
  if (img.channels != 1) return img;
  ImagePlane out(img.width, img.height, 3, img.source_bit_depth);
  for (std::size_t p = 0; p < out.pixel_count(); ++p) {
    for (int c = 0; c < 3; ++c) out.samples[p * 3 + c] = img.samples[p];
  }
  return out;
}

}  // namespace nerfvfx
