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

#include <cmath>
#include <numbers>
#include <optional>
#include <string_view>

#include "nerfvfx/error.hpp"

namespace nerfvfx {

enum class SensorFit { Horizontal, Vertical, Auto };

constexpr std::string_view to_string(SensorFit fit) {
  switch (fit) {
    case SensorFit::Horizontal: return "HORIZONTAL";
    case SensorFit::Vertical: return "VERTICAL";
    case SensorFit::Auto: return "AUTO";
  }
  return "AUTO";
}

constexpr std::optional<SensorFit> parse_sensor_fit(std::string_view text) {
  if (text == "HORIZONTAL") return SensorFit::Horizontal;
  if (text == "VERTICAL") return SensorFit::Vertical;
  if (text == "AUTO") return SensorFit::Auto;
  return std::nullopt;
}

/// Lens and sensor state of the camera at one frame. Lengths in mm.
struct LensSample {
  double focal_length_mm = 50.0;
  double sensor_width_mm = 36.0;
  double sensor_height_mm = 24.0;
  SensorFit fit = SensorFit::Auto;

  friend bool operator==(const LensSample&, const LensSample&) = default;
};

/// Value written as the fov of every equirectangular path entry.
inline constexpr double kEquirectangularFov = 180.0;

constexpr double degrees(double radians) {
  return radians * 180.0 / std::numbers::pi;
}

/// Pinhole angle of view across `sensor_extent_mm`, in radians.
inline double angle_of_view(double focal_length_mm, double sensor_extent_mm) {
  if (!(focal_length_mm > 0.0) || !(sensor_extent_mm > 0.0)) {
    throw Error(ErrorCode::NonPositive,
                "focal length and sensor extent must be positive");
  }
  return 2.0 * std::atan(sensor_extent_mm / (2.0 * focal_length_mm));
}

/// Resolves AUTO against the render: landscape and square renders fit
/// horizontally, portrait renders vertically.
constexpr SensorFit effective_fit(SensorFit fit, int render_width,
                                  int render_height) {
  if (fit != SensorFit::Auto) return fit;
  return render_width >= render_height ? SensorFit::Horizontal
                                       : SensorFit::Vertical;
}

/// Vertical field of view in degrees for a render of the given size.
///
/// This is the one place that decides which axis the path's `fov` refers
/// to. With a horizontal fit the sensor width spans the render width, so the
/// vertical extent follows from the render aspect ratio; with a vertical fit
/// the sensor height spans the render height directly.
inline double vertical_fov(const LensSample& lens, int render_width,
                           int render_height) {
  if (render_width <= 0 || render_height <= 0) {
    throw Error(ErrorCode::NonPositive, "render dimensions must be positive");
  }
  if (effective_fit(lens.fit, render_width, render_height) ==
      SensorFit::Vertical) {
    return degrees(angle_of_view(lens.focal_length_mm, lens.sensor_height_mm));
  }
  const double horizontal =
      angle_of_view(lens.focal_length_mm, lens.sensor_width_mm);
  const double half_tan = std::tan(horizontal / 2.0) *
                          static_cast<double>(render_height) /
                          static_cast<double>(render_width);
  return degrees(2.0 * std::atan(half_tan));
}

}  // namespace nerfvfx
