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

#include <string>
#include <vector>

#include "nerfvfx/error.hpp"
#include "nerfvfx/fov.hpp"
#include "nerfvfx/interchange.hpp"
#include "nerfvfx/mat4.hpp"
#include "nerfvfx/number_format.hpp"

namespace nerfvfx {

struct CameraPathEntry {
  /// Camera-to-world in the NeRF's local space.
  Mat4 camera_to_world;
  /// Vertical field of view in degrees.
  double fov = 0.0;
  /// render_width / render_height.
  double aspect = 1.0;

  friend bool operator==(const CameraPathEntry&,
                         const CameraPathEntry&) = default;
};

struct CameraPathDocument {
  CameraType camera_type = CameraType::Perspective;
  int render_width = 0;
  int render_height = 0;
  double fps = 24.0;
  double seconds = 0.0;
  std::vector<CameraPathEntry> entries;

  friend bool operator==(const CameraPathDocument&,
                         const CameraPathDocument&) = default;
};

/// Scales every camera position about the NeRF origin. Orientation, FOV and
/// aspect are unchanged.
inline CameraPathDocument apply_real_scale(CameraPathDocument doc,
                                           double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorCode::NonPositive, "real-world scale must be positive");
  }
  for (auto& entry : doc.entries) {
    for (std::size_t r = 0; r < 3; ++r) entry.camera_to_world(r, 3) *= scale;
  }
  return doc;
}

/// Builds the renderer's camera path: every frame's camera re-expressed
/// relative to the NeRF proxy at that frame, with its field of view.
inline CameraPathDocument build_path(const SceneInterchange& scene) {
  const std::size_t count = scene.frame_count();
  if (scene.camera_frames.size() != count || scene.nerf_frames.size() != count ||
      scene.lens.size() != count) {
    throw Error(ErrorCode::FrameCoverageGap,
                "every track needs one sample per frame");
  }
  if (!(scene.fps > 0.0)) throw Error(ErrorCode::NonPositive, "fps");

  CameraPathDocument doc;
  doc.camera_type = scene.camera_type;
  doc.render_width = scene.render_width;
  doc.render_height = scene.render_height;
  doc.fps = scene.fps;
  doc.entries.reserve(count);

  const double aspect = static_cast<double>(scene.render_width) /
                        static_cast<double>(scene.render_height);
  for (std::size_t i = 0; i < count; ++i) {
    const int frame = scene.frame_start + static_cast<int>(i);
    CameraPathEntry entry;
    try {
      entry.camera_to_world =
          align_camera(scene.camera_frames[i], scene.nerf_frames[i]);
    } catch (const Error& e) {
      throw Error(e.code(), "NeRF proxy transform is singular", frame,
                  scene.nerf_name.empty() ? "nerf_object" : scene.nerf_name);
    }
    entry.fov = scene.camera_type == CameraType::Equirectangular
                    ? kEquirectangularFov
                    : vertical_fov(scene.lens[i], scene.render_width,
                                   scene.render_height);
    entry.aspect = aspect;
    doc.entries.push_back(entry);
  }
  doc.seconds = static_cast<double>(doc.entries.size()) / doc.fps;

  if (scene.real_scale) return apply_real_scale(std::move(doc), *scene.real_scale);
  return doc;
}

/// Deterministic text of a camera path: fixed key order, one path entry per
/// line, shortest round-trip numbers, LF line endings.
inline std::string serialize_path(const CameraPathDocument& doc) {
  std::string out;
  out += "{\n";
  out += "  \"camera_type\": \"";
  out += to_string(doc.camera_type);
  out += "\",\n";
  out += "  \"render_height\": " + std::to_string(doc.render_height) + ",\n";
  out += "  \"render_width\": " + std::to_string(doc.render_width) + ",\n";
  out += "  \"camera_path\": [";
  for (std::size_t i = 0; i < doc.entries.size(); ++i) {
    const CameraPathEntry& e = doc.entries[i];
    out += i == 0 ? "\n" : ",\n";
    out += "    {\"camera_to_world\": [";
    const auto& m = e.camera_to_world.row_major();
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (k != 0) out += ", ";
      out += format_real(m[k]);
    }
    out += "], \"fov\": " + format_real(e.fov);
    out += ", \"aspect\": " + format_real(e.aspect) + "}";
  }
  out += doc.entries.empty() ? "],\n" : "\n  ],\n";
  out += "  \"fps\": " + format_real(doc.fps) + ",\n";
  out += "  \"seconds\": " + format_real(doc.seconds) + ",\n";
  out += "  \"is_cycle\": false,\n";
  out += "  \"smoothness_value\": 0.0\n";
  out += "}\n";
  return out;
}

}  // namespace nerfvfx
