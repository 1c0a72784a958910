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

// Reader and writer for the scene interchange document: the per-frame
// camera, lens and NeRF proxy samples exported from a 3D editor.
//
// Schema version 1:
//
//   { "version": 1, "fps": 24.0, "frame_start": 1, "frame_end": 120,
//     "render": {"width": 1920, "height": 1080},
//     "camera_type": "perspective" | "equirectangular",
//     "real_scale": 0.5,                                   (optional)
//     "camera": {"frames": [{"frame": 1, "world": [16 numbers],
//                            "focal_length_mm": 50.0,
//                            "sensor_width_mm": 36.0,
//                            "sensor_height_mm": 24.0,
//                            "sensor_fit": "AUTO"}, ...]},
//     "nerf_object": {"name": "poster",
//                     "frames": [{"frame": 1, "world": [16 numbers]}, ...]} }
//
// Matrices are row-major with the translation in elements 3, 7 and 11.

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nerfvfx/error.hpp"
#include "nerfvfx/fov.hpp"
#include "nerfvfx/mat4.hpp"

namespace nerfvfx {

inline constexpr int kInterchangeVersion = 1;

/// Bottom rows within this distance of 0 0 0 1 are snapped to it exactly.
inline constexpr double kAffineRowTolerance = 1e-9;

enum class CameraType { Perspective, Equirectangular };

constexpr std::string_view to_string(CameraType type) {
  return type == CameraType::Perspective ? "perspective" : "equirectangular";
}

struct SceneInterchange {
  int version = kInterchangeVersion;
  double fps = 24.0;
  int frame_start = 1;
  int frame_end = 1;
  int render_width = 1920;
  int render_height = 1080;
  CameraType camera_type = CameraType::Perspective;
  std::optional<double> real_scale;
  std::string nerf_name;
  // One sample per frame, frame_start..frame_end in order.
  std::vector<LensSample> lens;
  std::vector<Mat4> camera_frames;
  std::vector<Mat4> nerf_frames;

  std::size_t frame_count() const {
    return static_cast<std::size_t>(frame_end - frame_start) + 1;
  }

  friend bool operator==(const SceneInterchange&,
                         const SceneInterchange&) = default;
};

inline constexpr std::string_view kWarnUnknownKey = "UNKNOWN_KEY";
inline constexpr std::string_view kWarnNonUniformScale = "NONUNIFORM_SCALE";

struct ParseWarning {
  std::optional<int> frame;
  std::string code;
  std::string message;
};

struct ScaleFlag {
  int frame = 0;
  ScaleAnalysis analysis;
};

struct ParseReport {
  std::vector<ParseWarning> warnings;
  /// Proxy frames whose scale is not uniform.
  std::vector<ScaleFlag> nonuniform_scale;
};

struct ParsedScene {
  SceneInterchange scene;
  ParseReport report;
};

namespace detail {

using Json = nlohmann::json;

class InterchangeReader {
 public:
  explicit InterchangeReader(ParseReport& report) : report_(report) {}

  SceneInterchange read(const Json& root) {
    require_object(root, "$");
    SceneInterchange scene;

    const Json& version = field(root, "$", "version");
    if (!version.is_number_integer()) {
      throw Error(ErrorCode::SchemaViolation, "expected an integer", {},
                  "version");
    }
    if (version.get<std::int64_t>() != kInterchangeVersion) {
      throw Error(ErrorCode::UnsupportedVersion,
                  "only version 1 is supported, got " + version.dump(), {},
                  "version");
    }
    scene.version = kInterchangeVersion;

    scene.fps = positive_real(root, "", "fps");
    scene.frame_start = integer(root, "", "frame_start");
    scene.frame_end = integer(root, "", "frame_end");
    if (scene.frame_start > scene.frame_end) {
      throw Error(ErrorCode::InvalidFrameRange,
                  "frame_start " + std::to_string(scene.frame_start) +
                      " is after frame_end " + std::to_string(scene.frame_end),
                  {}, "frame_start");
    }

    const Json& render = field(root, "", "render");
    require_object(render, "render");
    scene.render_width = positive_integer(render, "render", "width");
    scene.render_height = positive_integer(render, "render", "height");
    warn_unknown(render, "render", {"width", "height"});

    const std::string type = string(root, "", "camera_type");
    if (type == "perspective") {
      scene.camera_type = CameraType::Perspective;
    } else if (type == "equirectangular") {
      scene.camera_type = CameraType::Equirectangular;
    } else {
      throw Error(ErrorCode::SchemaViolation,
                  "expected \"perspective\" or \"equirectangular\", got \"" +
                      type + "\"",
                  {}, "camera_type");
    }

    if (const auto it = root.find("real_scale");
        it != root.end() && !it->is_null()) {
      scene.real_scale = positive_real(root, "", "real_scale");
    }

    read_camera(root, scene);
    read_nerf(root, scene);

    warn_unknown(root, "",
                 {"version", "fps", "frame_start", "frame_end", "render",
                  "camera_type", "real_scale", "camera", "nerf_object"});
    return scene;
  }

 private:
  static std::string join(std::string_view parent, std::string_view key) {
    if (parent.empty() || parent == "$") return std::string(key);
    return std::string(parent) + "." + std::string(key);
  }

  static std::string index_path(std::string_view parent, std::size_t i) {
    return std::string(parent) + "[" + std::to_string(i) + "]";
  }

  static void require_object(const Json& j, const std::string& path) {
    if (!j.is_object()) {
      throw Error(ErrorCode::SchemaViolation, "expected an object", {}, path);
    }
  }

  static const Json& field(const Json& obj, std::string_view parent,
                           std::string_view key,
                           std::optional<int> frame = {}) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
      throw Error(ErrorCode::SchemaViolation, "missing required field", frame,
                  join(parent, key));
    }
    return *it;
  }

  static double real(const Json& obj, std::string_view parent,
                     std::string_view key, std::optional<int> frame = {}) {
    const Json& j = field(obj, parent, key, frame);
    if (!j.is_number()) {
      throw Error(ErrorCode::SchemaViolation, "expected a number", frame,
                  join(parent, key));
    }
    return j.get<double>();
  }

  static double positive_real(const Json& obj, std::string_view parent,
                              std::string_view key,
                              std::optional<int> frame = {}) {
    const double v = real(obj, parent, key, frame);
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::NonPositive, "must be positive", frame,
                  join(parent, key));
    }
    return v;
  }

  static int integer(const Json& obj, std::string_view parent,
                     std::string_view key, std::optional<int> frame = {}) {
    const Json& j = field(obj, parent, key, frame);
    if (!j.is_number_integer()) {
      throw Error(ErrorCode::SchemaViolation, "expected an integer", frame,
                  join(parent, key));
    }
    const auto v = j.get<std::int64_t>();
    if (v < INT32_MIN || v > INT32_MAX) {
      throw Error(ErrorCode::SchemaViolation, "integer out of range", frame,
                  join(parent, key));
    }
    return static_cast<int>(v);
  }

  static int positive_integer(const Json& obj, std::string_view parent,
                              std::string_view key) {
    const int v = integer(obj, parent, key);
    if (v <= 0) {
      throw Error(ErrorCode::NonPositive, "must be positive", {},
                  join(parent, key));
    }
    return v;
  }

  static std::string string(const Json& obj, std::string_view parent,
                            std::string_view key,
                            std::optional<int> frame = {}) {
    const Json& j = field(obj, parent, key, frame);
    if (!j.is_string()) {
      throw Error(ErrorCode::SchemaViolation, "expected a string", frame,
                  join(parent, key));
    }
    return j.get<std::string>();
  }

  void warn_unknown(const Json& obj, std::string_view parent,
                    std::initializer_list<std::string_view> known,
                    std::optional<int> frame = {}) {
    for (const auto& [key, value] : obj.items()) {
      bool is_known = false;
      for (auto k : known) is_known = is_known || k == key;
      if (!is_known) {
        report_.warnings.push_back(
            {frame, std::string(kWarnUnknownKey),
             "ignoring unknown key '" + join(parent, key) + "'"});
      }
    }
  }

  static Mat4 matrix(const Json& entry, const std::string& parent, int frame,
                     const std::string& object) {
    const Json& world = field(entry, parent, "world", frame);
    const std::string path = join(parent, "world");
    if (!world.is_array() || world.size() != 16) {
      throw Error(ErrorCode::SchemaViolation,
                  "expected an array of 16 numbers", frame, path);
    }
    std::array<double, 16> values{};
    for (std::size_t i = 0; i < 16; ++i) {
      if (!world[i].is_number()) {
        throw Error(ErrorCode::SchemaViolation, "expected a number", frame,
                    index_path(path, i));
      }
      values[i] = world[i].get<double>();
    }
    // Bottom row must be 0 0 0 1; near misses from float export are snapped.
    const std::array<double, 4> bottom{0.0, 0.0, 0.0, 1.0};
    for (std::size_t i = 0; i < 4; ++i) {
      if (std::abs(values[12 + i] - bottom[i]) > kAffineRowTolerance) {
        throw Error(ErrorCode::NonAffineMatrix,
                    "bottom row of " + object + " transform is not 0 0 0 1",
                    frame, object);
      }
      values[12 + i] = bottom[i];
    }
    Mat4 m = Mat4::from_row_major(values);
    if (!m.is_invertible()) {
      throw Error(ErrorCode::SingularMatrix,
                  object + " transform is singular at frame " +
                      std::to_string(frame),
                  frame, object);
    }
    return m;
  }

  // Validates ordering and coverage of a track's frame numbers. Returns the
  // entries in frame order.
  static std::vector<const Json*> track(const Json& frames,
                                        const std::string& path,
                                        const SceneInterchange& scene) {
    if (!frames.is_array()) {
      throw Error(ErrorCode::SchemaViolation, "expected an array", {}, path);
    }
    std::vector<const Json*> entries;
    std::optional<int> previous;
    for (std::size_t i = 0; i < frames.size(); ++i) {
      const std::string entry_path = index_path(path, i);
      require_object(frames[i], entry_path);
      const int frame = integer(frames[i], entry_path, "frame");
      if (frame < scene.frame_start || frame > scene.frame_end) {
        throw Error(ErrorCode::SchemaViolation,
                    "frame outside frame_start..frame_end", frame,
                    join(entry_path, "frame"));
      }
      if (previous && frame <= *previous) {
        throw Error(ErrorCode::SchemaViolation,
                    frame == *previous ? "duplicate frame"
                                       : "frames must be in ascending order",
                    frame, join(entry_path, "frame"));
      }
      previous = frame;
      entries.push_back(&frames[i]);
    }
    // Strictly ascending and in range: the first frame whose sample is not
    // at its own offset is missing.
    for (std::size_t i = 0; i < scene.frame_count(); ++i) {
      const int expected = scene.frame_start + static_cast<int>(i);
      if (i >= entries.size() ||
          (*entries[i])["frame"].get<std::int64_t>() != expected) {
        throw Error(ErrorCode::FrameCoverageGap,
                    "no sample for frame " + std::to_string(expected),
                    expected, path);
      }
    }
    return entries;
  }

  void read_camera(const Json& root, SceneInterchange& scene) {
    const Json& camera = field(root, "", "camera");
    require_object(camera, "camera");
    const auto entries =
        track(field(camera, "camera", "frames"), "camera.frames", scene);
    warn_unknown(camera, "camera", {"frames"});

    for (std::size_t i = 0; i < entries.size(); ++i) {
      const Json& e = *entries[i];
      const int frame = scene.frame_start + static_cast<int>(i);
      const std::string path = index_path("camera.frames", i);
      scene.camera_frames.push_back(matrix(e, path, frame, "camera"));

      LensSample lens;
      lens.focal_length_mm = positive_real(e, path, "focal_length_mm", frame);
      lens.sensor_width_mm = positive_real(e, path, "sensor_width_mm", frame);
      lens.sensor_height_mm = positive_real(e, path, "sensor_height_mm", frame);
      const std::string fit = string(e, path, "sensor_fit", frame);
      const auto parsed = parse_sensor_fit(fit);
      if (!parsed) {
        throw Error(ErrorCode::SchemaViolation,
                    "expected AUTO, HORIZONTAL or VERTICAL, got \"" + fit + "\"",
                    frame, join(path, "sensor_fit"));
      }
      lens.fit = *parsed;
      scene.lens.push_back(lens);
      warn_unknown(e, path,
                   {"frame", "world", "focal_length_mm", "sensor_width_mm",
                    "sensor_height_mm", "sensor_fit"},
                   frame);
    }
  }

  void read_nerf(const Json& root, SceneInterchange& scene) {
    const Json& nerf = field(root, "", "nerf_object");
    require_object(nerf, "nerf_object");
    scene.nerf_name = string(nerf, "nerf_object", "name");
    const auto entries = track(field(nerf, "nerf_object", "frames"),
                               "nerf_object.frames", scene);
    warn_unknown(nerf, "nerf_object", {"name", "frames"});

    const std::string object = scene.nerf_name.empty()
                                   ? std::string("nerf_object")
                                   : "nerf_object '" + scene.nerf_name + "'";
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const Json& e = *entries[i];
      const int frame = scene.frame_start + static_cast<int>(i);
      const std::string path = index_path("nerf_object.frames", i);
      const Mat4 m = matrix(e, path, frame, object);
      scene.nerf_frames.push_back(m);
      warn_unknown(e, path, {"frame", "world"}, frame);

      const ScaleAnalysis scale = analyze_scale(m);
      if (!scale.uniform) {
        report_.nonuniform_scale.push_back({frame, scale});
        report_.warnings.push_back(
            {frame, std::string(kWarnNonUniformScale),
             object + " has non-uniform scale (" +
                 std::to_string(scale.column_norms[0]) + ", " +
                 std::to_string(scale.column_norms[1]) + ", " +
                 std::to_string(scale.column_norms[2]) + ")"});
      }
    }
  }

  ParseReport& report_;
};

}  // namespace detail

/// Parses and validates an interchange document. Throws Error on the first
/// violation; non-fatal findings go to the returned report.
inline ParsedScene parse_interchange(std::string_view text) {
  detail::Json root;
  try {
    root = detail::Json::parse(text.begin(), text.end());
  } catch (const detail::Json::parse_error& e) {
    throw Error(ErrorCode::MalformedDocument, e.what());
  }
  ParsedScene out;
  detail::InterchangeReader reader(out.report);
  out.scene = reader.read(root);
  return out;
}

/// Canonical text of a scene: schema key order, two-space indent, shortest
/// round-trip numbers.
inline std::string serialize_interchange(const SceneInterchange& scene) {
  using OrderedJson = nlohmann::ordered_json;
  auto matrix = [](const Mat4& m) {
    OrderedJson a = OrderedJson::array();
    for (double v : m.row_major()) a.push_back(v);
    return a;
  };

  OrderedJson root;
  root["version"] = scene.version;
  root["fps"] = scene.fps;
  root["frame_start"] = scene.frame_start;
  root["frame_end"] = scene.frame_end;
  root["render"] = {{"width", scene.render_width},
                    {"height", scene.render_height}};
  root["camera_type"] = std::string(to_string(scene.camera_type));
  if (scene.real_scale) root["real_scale"] = *scene.real_scale;

  OrderedJson camera_frames = OrderedJson::array();
  for (std::size_t i = 0; i < scene.camera_frames.size(); ++i) {
    const LensSample& lens = scene.lens.at(i);
    OrderedJson e;
    e["frame"] = scene.frame_start + static_cast<int>(i);
    e["world"] = matrix(scene.camera_frames[i]);
    e["focal_length_mm"] = lens.focal_length_mm;
    e["sensor_width_mm"] = lens.sensor_width_mm;
    e["sensor_height_mm"] = lens.sensor_height_mm;
    e["sensor_fit"] = std::string(to_string(lens.fit));
    camera_frames.push_back(std::move(e));
  }
  root["camera"] = {{"frames", std::move(camera_frames)}};

  OrderedJson nerf_frames = OrderedJson::array();
  for (std::size_t i = 0; i < scene.nerf_frames.size(); ++i) {
    OrderedJson e;
    e["frame"] = scene.frame_start + static_cast<int>(i);
    e["world"] = matrix(scene.nerf_frames[i]);
    nerf_frames.push_back(std::move(e));
  }
  OrderedJson nerf;
  nerf["name"] = scene.nerf_name;
  nerf["frames"] = std::move(nerf_frames);
  root["nerf_object"] = std::move(nerf);
  return root.dump(2) + "\n";
}

}  // namespace nerfvfx
