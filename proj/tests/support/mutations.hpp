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

// Single-field corruptions of a valid interchange document, each paired with
// the error the parser must report.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nerfvfx/error.hpp"

namespace nerfvfx::testing {

struct Mutation {
  std::string name;
  std::function<std::string(nlohmann::json)> apply;
  ErrorCode expected;
  std::optional<int> frame;
};

/// Mutations of the three-frame `scenes/animated_proxy.json` fixture.
inline std::vector<Mutation> interchange_mutations() {
  using nlohmann::json;
  auto edit = [](std::function<void(json&)> f) {
    return [f](json j) {
      f(j);
      return j.dump();
    };
  };
  const json singular = {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};

  return {
      {"version missing", edit([](json& j) { j.erase("version"); }),
       ErrorCode::SchemaViolation, {}},
      {"version 2", edit([](json& j) { j["version"] = 2; }),
       ErrorCode::UnsupportedVersion, {}},
      {"version string", edit([](json& j) { j["version"] = "1"; }),
       ErrorCode::SchemaViolation, {}},
      {"version real", edit([](json& j) { j["version"] = 1.5; }),
       ErrorCode::SchemaViolation, {}},
      {"fps zero", edit([](json& j) { j["fps"] = 0; }), ErrorCode::NonPositive, {}},
      {"fps negative", edit([](json& j) { j["fps"] = -24.0; }),
       ErrorCode::NonPositive, {}},
      {"fps string", edit([](json& j) { j["fps"] = "24"; }),
       ErrorCode::SchemaViolation, {}},
      {"fps missing", edit([](json& j) { j.erase("fps"); }),
       ErrorCode::SchemaViolation, {}},
      {"frame_start after end", edit([](json& j) { j["frame_start"] = 4; }),
       ErrorCode::InvalidFrameRange, {}},
      {"frame_end before start", edit([](json& j) { j["frame_end"] = 0; }),
       ErrorCode::InvalidFrameRange, {}},
      {"frame_start real", edit([](json& j) { j["frame_start"] = 1.5; }),
       ErrorCode::SchemaViolation, {}},
      {"frame_end missing", edit([](json& j) { j.erase("frame_end"); }),
       ErrorCode::SchemaViolation, {}},
      {"render width zero", edit([](json& j) { j["render"]["width"] = 0; }),
       ErrorCode::NonPositive, {}},
      {"render height negative", edit([](json& j) { j["render"]["height"] = -1; }),
       ErrorCode::NonPositive, {}},
      {"render width real", edit([](json& j) { j["render"]["width"] = 19.5; }),
       ErrorCode::SchemaViolation, {}},
      {"render missing", edit([](json& j) { j.erase("render"); }),
       ErrorCode::SchemaViolation, {}},
      {"render not object", edit([](json& j) { j["render"] = json::array({1920, 1080}); }),
       ErrorCode::SchemaViolation, {}},
      {"camera_type unknown", edit([](json& j) { j["camera_type"] = "orthographic"; }),
       ErrorCode::SchemaViolation, {}},
      {"camera_type missing", edit([](json& j) { j.erase("camera_type"); }),
       ErrorCode::SchemaViolation, {}},
      {"real_scale zero", edit([](json& j) { j["real_scale"] = 0.0; }),
       ErrorCode::NonPositive, {}},
      {"real_scale negative", edit([](json& j) { j["real_scale"] = -1.0; }),
       ErrorCode::NonPositive, {}},
      {"real_scale string", edit([](json& j) { j["real_scale"] = "half"; }),
       ErrorCode::SchemaViolation, {}},
      {"camera missing", edit([](json& j) { j.erase("camera"); }),
       ErrorCode::SchemaViolation, {}},
      {"camera frames not array",
       edit([](json& j) { j["camera"]["frames"] = json::object(); }),
       ErrorCode::SchemaViolation, {}},
      {"camera frame 2 missing",
       edit([](json& j) { j["camera"]["frames"].erase(1); }),
       ErrorCode::FrameCoverageGap, 2},
      {"camera frames empty",
       edit([](json& j) { j["camera"]["frames"] = json::array(); }),
       ErrorCode::FrameCoverageGap, 1},
      {"nerf frame 2 missing",
       edit([](json& j) { j["nerf_object"]["frames"].erase(1); }),
       ErrorCode::FrameCoverageGap, 2},
      {"nerf last frame missing",
       edit([](json& j) { j["nerf_object"]["frames"].erase(2); }),
       ErrorCode::FrameCoverageGap, 3},
      {"camera frame duplicated",
       edit([](json& j) { j["camera"]["frames"][2]["frame"] = 2; }),
       ErrorCode::SchemaViolation, 2},
      {"nerf frames out of order",
       edit([](json& j) {
         std::swap(j["nerf_object"]["frames"][1], j["nerf_object"]["frames"][2]);
       }),
       ErrorCode::SchemaViolation, 2},
      {"camera frame outside range",
       edit([](json& j) { j["camera"]["frames"][2]["frame"] = 99; }),
       ErrorCode::SchemaViolation, 99},
      {"camera frame number real",
       edit([](json& j) { j["camera"]["frames"][0]["frame"] = 1.0; }),
       ErrorCode::SchemaViolation, {}},
      {"world too short",
       edit([](json& j) { j["camera"]["frames"][1]["world"].erase(15); }),
       ErrorCode::SchemaViolation, 2},
      {"world element string",
       edit([](json& j) { j["nerf_object"]["frames"][0]["world"][5] = "1"; }),
       ErrorCode::SchemaViolation, 1},
      {"world missing",
       edit([](json& j) { j["nerf_object"]["frames"][2].erase("world"); }),
       ErrorCode::SchemaViolation, 3},
      {"nerf bottom row not affine",
       edit([](json& j) { j["nerf_object"]["frames"][1]["world"][14] = 1.0; }),
       ErrorCode::NonAffineMatrix, 2},
      {"camera bottom row not affine",
       edit([](json& j) { j["camera"]["frames"][0]["world"][12] = 0.5; }),
       ErrorCode::NonAffineMatrix, 1},
      {"nerf singular",
       edit([singular](json& j) { j["nerf_object"]["frames"][2]["world"] = singular; }),
       ErrorCode::SingularMatrix, 3},
      {"camera singular",
       edit([singular](json& j) { j["camera"]["frames"][1]["world"] = singular; }),
       ErrorCode::SingularMatrix, 2},
      {"focal length zero",
       edit([](json& j) { j["camera"]["frames"][1]["focal_length_mm"] = 0.0; }),
       ErrorCode::NonPositive, 2},
      {"sensor width negative",
       edit([](json& j) { j["camera"]["frames"][0]["sensor_width_mm"] = -36.0; }),
       ErrorCode::NonPositive, 1},
      {"sensor height missing",
       edit([](json& j) { j["camera"]["frames"][2].erase("sensor_height_mm"); }),
       ErrorCode::SchemaViolation, 3},
      {"sensor fit unknown",
       edit([](json& j) { j["camera"]["frames"][0]["sensor_fit"] = "DIAGONAL"; }),
       ErrorCode::SchemaViolation, 1},
      {"sensor fit lowercase",
       edit([](json& j) { j["camera"]["frames"][0]["sensor_fit"] = "auto"; }),
       ErrorCode::SchemaViolation, 1},
      {"nerf name missing", edit([](json& j) { j["nerf_object"].erase("name"); }),
       ErrorCode::SchemaViolation, {}},
      {"nerf name number", edit([](json& j) { j["nerf_object"]["name"] = 7; }),
       ErrorCode::SchemaViolation, {}},
      {"nerf_object missing", edit([](json& j) { j.erase("nerf_object"); }),
       ErrorCode::SchemaViolation, {}},
      {"root is array", [](json j) { return json::array({j}).dump(); },
       ErrorCode::SchemaViolation, {}},
      {"truncated", [](json j) { auto s = j.dump(); return s.substr(0, s.size() / 2); },
       ErrorCode::MalformedDocument, {}},
      {"trailing garbage", [](json j) { return j.dump() + " }"; },
       ErrorCode::MalformedDocument, {}},
  };
}

}  // namespace nerfvfx::testing
