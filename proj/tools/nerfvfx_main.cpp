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

// nerfvfx: align editor camera animation to a NeRF and composite its renders.
//
//   nerfvfx export-path --scene scene.json --out camera_path.json [--real-scale S]
//   nerfvfx validate --scene scene.json
//   nerfvfx composite over --fg rgb_{frame:04}.png --mask acc_{frame:04}.png
//       --bg plate_{frame:04}.png --out comp_{frame:04}.png --frames 1..120
//   nerfvfx composite shadow --mask shadow_{frame:04}.png --bg plate_{frame:04}.png
//       --out comp_{frame:04}.png --frames 1..120 [--strength 0.8]

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nerfvfx/cli.hpp"

int main(int argc, char** argv) {
  namespace cli = nerfvfx::cli;

  CLI::App app{"NeRF camera path export and render compositing"};
  app.require_subcommand(1);

  cli::ExportOptions export_opts;
  std::string export_scene, export_out;
  auto* export_cmd = app.add_subcommand(
      "export-path", "Write a renderer camera path aligned to the NeRF proxy");
  export_cmd->add_option("--scene", export_scene, "Interchange document")->required();
  export_cmd->add_option("--out", export_out, "Camera path output file")->required();
  export_cmd->add_option("--real-scale", export_opts.real_scale,
                         "Scene units to meters; overrides the document");

  std::string validate_scene;
  auto* validate = app.add_subcommand("validate", "Check an interchange document");
  validate->add_option("--scene", validate_scene, "Interchange document")->required();

  cli::CompositeOptions comp;
  std::string mode;
  auto* composite =
      app.add_subcommand("composite", "Composite numbered PNG sequences");
  composite->add_option("mode", mode, "over or shadow")
      ->required()
      ->check(CLI::IsMember({"over", "shadow"}));
  composite->add_option("--fg", comp.fg, "RGB render sequence (over)");
  composite->add_option("--mask", comp.mask,
                        "Accumulation (over) or shadow pass (shadow) sequence")
      ->required();
  composite->add_option("--bg", comp.bg, "Background plate sequence")->required();
  composite->add_option("--out", comp.out, "Output sequence")->required();
  composite->add_option("--frames", comp.frames, "Inclusive range A..B")->required();
  composite->add_option("--strength", comp.strength, "Shadow strength in [0, 1]");
  composite->add_option("--jobs", comp.jobs, "Parallel frames (0: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitInvalid;
  }

  if (*export_cmd) {
    export_opts.scene = export_scene;
    export_opts.out = export_out;
    return cli::export_path_cmd(export_opts, std::cerr);
  }
  if (*validate) return cli::validate_cmd(validate_scene, std::cerr);
  comp.mode = mode == "shadow" ? nerfvfx::CompositeMode::Shadow
                               : nerfvfx::CompositeMode::Over;
  return cli::composite_cmd(comp, std::cerr);
}
