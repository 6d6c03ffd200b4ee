// Copyright 2026 The sigstruct Authors
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

// Regenerates the bundled model files: gen_fixtures <models-dir>.

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <string>

#include "sigstruct/canonical.hpp"
#include "sigstruct/games.hpp"
#include "sigstruct/interpreted.hpp"
#include "sigstruct/model_file.hpp"
#include "sigstruct/qpn.hpp"

namespace {

using namespace sigstruct;

void Write(const std::filesystem::path& dir, const std::string& name, const ModelFile& m) {
  save_model(m, (dir / name).string());
  std::printf("wrote %s\n", (dir / name).string().c_str());
}

std::string Slug(std::string_view name) {
  std::string out;
  for (char c : name) out += c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: gen_fixtures <models-dir>\n");
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  for (CanonicalId id : AllCanonicalIds()) Write(dir, CanonicalFixtureName(id), ModelFile{build_canonical(id)});
  Write(dir, "appendix_a_interpreted.json", ModelFile{AppendixAInterpreted()});
  for (QpnPreset p : AllQpnPresets()) Write(dir, "qpn_" + Slug(QpnPresetName(p)) + ".json", ModelFile{build_qpn_preset(p)});

  GameSpec game;
  game.world.canonical = CanonicalModel{CanonicalId::kFig1d, {}};
  game.world.net = build_canonical(*game.world.canonical);
  game.payoff = AuctionKind::kFpsb;
  game.grids = {uniform_grid(0.0, 1.0, 6), uniform_grid(0.0, 1.0, 6)};
  BayesianGame resolved = game.game();
  game.signals = resolved.signals;
  game.values = resolved.values;
  Write(dir, "fig1d_fpsb.json", ModelFile{game});

  MsrSpec msr;
  msr.world.canonical = CanonicalModel{CanonicalId::kAppendixA, {}};
  msr.world.net = build_canonical(*msr.world.canonical);
  msr.game.world = msr.world.net;
  Write(dir, "appendix_a_msr.json", ModelFile{msr});
  return 0;
}
