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

// JSON model files. Probabilities are decimal strings, field order is fixed,
// and serialize(parse(text)) == text for canonically formatted input. The
// format is documented in docs/model_format.md.

#ifndef SIGSTRUCT_MODEL_FILE_HPP_
#define SIGSTRUCT_MODEL_FILE_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sigstruct/bayesnet.hpp"
#include "sigstruct/canonical.hpp"
#include "sigstruct/games.hpp"
#include "sigstruct/interpreted.hpp"
#include "sigstruct/market.hpp"
#include "sigstruct/qpn.hpp"

namespace sigstruct {

inline constexpr int kFormatVersion = 1;

enum class ModelKind { kBayesNet, kInterpreted, kQpn, kGame, kMsr };
const char* ModelKindName(ModelKind k);

// A world used by game and market files: a canonical builder, an inline
// net, or another bayesnet file (path relative to the referring file).
struct WorldSpec {
  std::optional<CanonicalModel> canonical;
  std::optional<std::string> file;
  BayesNet net;  // resolved
};

struct GameSpec {
  WorldSpec world;
  AuctionKind payoff = AuctionKind::kFpsb;
  std::vector<std::string> signals;
  std::vector<std::string> values;
  std::vector<std::vector<double>> grids;

  BayesianGame game() const;
};

struct MsrSpec {
  WorldSpec world;
  MsrGame game;  // game.world mirrors world.net
};

struct ModelFile {
  std::variant<BayesNet, InterpretedModel, Qpn, GameSpec, MsrSpec> body;

  ModelKind kind() const { return static_cast<ModelKind>(body.index()); }
  // The Bayes net a command can query: the net itself, the interpreted
  // model's net, or the world of a game or market file.
  std::optional<BayesNet> net() const;
};

// Throws ModelError listing every problem with its location. `base_dir`
// resolves world file references.
ModelFile parse_model(std::string_view text, const std::string& base_dir = ".");
ModelFile load_model(const std::string& path);

std::string serialize_model(const ModelFile& model);
void save_model(const ModelFile& model, const std::string& path);

// Same variables, states, order flags, edges and CPT entries.
bool structurally_equal(const BayesNet& a, const BayesNet& b);

// Bundled fixture file name for a canonical model, e.g. "appendix_a.json".
std::string CanonicalFixtureName(CanonicalId id);

// Shortest decimal text that reads back to the same double.
std::string FormatProbability(double x);

}  // namespace sigstruct

#endif  // SIGSTRUCT_MODEL_FILE_HPP_
