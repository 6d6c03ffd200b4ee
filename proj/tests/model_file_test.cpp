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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "sigstruct/canonical.hpp"
#include "sigstruct/error.hpp"
#include "sigstruct/model_file.hpp"

namespace sigstruct {
namespace {

const std::filesystem::path kModels = SIGSTRUCT_MODELS_DIR;

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<Diagnostic> Problems(const std::string& text, const std::string& base = ".") {
  try {
    parse_model(text, base);
  } catch (const ModelError& e) {
    return e.diagnostics();
  }
  return {};
}

bool HasAt(const std::vector<Diagnostic>& d, const std::string& location) {
  for (const auto& x : d) {
    if (x.location == location) return true;
  }
  return false;
}

const char* kSmallNet = R"({
  "format_version": 1,
  "kind": "bayesnet",
  "variables": [
    {"id": "a", "states": ["0", "1"], "ordered": true},
    {"id": "b", "states": ["0", "1"], "ordered": true}
  ],
  "edges": [["a", "b"]],
  "cpts": [
    {"child": "a", "parents": [], "rows": [["0.5", "0.5"]]},
    {"child": "b", "parents": ["a"], "rows": [["0.9", "0.1"], ["0.2", "0.8"]]}
  ]
})";

std::string Replace(std::string s, const std::string& from, const std::string& to) {
  const auto at = s.find(from);
  REQUIRE(at != std::string::npos);
  return s.replace(at, from.size(), to);
}

TEST_CASE("every canonical model has a bundled fixture equal to its builder") {
  for (CanonicalId id : AllCanonicalIds()) {
    CAPTURE(CanonicalIdName(id));
    const auto path = kModels / CanonicalFixtureName(id);
    REQUIRE(std::filesystem::exists(path));
    ModelFile m = load_model(path.string());
    REQUIRE(m.kind() == ModelKind::kBayesNet);
    CHECK(structurally_equal(std::get<BayesNet>(m.body), build_canonical(id)));
    CHECK(serialize_model(ModelFile{build_canonical(id)}) == Slurp(path));
  }
}

TEST_CASE("bundled files round-trip byte for byte") {
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(kModels)) {
    if (entry.path().extension() != ".json") continue;
    CAPTURE(entry.path().string());
    const std::string text = Slurp(entry.path());
    ModelFile m = parse_model(text, kModels.string());
    CHECK(serialize_model(m) == text);
    ++files;
  }
  CHECK(files >= AllCanonicalIds().size() + 5);
}

TEST_CASE("bundled appendix_a.json joint") {
  ModelFile m = load_model((kModels / "appendix_a.json").string());
  const BayesNet& net = std::get<BayesNet>(m.body);
  for (const char* s1 : {"0", "1"}) {
    for (const char* s2 : {"0", "1"}) {
      for (const char* v : {"0", "1"}) {
        const bool on = (std::string(v) == "1") == (std::string(s1) == "1" || std::string(s2) == "1");
        CHECK(joint_probability(net, {{"s1", s1}, {"s2", s2}, {"v", v}}) == (on ? 0.25 : 0.0));
      }
    }
  }
}

TEST_CASE("compact input parses and serializes canonically") {
  ModelFile m = parse_model(kSmallNet);
  const std::string canonical = serialize_model(m);
  CHECK(serialize_model(parse_model(canonical)) == canonical);
  CHECK(structurally_equal(std::get<BayesNet>(m.body), std::get<BayesNet>(parse_model(canonical).body)));
}

TEST_CASE("bad rows and dangling references are located") {
  auto d = Problems(Replace(kSmallNet, R"(["0.2", "0.8"])", R"(["0.3", "0.8"])"));
  REQUIRE(d.size() == 1);
  CHECK(d[0].location == "cpts[1].rows[1]");
  CHECK(d[0].message.find("1.1") != std::string::npos);

  d = Problems(Replace(kSmallNet, R"([["a", "b"]])", R"([["a", "b"], ["c", "b"]])"));
  CHECK(HasAt(d, "edges[1]"));
  CHECK(d[0].message.find("'c'") != std::string::npos);

  d = Problems(Replace(kSmallNet, R"("parents": ["a"])", R"("parents": ["z"])"));
  CHECK(HasAt(d, "cpts[1].parents[0]"));

  d = Problems(Replace(kSmallNet, R"("0.9")", R"("0.9x")"));
  CHECK(HasAt(d, "cpts[1].rows[0][0]"));

  d = Problems(Replace(kSmallNet, R"(["0.9", "0.1"], )", ""));
  REQUIRE(!d.empty());
  CHECK(d[0].location == "cpts[1]");

  d = Problems(Replace(kSmallNet, R"("edges": [["a", "b"]])", R"("edges": [])"));
  CHECK(HasAt(d, "cpts[1]"));
}

TEST_CASE("envelope errors") {
  CHECK(HasAt(Problems(Replace(kSmallNet, R"("bayesnet")", R"("markov")")), "kind"));
  CHECK(HasAt(Problems(Replace(kSmallNet, R"("format_version": 1)", R"("format_version": 2)")), "format_version"));
  CHECK(HasAt(Problems(Replace(kSmallNet, R"("format_version": 1,)", "")), "format_version"));
  CHECK(HasAt(Problems(Replace(kSmallNet, R"("kind")", R"("colour": 1, "kind")")), "colour"));
  // The stray comma is on line 5.
  auto d = Problems(Replace(kSmallNet, R"("ordered": true},)", R"("ordered": true},,)"));
  REQUIRE(d.size() == 1);
  CAPTURE(d[0].location);
  CHECK(d[0].location.rfind("line 5, column", 0) == 0);
  CHECK_THROWS_AS(load_model((kModels / "no_such_file.json").string()), ModelError);
}

TEST_CASE("game and market files resolve their worlds") {
  ModelFile g = load_model((kModels / "fig1d_fpsb.json").string());
  REQUIRE(g.kind() == ModelKind::kGame);
  const GameSpec& spec = std::get<GameSpec>(g.body);
  CHECK(structurally_equal(spec.world.net, build_canonical(CanonicalId::kFig1d)));
  CHECK(spec.game().grids[0].size() == 6);
  CHECK(g.net().has_value());

  const auto dir = std::filesystem::temp_directory_path() / "sigstruct_model_file_test";
  std::filesystem::create_directories(dir);
  { std::ofstream(dir / "world.json") << kSmallNet; }
  const std::string msr = R"({"format_version": 1, "kind": "msr", "world": {"file": "world.json"},
      "outcome": "b", "signals": ["a", "a"], "stages": [2, 1]})";
  ModelFile m = parse_model(msr, dir.string());
  const MsrSpec& ms = std::get<MsrSpec>(m.body);
  CHECK(ms.world.file == std::optional<std::string>("world.json"));
  CHECK(ms.game.stages == std::vector<std::size_t>{1, 0});
  CHECK(serialize_model(parse_model(serialize_model(m), dir.string())) == serialize_model(m));

  CHECK(HasAt(Problems(Replace(msr, "world.json", "missing.json"), dir.string()), "world.file"));
  CHECK(HasAt(Problems(Replace(msr, R"([2, 1])", R"([3])"), dir.string()), "stages[0]"));
  CHECK(HasAt(Problems(Replace(msr, R"("b")", R"("q")"), dir.string()), "world"));

  const std::string game = Slurp(kModels / "fig1d_fpsb.json");
  CHECK(HasAt(Problems(Replace(game, R"("FPSB")", R"("Dutch")")), "payoff"));
  CHECK(HasAt(Problems(Replace(game, R"("Fig1d")", R"("Fig9")")), "world.canonical"));
  CHECK(HasAt(Problems(Replace(game, R"("0.2")", R"("0.9")")), "model"));  // grid unsorted
  std::filesystem::remove_all(dir);
}

TEST_CASE("qpn and interpreted files") {
  const std::string q = Slurp(kModels / "qpn_fig5.json");
  CHECK(HasAt(Problems(Replace(q, R"("decision")", R"("choice")")), "nodes[5].kind"));
  CHECK(HasAt(Problems(Replace(q, R"("from": "omega")", R"("from": "nowhere")")), "model"));

  ModelFile i = load_model((kModels / "appendix_a_interpreted.json").string());
  const auto& m = std::get<InterpretedModel>(i.body);
  const auto ref = AppendixAInterpreted();
  CHECK(m.outcome_of == ref.outcome_of);
  CHECK(m.space.prior() == ref.space.prior());
  REQUIRE(m.agents.size() == ref.agents.size());
  for (std::size_t k = 0; k < m.agents.size(); ++k) CHECK(m.agents[k].observed == ref.agents[k].observed);
  CHECK(i.net().has_value());
  const std::string text = Slurp(kModels / "appendix_a_interpreted.json");
  CHECK(HasAt(Problems(Replace(text, R"("lowest")", R"("middle")")), "tie_break"));
}

TEST_CASE("probability text reads back exactly") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    const double x = u(rng);
    CHECK(std::stod(FormatProbability(x)) == x);
  }
  CHECK(FormatProbability(0.25) == "0.25");
  CHECK(FormatProbability(1.0) == "1");
}

}  // namespace
}  // namespace sigstruct
