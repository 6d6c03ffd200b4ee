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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "sigstruct/commands.hpp"
#include "sigstruct/error.hpp"
#include "sigstruct/qpn.hpp"
#include "sigstruct/verify.hpp"

namespace sigstruct {
namespace {

const std::filesystem::path kModels = SIGSTRUCT_MODELS_DIR;
const std::filesystem::path kData = SIGSTRUCT_TEST_DATA_DIR;

CommandRequest Request(std::string command, std::string model, std::map<std::string, std::string> options = {}) {
  CommandRequest r;
  r.command = std::move(command);
  r.model = model.empty() ? "" : (kModels / model).string();
  r.options = std::move(options);
  r.models_dir = kModels.string();
  return r;
}

const Measure* Find(const Check& c, const std::string& name) {
  for (const auto& m : c.measures) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

std::string Value(const Check& c, const std::string& name) {
  const Measure* m = Find(c, name);
  REQUIRE(m != nullptr);
  return MeasureText(*m);
}

// Copy of the bundled models in a scratch directory.
std::filesystem::path ScratchModels() {
  const auto dir = std::filesystem::temp_directory_path() / "sigstruct_commands_test";
  std::filesystem::remove_all(dir);
  std::filesystem::copy(kModels, dir);
  return dir;
}

TEST_CASE("dsep on fig1d marginal independence") {
  Report r = run_command(Request("dsep", "fig1d.json", {{"x", "s1"}, {"y", "s2"}, {"given", ""}}));
  CHECK(r.pass());
  CHECK(Value(r.checks[0], "separated") == "true");
  Report v = run_command(Request("dsep", "fig1d.json", {{"x", "s1"}, {"y", "s2"}, {"given", "v1,v2"}}));
  CHECK(Value(v.checks[0], "separated") == "false");
}

TEST_CASE("affiliation witness on appendix_a.json") {
  Report r = run_command(Request("affiliation", "appendix_a.json", {{"pair", "s1,s2,v"}}));
  REQUIRE(r.checks.size() == 1);
  CHECK(Value(r.checks[0], "verdict") == "violated");
  CHECK(Value(r.checks[0], "witness").find("= 0 < 0.0625 (1/16) =") != std::string::npos);
  CHECK(r.pass());
}

TEST_CASE("verify-paper passes on a fresh checkout and filters") {
  CommandRequest all = Request("verify-paper", "");
  Report r = run_command(all);
  CHECK(r.pass());
  REQUIRE(r.checks.size() == CriterionIds().size());
  for (std::size_t k = 0; k < r.checks.size(); ++k) CHECK(r.checks[k].id == CriterionIds()[k]);

  all.only = "theorem1";
  Report one = run_command(all);
  REQUIRE(one.checks.size() == 1);
  CHECK(one.checks[0].id == "theorem1");
  all.only = "3";
  CHECK(run_command(all).checks[0].id == "theorem1");
  all.only = "theorem7";
  CHECK_THROWS_AS(run_command(all), ParameterError);
}

TEST_CASE("a perturbed AppendixA fixture fails the affiliation criterion") {
  const auto dir = ScratchModels();
  const auto path = dir / "appendix_a.json";
  std::string text;
  {
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    text = s.str();
  }
  // s1 = (0.48, 0.52) moves Pr(1,0;1) from 0.25 to 0.26.
  text.replace(text.find("\"0.5\""), 5, "\"0.48\"");
  text.replace(text.find("\"0.5\""), 5, "\"0.52\"");
  { std::ofstream(path, std::ios::binary) << text; }
  CommandRequest r = Request("verify-paper", "");
  r.models_dir = dir.string();
  Report report = run_command(r);
  CHECK_FALSE(report.pass());
  std::string first_failure;
  for (const auto& c : report.checks) {
    if (!c.pass && first_failure.empty()) first_failure = c.id;
  }
  CHECK(first_failure == "appendix-a");
  CHECK(Value(report.checks[0], "Pr(1,0;1)").rfind("0.26 ", 0) == 0);
  for (std::size_t k = 1; k < report.checks.size(); ++k) CHECK(report.checks[k].pass);
  std::filesystem::remove_all(dir);
}

TEST_CASE("reports are deterministic and text matches json") {
  CommandRequest r = Request("verify-paper", "");
  Report a = run_command(r), b = run_command(r);
  CHECK(a.text() == b.text());
  CHECK(a.json() == b.json());
  auto j = nlohmann::ordered_json::parse(a.json());
  CHECK(j["overall"] == "pass");
  REQUIRE(j["results"].size() == a.checks.size());
  for (std::size_t k = 0; k < a.checks.size(); ++k) {
    CHECK(j["results"][k]["id"] == a.checks[k].id);
    CHECK(j["results"][k]["measures"].size() == a.checks[k].measures.size());
  }
  r.seed = 7;
  CHECK(run_command(r).inputs_digest != a.inputs_digest);
}

TEST_CASE("validate locates file errors") {
  CommandRequest r = Request("validate", "");
  r.model = (kData / "bad_row.json").string();
  Report report = run_command(r);
  CHECK_FALSE(report.pass());
  CHECK(Value(report.checks[0], "problems") == "2");
  CHECK(Value(report.checks[0], "problem 1").rfind("edges[1]:", 0) == 0);
  CHECK(Value(report.checks[0], "problem 2").rfind("cpts[0].rows[0]: row sums to 1.1", 0) == 0);
  r.command = "dsep";
  r.options = {{"x", "s"}, {"y", "v"}};
  CHECK_THROWS_AS(run_command(r), ModelError);

  for (const auto& entry : std::filesystem::directory_iterator(kModels)) {
    CommandRequest ok = Request("validate", entry.path().filename().string());
    CHECK(run_command(ok).pass());
  }
}

TEST_CASE("theorem1 command passes on fig1d and fails on a common-value control") {
  CHECK(run_command(Request("theorem1", "fig1d_fpsb.json")).pass());
  const auto dir = ScratchModels();
  std::string text;
  {
    std::ifstream in(dir / "fig1d_fpsb.json");
    std::ostringstream s;
    s << in.rdbuf();
    text = s.str();
  }
  text.replace(text.find("\"Fig1d\""), 7, "\"Fig1a\"");
  { std::ofstream(dir / "fig1a_fpsb.json", std::ios::binary) << text; }
  CommandRequest r = Request("theorem1", "");
  r.model = (dir / "fig1a_fpsb.json").string();
  Report report = run_command(r);
  CHECK_FALSE(report.pass());
  CHECK(Value(report.checks[0], "equivalent") == "false");
  std::filesystem::remove_all(dir);
}

TEST_CASE("qpn commands agree with trail enumeration on every preset") {
  for (QpnPreset p : AllQpnPresets()) {
    CAPTURE(QpnPresetName(p));
    const Qpn q = build_qpn_preset(p);
    for (const auto& n : q.nodes()) {
      Report r = run_command(Request("qpn-propagate", "", {{"preset", QpnPresetName(p)}, {"node", n.id}}));
      CHECK(r.pass());
      if (n.id == "s1") {
        CHECK_THROWS_AS(run_command(Request("qpn-propagate", "", {{"preset", QpnPresetName(p)}, {"node", n.id}, {"evidence", "s1"}})),
                        std::invalid_argument);
        continue;
      }
      Report e = run_command(
          Request("qpn-propagate", "", {{"preset", QpnPresetName(p)}, {"node", n.id}, {"evidence", "s1"}, {"direction", "-"}}));
      CHECK(e.pass());
    }
    CHECK(Value(run_command(Request("qpn-policy", "", {{"preset", QpnPresetName(p)}})).checks[0], "sign") == "+");
  }
  Report curse = run_command(Request("curse", "qpn_fig5.json", {{"rewrite", "b2"}}));
  CHECK(Value(curse.checks[0], "curse") == "true");
  CHECK(Value(run_command(Request("curse", "qpn_fig5.json")).checks[0], "curse") == "false");
}

TEST_CASE("game, market and information commands") {
  CommandRequest s = Request("solve-auction", "fig1d_fpsb.json", {{"symmetric", "true"}});
  Report eq = run_command(s);
  CHECK(eq.pass());
  CHECK(Value(eq.checks[0], "equilibria") == "2");

  Report c = run_command(Request("curse", "fig1d_fpsb.json", {{"opponent", "1,3"}, {"signal", "1"}, {"bid", "0.4"}}));
  CHECK(std::fabs(std::get<double>(Find(c.checks[0], "s1=1, bid 0.4")->value)) <= 1e-12);
  CHECK_THROWS_AS(run_command(Request("curse", "fig1d_fpsb.json")), ParameterError);

  Report m = run_command(Request("msr", "appendix_a_msr.json"));
  CHECK(m.pass());
  CHECK(std::get<double>(Find(m.checks[0], "bluff gain")->value) > 0.1);
  CHECK(Value(m.checks[0], "stage order") == "A,B,A");

  CHECK(Value(run_command(Request("interaction", "appendix_a.json")).checks[0], "verdict") == "complements");
  CHECK(Value(run_command(Request("interaction", "fig4a.json")).checks[0], "verdict") == "substitutes");
  CHECK(Value(run_command(Request("classify", "fig2b.json", {{"signals", "phi1,phi2"}})).checks[0], "pattern") ==
        "interpreted");
  CHECK(Value(run_command(Request("classify", "fig4a.json")).checks[0], "pattern") == "generated");

  Report q = run_command(Request("query", "appendix_a.json", {{"targets", "v"}, {"evidence", "s1=1"}}));
  CHECK(Value(q.checks[0], "Pr(v=1)") == "1");
  Report p = run_command(Request("predict", "appendix_a_interpreted.json", {{"agent", "1"}, {"observed", "x1=0"}}));
  REQUIRE(p.checks.size() == 1);
  CHECK(p.checks[0].measures.size() == 1);
  Report acc = run_command(Request("accuracy", "appendix_a_interpreted.json"));
  CHECK(Value(acc.checks[0], "s1 accuracy") == "0.75 (3/4)");
  CHECK_THROWS_AS(run_command(Request("accuracy", "fig1d.json")), ParameterError);
  CHECK_THROWS_AS(run_command(Request("launch", "fig1d.json")), ParameterError);
}

}  // namespace
}  // namespace sigstruct
