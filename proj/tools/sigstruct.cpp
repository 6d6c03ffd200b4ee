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

// sigstruct <command> [options]. Exit status: 0 pass, 1 fail, 2 error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sigstruct/commands.hpp"
#include "sigstruct/error.hpp"

#ifndef SIGSTRUCT_DEFAULT_MODELS_DIR
#define SIGSTRUCT_DEFAULT_MODELS_DIR "models"
#endif

namespace {

using sigstruct::CommandRequest;

struct Spec {
  const char* name;
  const char* help;
  std::vector<std::pair<const char*, const char*>> options;  // name, help
  bool model = true;
};

const std::vector<Spec>& Specs() {
  static const std::vector<Spec> specs = {
      {"validate", "parse and validate a model file", {}},
      {"dsep", "d-separation with a numeric cross-check",
       {{"x", "first variable set, comma separated"}, {"y", "second variable set"}, {"given", "conditioning set"}}},
      {"query", "posterior distribution", {{"targets", "query variables"}, {"evidence", "assignment a=1,b=0"}}},
      {"classify", "generated or interpreted signal pattern",
       {{"signals", "signal variables (default s1,s2)"}, {"outcome", "outcome variable (default v)"}}},
      {"affiliation", "lattice inequality check",
       {{"pair", "ordered variables, e.g. s1,s2,v"}, {"given", "conditioning assignment"}}},
      {"predict", "interpreted-signal predictions",
       {{"agent", "agent id or number (default all)"}, {"observed", "observed attribute states"}}},
      {"accuracy", "prediction accuracy and correctness correlation", {{"agent", "agent id or number"}}},
      {"qpn-propagate", "qualitative sign propagation",
       {{"preset", "QPN preset instead of --model"},
        {"node", "perturbed node"},
        {"direction", "sign of the change (default +)"},
        {"evidence", "observed nodes"},
        {"rewrite", "decisions to replace by a policy"},
        {"policy", "policy sign for --rewrite (default +)"}}},
      {"qpn-policy", "derive the monotonicity of a decision",
       {{"preset", "QPN preset instead of --model"},
        {"decision", "decision node (default b1)"},
        {"observation", "observed node (default s1)"},
        {"utility", "utility node (default u1)"}}},
      {"curse", "winner's curse, qualitative (qpn) or numeric (game)",
       {{"preset", "QPN preset instead of --model"},
        {"win", "win node (default w)"},
        {"value", "value node (default v1)"},
        {"evidence", "observed nodes (default s1,b1)"},
        {"rewrite", "decisions to replace by a policy"},
        {"policy", "policy sign for --rewrite (default +)"},
        {"player", "bidder number (default 1)"},
        {"signal", "own signal state (default all)"},
        {"bid", "own bid (default every grid bid)"},
        {"opponent", "opponent bid index per signal state"}}},
      {"solve-auction", "pure equilibria of a game",
       {{"symmetric", "restrict to symmetric profiles (true/false)"}, {"monotone", "restrict to monotone strategies"}}},
      {"theorem1", "best responses against the matched IPV game", {{"cap", "profile cap before sampling"}}},
      {"msr", "market scoring rule bluffing", {}},
      {"interaction", "information values and their interaction",
       {{"outcome", "outcome variable (default v)"}, {"signals", "two signal variables (default s1,s2)"}}},
      {"verify-paper", "run the acceptance suite", {{"models-dir", "bundled model directory"}}, false},
  };
  return specs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Causal structure of private signals: models, checks and solvers"};
  app.require_subcommand(1);
  std::string model, out, format = "text", only;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::map<std::string, std::map<std::string, std::string>> values;
  for (const Spec& spec : Specs()) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    if (spec.model) sub->add_option("--model", model, "model file");
    sub->add_option("--out", out, "also write the JSON report here");
    sub->add_option("--format", format, "stdout format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--only", only, "restrict verify-paper to one check");
    sub->add_option("--epsilon", epsilon, "equilibrium tolerance");
    sub->add_option("--seed", seed, "seed for randomized sweeps (default 0)");
    for (const auto& [name, help] : spec.options) {
      sub->add_option(std::string("--") + name, values[spec.name][name], help);
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  CommandRequest request;
  for (CLI::App* sub : app.get_subcommands()) request.command = sub->get_name();
  CLI::App* sub = app.get_subcommand(request.command);
  for (int k = 2; k < argc; ++k) request.echo.push_back(argv[k]);
  request.model = model;
  for (const auto& [name, value] : values[request.command]) {
    if (sub->count(std::string("--") + name) > 0) request.options[name] = value;
  }
  if (sub->count("--epsilon") > 0) request.epsilon = epsilon;
  request.seed = seed;
  request.only = only;
  request.models_dir = request.get("models-dir", SIGSTRUCT_DEFAULT_MODELS_DIR);

  sigstruct::Report report;
  try {
    report = sigstruct::run_command(request);
  } catch (const sigstruct::ModelError& e) {
    for (const auto& d : e.diagnostics()) std::fprintf(stderr, "error: %s: %s\n", d.location.c_str(), d.message.c_str());
    if (e.diagnostics().empty()) std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  std::cout << (format == "json" ? report.json() : report.text());
  if (!out.empty()) {
    std::ofstream file(out, std::ios::binary);
    if (!file) {
      std::fprintf(stderr, "error: cannot write %s\n", out.c_str());
      return 2;
    }
    file << report.json();
  }
  return report.pass() ? 0 : 1;
}
