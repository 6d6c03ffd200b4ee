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

#include "sigstruct/verify.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sigstruct/canonical.hpp"
#include "sigstruct/error.hpp"
#include "sigstruct/fingerprints.hpp"
#include "sigstruct/games.hpp"
#include "sigstruct/info.hpp"
#include "sigstruct/interpreted.hpp"
#include "sigstruct/market.hpp"
#include "sigstruct/model_file.hpp"
#include "sigstruct/properties.hpp"
#include "sigstruct/qpn.hpp"
#include "sigstruct/structure_checks.hpp"

namespace sigstruct {
namespace {

constexpr double kOracleTolerance = 1e-9;
// Bluff gains at or below this count as zero; well above the rounding of
// sums of a few dozen log terms.
constexpr double kMenuEpsilon = 1e-9;

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ModelError(std::vector<Diagnostic>{{p.string(), "cannot open file"}});
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string Bids(const std::vector<double>& grid, const Strategy& s) {
  std::string out = "(";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? ", " : "") + FormatNumber(grid[s[k]]);
  return out + ")";
}

std::string Point(const std::vector<std::size_t>& x) {
  std::string out = "(";
  for (std::size_t k = 0; k < x.size(); ++k) out += (k ? "," : "") + std::to_string(x[k]);
  return out + ")";
}

Check AppendixA(const VerifyOptions& o, std::string* inputs) {
  Check c = MakeCheck("appendix-a", "AppendixA joint is exact and violates affiliation");
  c.tolerance = "exact in doubles";
  const auto path = std::filesystem::path(o.models_dir) / CanonicalFixtureName(CanonicalId::kAppendixA);
  BayesNet fixture;
  try {
    const std::string text = Slurp(path);
    if (inputs) *inputs += text;
    fixture = std::get<BayesNet>(parse_model(text, o.models_dir).body);
  } catch (const ModelError& e) {
    c.require(false, "cannot load " + path.string() + ": " + e.what());
    return c;
  }
  const BayesNet builtin = build_canonical(CanonicalId::kAppendixA);
  c.require(structurally_equal(fixture, builtin), "bundled fixture differs from the built-in model");
  for (const BayesNet* net : std::initializer_list<const BayesNet*>{&builtin, &fixture}) {
    const char* which = net == &builtin ? "built-in" : "fixture";
    for (int s1 = 0; s1 < 2; ++s1) {
      for (int s2 = 0; s2 < 2; ++s2) {
        for (int v = 0; v < 2; ++v) {
          const double p = joint_probability(
              *net, {{"s1", std::to_string(s1)}, {"s2", std::to_string(s2)}, {"v", std::to_string(v)}});
          const double expected = (v == 1) == (s1 == 1 || s2 == 1) ? 0.25 : 0.0;
          const std::string name = "Pr(" + std::to_string(s1) + "," + std::to_string(s2) + ";" + std::to_string(v) + ")";
          if (net == &fixture && expected > 0.0) c.add(name, p);
          c.require(p == expected, std::string(which) + " " + name + " = " + FormatNumber(p) + ", expected " +
                                       FormatNumber(expected));
        }
      }
    }
  }
  AffiliationReport a = check_affiliation(fixture, {"s1", "s2", "v"});
  c.add("affiliation", AffiliationVerdictName(a.verdict));
  c.require(a.verdict == AffiliationVerdict::kViolated, "affiliation is not violated");
  if (a.witness) {
    const auto& w = *a.witness;
    c.add("witness", "Pr" + Point(w.join) + " Pr" + Point(w.meet) + " = " + FormatFraction(w.lhs) + " < " +
                         FormatFraction(w.rhs) + " = Pr" + Point(w.x) + " Pr" + Point(w.y));
    c.require(w.lhs == 0.0 && w.rhs == 1.0 / 16, "witness is not 0 < 1/16");
  }
  return c;
}

Check Fingerprints() {
  Check c = MakeCheck("fingerprints", "canonical d-separation statements and numeric CI agree");
  c.tolerance = "numeric CI within 1e-9";
  std::size_t statements = 0;
  double worst_separated = 0.0;
  for (CanonicalId id : {CanonicalId::kFig1a, CanonicalId::kFig1b, CanonicalId::kFig1c, CanonicalId::kFig1d,
                         CanonicalId::kFig2a, CanonicalId::kFig2b, CanonicalId::kFig4a, CanonicalId::kFig4b}) {
    FingerprintCheck f = check_fingerprint(id);
    const auto& golden = GoldenFingerprint(id);
    const std::string name(CanonicalIdName(id));
    c.require(f.edges_match, name + ": arcs differ from the golden list");
    for (std::size_t k = 0; k < golden.statements.size(); ++k) {
      ++statements;
      const std::string s = name + ": " + FormatStatement(golden.statements[k]);
      c.require(f.dsep_matches[k], s + " fails by d-separation");
      c.require(f.numeric_matches[k], s + " fails numerically");
      if (golden.statements[k].separated) worst_separated = std::max(worst_separated, f.deviations[k]);
    }
  }
  c.add("structures", 8).add("statements", statements).add("max deviation on separated statements", worst_separated);
  return c;
}

Check Theorem1() {
  Check c = MakeCheck("theorem1", "separable payoffs with pair-independent signals are strategically IPV");
  c.tolerance = "argmax within 1e-12";
  const std::vector<double> grid = uniform_grid(0.0, 1.0, 6);
  BayesianGame full = make_auction(AuctionKind::kFpsb, build_canonical(CanonicalId::kFig1d), {grid, grid});
  BayesianGame ipv = marginalize_to_ipv(full);
  Theorem1Report r = check_theorem1(full, ipv);
  c.add("profiles checked", static_cast<std::size_t>(r.profiles_checked)).add("exhaustive", r.exhaustive);
  c.require(r.exhaustive, "Fig1d comparison was sampled");
  c.require(r.equivalent, "Fig1d best responses differ: " + r.detail);
  double gap = 0.0;
  for (const Strategy& o : monotone_strategies(2, grid.size())) gap = std::max(gap, factorization_gap(full, {o, o}, 0));
  c.add("max factorization gap", gap);
  c.require(gap <= 1e-12, "conditional expectation does not factor");

  BayesianGame control = make_auction(AuctionKind::kFpsb, build_canonical(CanonicalId::kFig1a), {grid, grid});
  Theorem1Report k = check_theorem1(control, marginalize_to_ipv(control));
  c.add("Fig1a control equivalent", k.equivalent);
  c.require(!k.equivalent, "Fig1a control is unexpectedly equivalent");
  if (!k.equivalent) c.add("Fig1a witness", k.detail);
  return c;
}

Check Theorem5Qualitative() {
  Check c = MakeCheck("theorem5-qualitative", "QPN policy monotonicity and winner's curse");
  c.tolerance = "exact sign algebra";
  const std::set<std::string> evidence = {"s1", "b1"};
  const Qpn fig5 = build_qpn_preset(QpnPreset::kFig5);
  PolicyDerivation d = derive_policy_monotonicity(fig5, "b1", "s1", "u1");
  c.add("Fig5 policy sign b1(s1)", SignSymbol(d.sign));
  c.require(d.sign == Sign::kPlus, "Fig5 policy is not increasing: " + d.diagnostic);
  struct Case {
    QpnPreset preset;
    const char* value;
    bool curse;
  };
  for (const Case& k : {Case{QpnPreset::kFig5, "v1", true}, Case{QpnPreset::kFig5Ipv, "v1", false},
                        Case{QpnPreset::kFig6, "v", true}}) {
    const Qpn rewritten = apply_policy(build_qpn_preset(k.preset), "b2", d.sign);
    CurseResult r = winners_curse(rewritten, "w", k.value, evidence);
    const std::string name = std::string(QpnPresetName(k.preset)) + " curse";
    c.add(name, r.curse).add(name + " sign", SignSymbol(r.sign));
    c.require(r.curse == k.curse, name + " is " + (r.curse ? "true" : "false"));
  }
  return c;
}

Check Theorem5Numeric() {
  Check c = MakeCheck("theorem5-numeric", "quantified interdependent FPSB: monotone replies, curse, lower bids");
  c.tolerance = "one grid step (0.1); argmax within 1e-12";
  const std::vector<double> grid = uniform_grid(0.0, 1.0, 11);
  BayesianGame g = make_auction(AuctionKind::kFpsb, build_canonical(CanonicalId::kFig5chance), {grid, grid});
  const auto opponents = monotone_strategies(3, grid.size());
  // (a) the best-response correspondence ascends in the strong set order.
  std::size_t ascending = 0;
  for (const auto& o : opponents) {
    BestResponseSet br = best_responses(g, {Strategy(3, 0), o}, 0);
    bool ok = is_monotone(br.lowest()) && is_monotone(br.highest());
    ascending += ok;
    c.require(ok, "best reply to " + Bids(grid, o) + " is not ascending");
  }
  c.add("monotone opponent profiles", opponents.size()).add("ascending best replies", ascending);
  // (b) winning lowers the expected value unless the win share is flat.
  std::size_t negative = 0, flat = 0, undefined = 0;
  double largest = -1.0;
  const Distribution opp = marginal(g.world, {g.signals[1]});
  for (const auto& o : opponents) {
    for (std::size_t s = 0; s < 3; ++s) {
      for (double bid : grid) {
        WinnersCurse w = measure_winners_curse(g, 0, s, {Strategy(3, 0), o}, bid);
        if (!w.defined) {
          ++undefined;
          continue;
        }
        bool varies = false;
        for (std::size_t t = 1; t < 3; ++t) {
          if (opp.table[t] > 0.0) varies = varies || win_share(bid, {grid[o[t]]}) != win_share(bid, {grid[o[0]]});
        }
        largest = std::max(largest, w.curse);
        if (varies) {
          negative += w.curse < 0.0;
          c.require(w.curse < 0.0, "no curse at signal " + std::to_string(s) + ", bid " + FormatNumber(bid) +
                                       " against " + Bids(grid, o));
        } else {
          ++flat;
          c.require(std::fabs(w.curse) <= 1e-12, "flat win share moved the value estimate");
        }
      }
    }
  }
  c.add("curse cases", negative).add("flat win share cases", flat).add("never winning cases", undefined);
  c.add("largest E[v1|s1,win] - E[v1|s1]", largest);
  // (c) interdependent equilibrium bids sit below the matched IPV ones.
  auto inter = find_symmetric_equilibria(g, 0.0, true);
  auto priv = find_symmetric_equilibria(marginalize_to_ipv(g), 0.0, true);
  c.require(!inter.empty() && !priv.empty(), "no monotone symmetric equilibrium");
  if (inter.empty() || priv.empty()) return c;
  c.add("interdependent equilibrium", Bids(grid, inter[0])).add("matched IPV equilibrium", Bids(grid, priv[0]));
  c.add("interdependent equilibria", inter.size()).add("IPV equilibria", priv.size());
  const double step = grid[1] - grid[0];
  for (const auto& a : inter) {
    for (const auto& b : priv) {
      bool strict = false;
      for (std::size_t s = 0; s < 3; ++s) {
        c.require(grid[a[s]] <= grid[b[s]] + step * 1e-9, Bids(grid, a) + " bids above " + Bids(grid, b));
        strict = strict || grid[a[s]] < grid[b[s]];
      }
      c.require(strict, Bids(grid, a) + " never bids strictly below " + Bids(grid, b));
    }
  }
  return c;
}

Check CorrectnessCorrelation() {
  Check c = MakeCheck("correctness-correlation", "independent balanced informative predictions err together less");
  c.tolerance = "covariance <= 1e-12";
  CorrelationSweep s = sweep_correctness_correlation(3);
  c.add("models", s.models_checked).add("qualifying", s.qualifying).add("max covariance", s.max_covariance);
  if (s.max_coefficient) c.add("max correlation", *s.max_coefficient);
  c.require(s.qualifying > 0, "no model meets the premises");
  c.require(s.max_covariance <= 1e-12, "positive correctness covariance");
  return c;
}

Check CiUniqueness() {
  Check c = MakeCheck("ci-uniqueness", "conditionally independent interpretations miss distinct attributes");
  c.tolerance = "exact counting";
  for (unsigned k : {2u, 3u}) {
    CiSearchResult r = search_ci_outcome_functions(k);
    c.add("K=" + std::to_string(k) + " configurations", r.configurations.size());
    for (const auto& config : r.configurations) {
      const bool ok = static_cast<unsigned>(__builtin_popcount(config.masks[0])) == k - 1 &&
                      static_cast<unsigned>(__builtin_popcount(config.masks[1])) == k - 1 &&
                      config.masks[0] != config.masks[1];
      c.require(ok, "K=" + std::to_string(k) + " configuration with masks " + std::to_string(config.masks[0]) + ", " +
                        std::to_string(config.masks[1]) + " breaks the condition");
    }
    if (k == 3) c.require(!r.configurations.empty(), "K=3 search is empty");
  }
  return c;
}

Check InterpretationBound() {
  Check c = MakeCheck("interpretation-bound", "two independent interpretations need four states");
  c.tolerance = "exact, factorization within 1e-12";
  InterpretationSearch s = search_independent_interpretations(2, 8);
  for (std::size_t n = 2; n < 4; ++n) c.require(!find_independent_partitions(2, n), "witness below four states");
  c.add("minimal states", s.minimal_states ? static_cast<int>(*s.minimal_states) : -1);
  c.require(s.minimal_states == 4u, "minimal state count is not 4");
  if (s.witness) c.require(mutually_independent(*s.witness), "witness does not factorize");
  return c;
}

Check MsrDichotomy() {
  Check c = MakeCheck("msr-dichotomy", "complements invite bluffing, substitutes do not");
  c.tolerance = "oracle 1e-9; bluff gain <= 1e-9 counts as zero";
  c.detail = "stage order A,B,A is this artifact's default";
  struct World {
    CanonicalId id;
    Interaction expected;
  };
  for (const World& w : {World{CanonicalId::kAppendixA, Interaction::kComplements},
                         World{CanonicalId::kFig4a, Interaction::kSubstitutes}}) {
    const std::string name(CanonicalIdName(w.id));
    const BayesNet net = build_canonical(w.id);
    InteractionReport r = signal_interaction(net, "v");
    c.add(name + " V1", r.v1).add(name + " V2", r.v2).add(name + " V12", r.v12);
    c.add(name + " interaction", InteractionName(r.verdict));
    c.require(r.verdict == w.expected, name + " is " + InteractionName(r.verdict));
    const double oracle[3] = {mutual_information_by_entropies(net, {"v"}, {"s1"}),
                              mutual_information_by_entropies(net, {"v"}, {"s2"}),
                              mutual_information_by_entropies(net, {"v"}, {"s1", "s2"})};
    c.require(std::fabs(r.v1 - oracle[0]) <= kOracleTolerance && std::fabs(r.v2 - oracle[1]) <= kOracleTolerance &&
                  std::fabs(r.v12 - oracle[2]) <= kOracleTolerance,
              name + " information values differ from the entropy oracle");
    MsrGame g;
    g.world = net;
    MsrSolution s = solve_msr(g);
    c.add(name + " bluff gain", s.bluff_gain);
    if (w.expected == Interaction::kComplements) {
      c.require(s.bluff_gain > kMenuEpsilon, name + " shows no bluffing");
    } else {
      c.require(s.bluff_gain <= kMenuEpsilon, name + " shows bluffing");
    }
  }
  double single = 0.0;
  for (CanonicalId id : {CanonicalId::kAppendixA, CanonicalId::kFig4a, CanonicalId::kFig4b}) {
    for (std::size_t agent : {0u, 1u}) {
      MsrGame g;
      g.world = build_canonical(id);
      g.stages = {agent};
      single = std::max(single, std::fabs(solve_msr(g).bluff_gain));
    }
  }
  c.add("max single-round bluff gain", single);
  c.require(single == 0.0, "single-round report is not truthful");
  return c;
}

Check Infrastructure(const VerifyOptions& o, std::string* inputs) {
  Check c = MakeCheck("infrastructure", "factorization, d-separation soundness, blankets, signs, round trip");
  c.tolerance = "1e-9";
  c.add("seed", static_cast<std::size_t>(o.seed));
  struct Named {
    const char* name;
    PropertyResult result;
  };
  for (const Named& p : {Named{"factorization", check_factorization(o.seed)},
                         Named{"d-separation implies CI", check_dsep_soundness(o.seed)},
                         Named{"Markov blanket", check_blanket_sufficiency(o.seed)},
                         Named{"sign laws", check_sign_laws()}, Named{"round trip", check_round_trip(o.seed)}}) {
    c.add(std::string(p.name) + " cases", p.result.cases);
    c.require(p.result.holds, std::string(p.name) + ": " + p.result.counterexample);
  }
  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_directory(o.models_dir)) {
    for (const auto& e : std::filesystem::directory_iterator(o.models_dir)) {
      if (e.path().extension() == ".json") files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    const std::string text = Slurp(f);
    if (inputs) *inputs += text;
    try {
      c.require(serialize_model(parse_model(text, o.models_dir)) == text, f.filename().string() + " does not round-trip");
    } catch (const ModelError& e) {
      c.require(false, f.filename().string() + ": " + e.what());
    }
  }
  c.add("bundled files", files.size());
  for (CanonicalId id : AllCanonicalIds()) {
    const auto path = std::filesystem::path(o.models_dir) / CanonicalFixtureName(id);
    c.require(std::filesystem::exists(path), "missing fixture " + path.filename().string());
  }
  return c;
}

}  // namespace

const std::vector<std::string>& CriterionIds() {
  static const std::vector<std::string> ids = {
      "appendix-a",  "fingerprints",  "theorem1", "theorem5-qualitative", "theorem5-numeric", "correctness-correlation",
      "ci-uniqueness", "interpretation-bound", "msr-dichotomy", "infrastructure"};
  return ids;
}

Check run_criterion(std::size_t index, const VerifyOptions& o, std::string* inputs) {
  try {
    switch (index) {
      case 0: return AppendixA(o, inputs);
      case 1: return Fingerprints();
      case 2: return Theorem1();
      case 3: return Theorem5Qualitative();
      case 4: return Theorem5Numeric();
      case 5: return CorrectnessCorrelation();
      case 6: return CiUniqueness();
      case 7: return InterpretationBound();
      case 8: return MsrDichotomy();
      case 9: return Infrastructure(o, inputs);
    }
  } catch (const std::exception& e) {
    Check c = MakeCheck(CriterionIds().at(index), "raised an error");
    c.require(false, e.what());
    return c;
  }
  throw ParameterError("criterion index out of range");
}

Report verify_paper(const VerifyOptions& o) {
  const auto& ids = CriterionIds();
  std::vector<std::size_t> selected;
  if (o.only.empty()) {
    for (std::size_t k = 0; k < ids.size(); ++k) selected.push_back(k);
  } else {
    auto it = std::find(ids.begin(), ids.end(), o.only);
    if (it != ids.end()) {
      selected.push_back(static_cast<std::size_t>(it - ids.begin()));
    } else if (!o.only.empty() && std::all_of(o.only.begin(), o.only.end(), ::isdigit) && std::stoul(o.only) >= 1 &&
               std::stoul(o.only) <= ids.size()) {
      selected.push_back(std::stoul(o.only) - 1);
    } else {
      std::string known;
      for (const auto& id : ids) known += (known.empty() ? "" : ", ") + id;
      throw ParameterError("unknown check '" + o.only + "'; expected one of " + known);
    }
  }
  Report r;
  std::string inputs = "seed=" + std::to_string(o.seed) + ";only=" + o.only + ";";
  for (std::size_t k : selected) r.checks.push_back(run_criterion(k, o, &inputs));
  r.inputs_digest = Fnv1a(inputs);
  return r;
}

}  // namespace sigstruct
