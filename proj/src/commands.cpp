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

#include "sigstruct/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "sigstruct/error.hpp"
#include "sigstruct/games.hpp"
#include "sigstruct/info.hpp"
#include "sigstruct/market.hpp"
#include "sigstruct/model_file.hpp"
#include "sigstruct/qpn.hpp"
#include "sigstruct/structure_checks.hpp"
#include "sigstruct/verify.hpp"

namespace sigstruct {
namespace {

constexpr double kSumTolerance = 1e-9;
constexpr double kOracleTolerance = 1e-9;

struct Loaded {
  std::string bytes;
  ModelFile model;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError(std::vector<Diagnostic>{{path, "cannot open file"}});
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string BaseDir(const std::string& path) {
  const std::string dir = std::filesystem::path(path).parent_path().string();
  return dir.empty() ? "." : dir;
}

Loaded Load(const CommandRequest& r) {
  if (r.model.empty()) throw ParameterError(r.command + " needs --model <path>");
  Loaded l;
  l.bytes = ReadFile(r.model);
  l.model = parse_model(l.bytes, BaseDir(r.model));
  return l;
}

BayesNet NetOf(const ModelFile& m) {
  auto net = m.net();
  if (!net) throw ParameterError(std::string("a ") + ModelKindName(m.kind()) + " model has no Bayes net to query");
  return *net;
}

std::string Join(const std::vector<std::string>& v, const char* sep = ",") {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : sep) + s;
  return out;
}

std::string Join(const VariableSet& v) { return "{" + Join(std::vector<std::string>(v.begin(), v.end())) + "}"; }

std::string Condition(const Assignment& a) {
  std::string out;
  for (const auto& [k, v] : a) out += (out.empty() ? "" : ",") + k + "=" + v;
  return out;
}

VariableSet SetOf(const std::string& text) {
  auto v = split_list(text);
  return VariableSet(v.begin(), v.end());
}

double ParseDouble(const std::string& text, const std::string& what) {
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || ptr != text.data() + text.size()) throw ParameterError(what + " '" + text + "' is not a number");
  return x;
}

std::size_t ParseIndex(const std::string& text, const std::string& what) {
  std::size_t x = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || ptr != text.data() + text.size()) throw ParameterError(what + " '" + text + "' is not an index");
  return x;
}

bool ParseBool(const std::string& text, const std::string& what) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ParameterError(what + " '" + text + "' is not true or false");
}

std::string BidText(const BayesianGame& g, std::size_t player, const Strategy& s) {
  std::vector<std::string> bids;
  for (double b : strategy_bids(g, player, s)) bids.push_back(FormatNumber(b));
  return "(" + Join(bids, ", ") + ")";
}

std::string ProfileText(const BayesianGame& g, const StrategyProfile& p) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < p.size(); ++i) parts.push_back(BidText(g, i, p[i]));
  return Join(parts, " | ");
}

// ---------------------------------------------------------------------------

Report Validate(const CommandRequest& r) {
  Report out;
  Check c = MakeCheck("schema", "model file parses and validates");
  try {
    Loaded l = Load(r);
    out.inputs_digest = Fnv1a(l.bytes);
    const ModelFile& m = l.model;
    c.add("kind", ModelKindName(m.kind())).add("format_version", kFormatVersion);
    switch (m.kind()) {
      case ModelKind::kBayesNet:
      case ModelKind::kInterpreted:
      case ModelKind::kGame:
      case ModelKind::kMsr: {
        BayesNet net = NetOf(m);
        c.add("variables", net.size()).add("edges", net.edges().size());
        break;
      }
      case ModelKind::kQpn: {
        const auto& q = std::get<Qpn>(m.body);
        c.add("nodes", q.nodes().size()).add("edges", q.edges().size()).add("synergies", q.synergies().size());
        break;
      }
    }
    c.require(serialize_model(parse_model(serialize_model(m), BaseDir(r.model))) == serialize_model(m),
              "model does not round-trip");
  } catch (const ModelError& e) {
    c.add("problems", e.diagnostics().size());
    std::size_t k = 0;
    for (const auto& d : e.diagnostics()) {
      c.add("problem " + std::to_string(++k), (d.location.empty() ? "" : d.location + ": ") + d.message);
    }
    c.require(false, e.diagnostics().empty() ? e.what() : e.diagnostics()[0].location + ": " + e.diagnostics()[0].message);
    if (out.inputs_digest.empty() && std::filesystem::exists(r.model)) out.inputs_digest = Fnv1a(ReadFile(r.model));
  }
  out.checks.push_back(c);
  return out;
}

Report Dsep(const CommandRequest& r, const Loaded& l) {
  const BayesNet net = NetOf(l.model);
  const VariableSet x = SetOf(r.get("x")), y = SetOf(r.get("y")), z = SetOf(r.get("given"));
  if (x.empty() || y.empty()) throw ParameterError("dsep needs --x and --y");
  Check c = MakeCheck("dsep", Join(x) + " _||_ " + Join(y) + " | " + Join(z));
  const bool sep = d_separated(net, x, y, z);
  c.add("separated", sep);
  try {
    IndependenceResult ci = check_independence(net, x, y, z);
    c.add("numerically independent", ci.independent).add("max deviation", ci.max_deviation);
    c.tolerance = "numeric CI within 1e-9";
    c.require(!sep || ci.independent, "d-separated but numerically dependent");
  } catch (const CapExceededError& e) {
    c.detail = std::string("numeric check skipped: ") + e.what();
  }
  Report out;
  out.checks.push_back(c);
  return out;
}

Report Query(const CommandRequest& r, const Loaded& l) {
  const BayesNet net = NetOf(l.model);
  const auto targets = split_list(r.get("targets"));
  if (targets.empty()) throw ParameterError("query needs --targets");
  const Assignment evidence = parse_assignment(r.get("evidence"));
  Distribution d = query(net, targets, evidence);
  Check c = MakeCheck("query", "Pr(" + Join(targets) + (evidence.empty() ? "" : " | " + Condition(evidence)) + ")");
  c.tolerance = "sum within 1e-9";
  double sum = 0.0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    const auto st = d.decode(k);
    std::vector<std::string> cell;
    for (std::size_t t = 0; t < targets.size(); ++t) cell.push_back(targets[t] + "=" + d.labels[t][st[t]]);
    c.add("Pr(" + Join(cell) + ")", d.table[k]);
    sum += d.table[k];
  }
  c.require(std::fabs(sum - 1.0) <= kSumTolerance, "distribution sums to " + FormatNumber(sum));
  Report out;
  out.checks.push_back(c);
  return out;
}

Report Classify(const CommandRequest& r, const Loaded& l) {
  const BayesNet net = NetOf(l.model);
  const auto signals = split_list(r.get("signals", "s1,s2"));
  const std::string outcome = r.get("outcome", "v");
  Classification k = classify(net, signals, outcome);
  Check c = MakeCheck("classify", "signal pattern of " + Join(signals) + " around " + outcome);
  c.add("pattern", SignalPatternName(k.pattern));
  std::vector<std::string> open;
  for (const auto& [a, b] : k.open_pairs) open.push_back(a + "~" + b);
  c.add("pairs dependent given the outcome", open.empty() ? std::string("none") : Join(open, ", "));
  c.require((k.pattern == SignalPattern::kGenerated) == open.empty(), "pattern disagrees with the open pairs");
  Report out;
  out.checks.push_back(c);
  return out;
}

Report Affiliation(const CommandRequest& r, const Loaded& l) {
  const BayesNet net = NetOf(l.model);
  const auto vars = split_list(r.get("pair"));
  if (vars.size() < 2) throw ParameterError("affiliation needs --pair with at least two variables");
  const Assignment given = parse_assignment(r.get("given"));
  AffiliationReport a = check_affiliation(net, vars, given);
  Check c = MakeCheck("affiliation", "lattice inequality over (" + Join(vars) + ")" +
                                         (given.empty() ? "" : " given " + Condition(given)));
  c.add("verdict", AffiliationVerdictName(a.verdict)).add("instances", a.instances_checked);
  if (a.witness) {
    const auto& w = *a.witness;
    auto point = [&](const std::vector<std::size_t>& x) {
      std::vector<std::string> labels;
      for (std::size_t k = 0; k < x.size(); ++k) labels.push_back(net.variable(vars[k]).states[x[k]]);
      return "Pr(" + Join(labels) + ")";
    };
    const char* rel = w.lhs < w.rhs ? " < " : " >= ";
    c.add(a.verdict == AffiliationVerdict::kViolated ? "witness" : "tightest instance",
          point(w.join) + " " + point(w.meet) + " = " + FormatFraction(w.lhs) + rel + FormatFraction(w.rhs) + " = " +
              point(w.x) + " " + point(w.y));
    // Recompute the witness from the conditional joint.
    Distribution d = query(net, vars, given);
    const double lhs = d.at(w.join) * d.at(w.meet), rhs = d.at(w.x) * d.at(w.y);
    c.tolerance = "witness recomputed within 1e-12";
    c.require(std::fabs(lhs - w.lhs) <= 1e-12 && std::fabs(rhs - w.rhs) <= 1e-12, "witness does not recompute");
  }
  Report out;
  out.checks.push_back(c);
  return out;
}

const InterpretedModel& InterpretedOf(const ModelFile& m) {
  if (m.kind() != ModelKind::kInterpreted) throw ParameterError("this command needs an interpreted model");
  return std::get<InterpretedModel>(m.body);
}

std::vector<std::size_t> Agents(const InterpretedModel& m, const std::string& text) {
  std::vector<std::size_t> out;
  if (text.empty()) {
    for (std::size_t i = 0; i < m.agents.size(); ++i) out.push_back(i);
    return out;
  }
  for (std::size_t i = 0; i < m.agents.size(); ++i) {
    if (m.agents[i].id == text) return {i};
  }
  const std::size_t k = ParseIndex(text, "agent");
  if (k < 1 || k > m.agents.size()) throw ParameterError("agent '" + text + "' does not exist");
  return {k - 1};
}

Report Predict(const CommandRequest& r, const Loaded& l) {
  const InterpretedModel& m = InterpretedOf(l.model);
  const Assignment observed = parse_assignment(r.get("observed"));
  Report out;
  for (std::size_t i : Agents(m, r.get("agent"))) {
    const AgentView& view = m.agents[i];
    Check c = MakeCheck("predict", "prediction of " + view.id);
    const auto& attrs = m.space.attributes();
    auto label = [&](const std::vector<std::size_t>& states) {
      std::vector<std::string> parts;
      for (std::size_t k = 0; k < states.size(); ++k) {
        parts.push_back(attrs[view.observed[k]].id + "=" + attrs[view.observed[k]].states[states[k]]);
      }
      return parts.empty() ? std::string("(nothing observed)") : Join(parts);
    };
    std::vector<std::vector<std::size_t>> cells;
    if (!observed.empty()) {
      std::vector<std::size_t> states;
      for (std::size_t k : view.observed) {
        auto it = observed.find(attrs[k].id);
        if (it == observed.end()) throw ParameterError(view.id + " observes " + attrs[k].id + ", which --observed omits");
        auto s = attrs[k].state_index(it->second);
        if (!s) throw ParameterError("'" + it->second + "' is not a state of " + attrs[k].id);
        states.push_back(*s);
      }
      cells.push_back(states);
    } else {
      std::vector<std::size_t> states(view.observed.size(), 0);
      while (true) {
        cells.push_back(states);
        std::size_t k = states.size();
        while (k-- > 0) {
          if (++states[k] < attrs[view.observed[k]].states.size()) break;
          states[k] = 0;
        }
        if (k == static_cast<std::size_t>(-1)) break;
      }
    }
    for (const auto& states : cells) {
      try {
        c.add("given " + label(states), m.outcome.states[predict(m, i, states)]);
      } catch (const ZeroProbabilityError&) {
        c.add("given " + label(states), "undefined (no mass)");
      }
    }
    out.checks.push_back(c);
  }
  return out;
}

Report Accuracy(const CommandRequest& r, const Loaded& l) {
  const InterpretedModel& m = InterpretedOf(l.model);
  Check c = MakeCheck("accuracy", "prediction accuracy and correctness correlation");
  for (std::size_t i : Agents(m, r.get("agent"))) {
    Correctness k = correctness(m, i);
    c.add(m.agents[i].id + " accuracy", k.accuracy).add(m.agents[i].id + " informative", informative(m, i));
    c.require(k.accuracy >= -1e-12 && k.accuracy <= 1.0 + 1e-12, "accuracy outside [0, 1]");
  }
  for (std::size_t i = 0; i < m.agents.size(); ++i) {
    for (std::size_t j = i + 1; j < m.agents.size(); ++j) {
      CorrelationResult cr = correctness_correlation(m, i, j);
      const std::string name = m.agents[i].id + "," + m.agents[j].id;
      c.add(name + " covariance", cr.covariance);
      if (cr.coefficient) {
        c.add(name + " correlation", *cr.coefficient);
      } else {
        c.add(name + " correlation", "undefined (constant correctness)");
      }
    }
  }
  Report out;
  out.checks.push_back(c);
  return out;
}

Qpn QpnOf(const CommandRequest& r, std::string& bytes) {
  if (!r.get("preset").empty()) {
    auto p = ParseQpnPreset(r.get("preset"));
    if (!p) throw ParameterError("unknown QPN preset '" + r.get("preset") + "'");
    bytes = r.get("preset");
    return build_qpn_preset(*p);
  }
  Loaded l = Load(r);
  bytes = l.bytes;
  if (l.model.kind() != ModelKind::kQpn) throw ParameterError("this command needs a qpn model or --preset");
  return std::get<Qpn>(l.model.body);
}

Sign SignOption(const CommandRequest& r, const std::string& key, const char* fallback) {
  auto s = ParseSign(r.get(key, fallback));
  if (!s) throw ParameterError("--" + key + " expects +, -, 0 or ?");
  return *s;
}

Qpn Rewritten(const CommandRequest& r, Qpn q) {
  for (const auto& d : split_list(r.get("rewrite"))) q = apply_policy(q, d, SignOption(r, "policy", "+"));
  return q;
}

Report QpnPropagate(const CommandRequest& r, std::string& bytes) {
  const Qpn q = Rewritten(r, QpnOf(r, bytes));
  const std::string node = r.get("node");
  if (node.empty()) throw ParameterError("qpn-propagate needs --node");
  const Sign dir = SignOption(r, "direction", "+");
  const VariableSet ev = SetOf(r.get("evidence"));
  const std::set<std::string> evidence(ev.begin(), ev.end());
  SignMap signs = propagate(q, node, dir, evidence);
  Check c = MakeCheck("qpn-propagate", std::string("signs after moving ") + node + " " + SignSymbol(dir) +
                                           (evidence.empty() ? "" : " given " + Join(ev)));
  c.tolerance = "exact; agrees with trail enumeration";
  for (const auto& n : q.nodes()) {
    const Sign s = signs.at(n.id);
    c.add(n.id, SignSymbol(s));
    if (n.id == node || evidence.count(n.id)) continue;
    const Sign t = sign_product(dir, trail_sign(q, node, n.id, evidence).sign);
    c.require(s == t, n.id + ": propagation gives " + SignSymbol(s) + ", trails give " + SignSymbol(t));
  }
  Report out;
  out.checks.push_back(c);
  return out;
}

Report QpnPolicy(const CommandRequest& r, std::string& bytes) {
  const Qpn q = QpnOf(r, bytes);
  const std::string d = r.get("decision", "b1"), o = r.get("observation", "s1"), u = r.get("utility", "u1");
  PolicyDerivation p = derive_policy_monotonicity(q, d, o, u);
  Check c = MakeCheck("qpn-policy", "sign of the optimal " + d + " in " + o + " for " + u);
  c.add("sign", SignSymbol(p.sign));
  for (std::size_t k = 0; k < p.steps.size(); ++k) c.add("step " + std::to_string(k + 1), p.steps[k]);
  c.detail = p.diagnostic;
  Report out;
  out.checks.push_back(c);
  return out;
}

Report CurseQpn(const CommandRequest& r, std::string& bytes) {
  const Qpn q = Rewritten(r, QpnOf(r, bytes));
  const std::string win = r.get("win", "w"), value = r.get("value", "v1");
  const VariableSet ev = SetOf(r.get("evidence", "s1,b1"));
  const std::set<std::string> evidence(ev.begin(), ev.end());
  CurseResult cr = winners_curse(q, win, value, evidence);
  TrailResult t = trail_sign(q, win, value, evidence);
  Check c = MakeCheck("curse", "influence of " + win + " on " + value + " given " + Join(ev));
  c.add("curse", cr.curse).add("sign", SignSymbol(cr.sign)).add("active trails", t.active.size());
  for (std::size_t k = 0; k < t.active.size(); ++k) {
    c.add("trail " + std::to_string(k + 1), Join(t.active[k].nodes, " - ") + " (" + SignSymbol(t.active[k].sign) + ")");
  }
  c.require(cr.sign == t.sign, "curse sign disagrees with the trail sign");
  c.require(cr.curse == (t.sign == Sign::kMinus), "curse flag disagrees with the sign");
  Report out;
  out.checks.push_back(c);
  return out;
}

const GameSpec& GameOf(const ModelFile& m) {
  if (m.kind() != ModelKind::kGame) throw ParameterError("this command needs a game model");
  return std::get<GameSpec>(m.body);
}

std::size_t Player(const CommandRequest& r, const BayesianGame& g) {
  const std::size_t p = ParseIndex(r.get("player", "1"), "player");
  if (p < 1 || p > g.players()) throw ParameterError("player must be 1.." + std::to_string(g.players()));
  return p - 1;
}

Report CurseGame(const CommandRequest& r, const Loaded& l) {
  const BayesianGame g = GameOf(l.model).game();
  const std::size_t player = Player(r, g);
  const std::string opp_text = r.get("opponent");
  if (opp_text.empty()) throw ParameterError("curse on a game needs --opponent <bid index per signal state>");
  StrategyProfile profile(g.players());
  for (std::size_t j = 0; j < g.players(); ++j) {
    if (j == player) {
      profile[j] = Strategy(signal_count(g, j), 0);
      continue;
    }
    for (const auto& s : split_list(opp_text)) profile[j].push_back(ParseIndex(s, "opponent bid index"));
  }
  const Variable& signal = g.world.variable(g.signals[player]);
  std::vector<std::size_t> states;
  if (r.get("signal").empty()) {
    for (std::size_t s = 0; s < signal.states.size(); ++s) states.push_back(s);
  } else {
    auto s = signal.state_index(r.get("signal"));
    if (!s) throw ParameterError("'" + r.get("signal") + "' is not a state of " + signal.id);
    states.push_back(*s);
  }
  std::vector<double> bids = g.grids[player];
  if (!r.get("bid").empty()) bids = {ParseDouble(r.get("bid"), "bid")};
  Check c = MakeCheck("curse", "E[" + g.values[player] + " | " + signal.id + ", win] - E[" + g.values[player] + " | " +
                                   signal.id + "]");
  c.add("opponent bids", BidText(g, player == 0 ? 1 : 0, profile[player == 0 ? 1 : 0]));
  for (std::size_t s : states) {
    for (double b : bids) {
      WinnersCurse w = measure_winners_curse(g, player, s, profile, b);
      const std::string name = signal.id + "=" + signal.states[s] + ", bid " + FormatNumber(b);
      if (w.defined) {
        c.add(name, w.curse);
      } else {
        c.add(name, "undefined (never wins)");
      }
    }
  }
  Report out;
  out.checks.push_back(c);
  return out;
}

Report SolveAuction(const CommandRequest& r, const Loaded& l) {
  const BayesianGame g = GameOf(l.model).game();
  const double eps = r.epsilon.value_or(0.0);
  const bool symmetric = ParseBool(r.get("symmetric", "false"), "--symmetric");
  const bool monotone = ParseBool(r.get("monotone", "false"), "--monotone");
  std::vector<StrategyProfile> found;
  if (symmetric) {
    for (const auto& s : find_symmetric_equilibria(g, eps, monotone)) found.push_back(StrategyProfile(g.players(), s));
  } else {
    for (auto& p : find_pure_equilibria(g, eps)) {
      bool keep = true;
      for (const auto& s : p) keep = keep && (!monotone || is_monotone(s));
      if (keep) found.push_back(std::move(p));
    }
  }
  Check c = MakeCheck("solve-auction", std::string(symmetric ? "symmetric " : "") + (monotone ? "monotone " : "") +
                                           "pure equilibria within epsilon " + FormatNumber(eps));
  c.tolerance = "deviation gain <= epsilon + 1e-12";
  c.add("equilibria", found.size());
  for (std::size_t k = 0; k < found.size(); ++k) {
    c.add("equilibrium " + std::to_string(k + 1), ProfileText(g, found[k]));
    const double gain = max_deviation_gain(g, found[k]);
    c.require(gain <= eps + kBestResponseTolerance, "equilibrium " + std::to_string(k + 1) + " has a gain of " +
                                                         FormatNumber(gain));
  }
  if (found.empty()) c.detail = eps == 0.0 ? "no exact pure equilibrium; try --epsilon" : "no equilibrium found";
  Report out;
  out.checks.push_back(c);
  return out;
}

Report Theorem1(const CommandRequest& r, const Loaded& l) {
  const BayesianGame full = GameOf(l.model).game();
  const BayesianGame ipv = marginalize_to_ipv(full);
  const std::uint64_t cap = r.get("cap").empty() ? 100000 : ParseIndex(r.get("cap"), "cap");
  Theorem1Report t = check_theorem1(full, ipv, cap, r.seed);
  Check c = MakeCheck("theorem1", "best responses equal those of the matched IPV game");
  c.tolerance = "argmax within 1e-12";
  c.add("equivalent", t.equivalent).add("exhaustive", t.exhaustive);
  c.add("profiles checked", static_cast<std::size_t>(t.profiles_checked));
  c.require(t.equivalent, t.detail);
  if (!t.equivalent && t.witness_player) {
    c.add("witness player", *t.witness_player + 1).add("witness profile", ProfileText(full, t.witness_profile));
  }
  Report out;
  out.checks.push_back(c);
  return out;
}

Report Msr(const CommandRequest&, const Loaded& l) {
  if (l.model.kind() != ModelKind::kMsr) throw ParameterError("msr needs an msr model");
  const MsrSpec& spec = std::get<MsrSpec>(l.model.body);
  MsrSolution s = solve_msr(spec.game);
  Check c = MakeCheck("msr", "logarithmic market scoring rule, bluff gain of the first mover");
  std::vector<std::string> order;
  for (std::size_t a : spec.game.stages) order.push_back(a == 0 ? "A" : "B");
  c.add("stage order", Join(order));
  auto report = [&](std::size_t k) {
    std::vector<std::string> p;
    for (double x : s.menu[k]) p.push_back(FormatNumber(x));
    return "(" + Join(p, ", ") + ")";
  };
  auto strategy = [&](const std::vector<std::size_t>& st) {
    std::vector<std::string> parts;
    for (std::size_t k : st) parts.push_back(report(k));
    return Join(parts, " ");
  };
  c.add("menu size", s.menu.size()).add("strategies checked", static_cast<std::size_t>(s.strategies_checked));
  c.add("truthful value", s.truthful_value).add("best value", s.best_value).add("bluff gain", s.bluff_gain);
  c.add("truthful first report", strategy(s.truthful_strategy)).add("best first report", strategy(s.best_strategy));
  c.add("probability floor hit", s.clamp_used);
  c.require(s.bluff_gain >= -1e-12, "the best strategy is worse than truthful reporting");
  if (spec.game.stages == std::vector<std::size_t>{0, 1, 0}) c.detail = "stage order A,B,A is this artifact's default";
  Report out;
  out.checks.push_back(c);
  return out;
}

Report InteractionCmd(const CommandRequest& r, const Loaded& l) {
  const BayesNet net = NetOf(l.model);
  const std::string outcome = r.get("outcome", "v");
  const auto signals = split_list(r.get("signals", "s1,s2"));
  if (signals.size() != 2) throw ParameterError("interaction needs --signals with two variables");
  InteractionReport ir = signal_interaction(net, outcome, signals[0], signals[1]);
  Check c = MakeCheck("interaction", "information values of " + Join(signals) + " about " + outcome);
  c.tolerance = "entropy oracle within 1e-9";
  c.add("V(" + signals[0] + ")", ir.v1).add("V(" + signals[1] + ")", ir.v2).add("V(" + Join(signals) + ")", ir.v12);
  c.add("interaction information", ir.v12 - ir.v1 - ir.v2).add("verdict", InteractionName(ir.verdict));
  const double o1 = mutual_information_by_entropies(net, {outcome}, {signals[0]});
  const double o2 = mutual_information_by_entropies(net, {outcome}, {signals[1]});
  const double o12 = mutual_information_by_entropies(net, {outcome}, {signals[0], signals[1]});
  c.require(std::fabs(ir.v1 - o1) <= kOracleTolerance && std::fabs(ir.v2 - o2) <= kOracleTolerance &&
                std::fabs(ir.v12 - o12) <= kOracleTolerance,
            "information values disagree with entropy differences");
  Report out;
  out.checks.push_back(c);
  return out;
}

}  // namespace

std::string CommandRequest::get(const std::string& key, const std::string& fallback) const {
  auto it = options.find(key);
  return it == options.end() ? fallback : it->second;
}

const std::vector<std::string>& CommandNames() {
  static const std::vector<std::string> names = {
      "validate", "dsep",  "query",         "classify", "affiliation", "predict",     "accuracy",    "qpn-propagate",
      "qpn-policy", "curse", "solve-auction", "theorem1", "msr",         "interaction", "verify-paper"};
  return names;
}

Report run_command(const CommandRequest& r) {
  Report out;
  std::string inputs;
  using Handler = std::function<Report(const CommandRequest&, const Loaded&)>;
  static const std::map<std::string, Handler> with_model = {
      {"dsep", Dsep},         {"query", Query},       {"classify", Classify},
      {"affiliation", Affiliation}, {"predict", Predict},   {"accuracy", Accuracy},
      {"solve-auction", SolveAuction}, {"theorem1", Theorem1}, {"msr", Msr},
      {"interaction", InteractionCmd}};
  if (r.command == "validate") {
    out = Validate(r);
  } else if (r.command == "verify-paper") {
    VerifyOptions o;
    o.models_dir = r.models_dir;
    o.only = r.only;
    o.seed = r.seed;
    out = verify_paper(o);
    inputs = out.inputs_digest;
  } else if (r.command == "qpn-propagate") {
    out = QpnPropagate(r, inputs);
  } else if (r.command == "qpn-policy") {
    out = QpnPolicy(r, inputs);
  } else if (r.command == "curse") {
    if (r.get("preset").empty()) {
      Loaded l = Load(r);
      inputs = l.bytes;
      out = l.model.kind() == ModelKind::kQpn ? CurseQpn(r, inputs) : CurseGame(r, l);
    } else {
      out = CurseQpn(r, inputs);
    }
  } else if (auto it = with_model.find(r.command); it != with_model.end()) {
    Loaded l = Load(r);
    inputs = l.bytes;
    out = it->second(r, l);
  } else {
    throw ParameterError("unknown command '" + r.command + "'");
  }
  out.command = {r.command};
  out.command.insert(out.command.end(), r.echo.begin(), r.echo.end());
  std::string digest_input = inputs.empty() ? out.inputs_digest : inputs;
  for (const auto& a : out.command) digest_input += '\0' + a;
  out.inputs_digest = Fnv1a(digest_input);
  return out;
}

}  // namespace sigstruct
