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

#include "sigstruct/qpn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <functional>
#include <stdexcept>

#include "sigstruct/error.hpp"

namespace sigstruct {

// ---------------------------------------------------------------------------
// Sign algebra

Sign sign_product(Sign a, Sign b) {
  if (a == Sign::kZero || b == Sign::kZero) return Sign::kZero;
  if (a == Sign::kAmbiguous || b == Sign::kAmbiguous) return Sign::kAmbiguous;
  return a == b ? Sign::kPlus : Sign::kMinus;
}

Sign sign_combine(Sign a, Sign b) {
  if (a == Sign::kZero) return b;
  if (b == Sign::kZero) return a;
  return a == b ? a : Sign::kAmbiguous;
}

bool sign_leq(Sign a, Sign b) { return sign_combine(a, b) == b; }

Sign sign_negate(Sign a) { return sign_product(a, Sign::kMinus); }

const char* SignSymbol(Sign s) {
  switch (s) {
    case Sign::kZero: return "0";
    case Sign::kPlus: return "+";
    case Sign::kMinus: return "-";
    case Sign::kAmbiguous: return "?";
  }
  return "?";
}

const char* SignName(Sign s) {
  switch (s) {
    case Sign::kZero: return "zero";
    case Sign::kPlus: return "plus";
    case Sign::kMinus: return "minus";
    case Sign::kAmbiguous: return "ambiguous";
  }
  return "ambiguous";
}

std::optional<Sign> ParseSign(std::string_view text) {
  for (Sign s : {Sign::kZero, Sign::kPlus, Sign::kMinus, Sign::kAmbiguous}) {
    if (text == SignSymbol(s) || text == SignName(s)) return s;
  }
  return std::nullopt;
}

const char* NodeKindName(NodeKind k) {
  switch (k) {
    case NodeKind::kChance: return "chance";
    case NodeKind::kDecision: return "decision";
    case NodeKind::kValue: return "value";
  }
  return "chance";
}

std::optional<NodeKind> ParseNodeKind(std::string_view text) {
  for (NodeKind k : {NodeKind::kChance, NodeKind::kDecision, NodeKind::kValue}) {
    if (text == NodeKindName(k)) return k;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Qpn

Qpn::Qpn(std::vector<QpnNode> nodes, std::vector<QpnEdge> edges, std::vector<SynergyArc> synergies)
    : synergies_(std::move(synergies)) {
  for (auto& n : nodes) {
    if (!index_.emplace(n.id, nodes_.size()).second) {
      problems_.push_back("node '" + n.id + "' declared twice");
      continue;
    }
    nodes_.push_back(std::move(n));
  }
  const std::size_t n = nodes_.size();
  in_.assign(n, {});
  out_.assign(n, {});
  informants_.assign(n, {});
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto& e : edges) {
    const std::string label = e.from + " -> " + e.to;
    auto f = index_.find(e.from);
    auto t = index_.find(e.to);
    if (f == index_.end() || t == index_.end()) {
      problems_.push_back("edge " + label + " references an undeclared node");
      continue;
    }
    if (f->second == t->second) {
      problems_.push_back("self edge on '" + e.from + "'");
      continue;
    }
    if (!seen.insert({f->second, t->second}).second) {
      problems_.push_back("duplicate edge " + label);
      continue;
    }
    if (nodes_[f->second].kind == NodeKind::kValue) {
      problems_.push_back("value node '" + e.from + "' has an outgoing edge");
    }
    const std::size_t idx = edges_.size();
    if (e.kind == EdgeKind::kInformation) {
      if (nodes_[f->second].kind != NodeKind::kChance || nodes_[t->second].kind != NodeKind::kDecision) {
        problems_.push_back("information edge " + label + " must run from a chance node to a decision node");
      }
      e.sign = Sign::kZero;
      informants_[t->second].push_back(f->second);
    } else {
      out_[f->second].emplace_back(t->second, idx);
      in_[t->second].emplace_back(f->second, idx);
    }
    edges_.push_back(std::move(e));
  }
  // Influence edges must be acyclic.
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t i = 0; i < n; ++i) indegree[i] = in_[i].size();
  std::deque<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  std::size_t removed = 0;
  while (!ready.empty()) {
    std::size_t u = ready.front();
    ready.pop_front();
    ++removed;
    for (const auto& [c, e] : out_[u]) {
      if (--indegree[c] == 0) ready.push_back(c);
    }
  }
  if (removed != n) problems_.push_back("influence edges contain a directed cycle");
  for (const auto& s : synergies_) {
    const std::string label = "synergy (" + s.a + ", " + s.b + " -> " + s.target + ")";
    if (!contains(s.a) || !contains(s.b) || !contains(s.target)) {
      problems_.push_back(label + " references an undeclared node");
      continue;
    }
    if (s.a == s.b) problems_.push_back(label + " repeats a node");
    if (removed != n) continue;
    // Both ends must reach the target over influence edges.
    for (const std::string* end : {&s.a, &s.b}) {
      std::vector<bool> d = descendants(index_of(*end));
      if (!d[index_of(s.target)]) problems_.push_back(label + ": '" + *end + "' does not influence the target");
    }
  }
}

bool Qpn::contains(std::string_view id) const { return index_.find(id) != index_.end(); }

std::size_t Qpn::index_of(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw std::out_of_range("unknown node '" + std::string(id) + "'");
  return it->second;
}

void Qpn::require_valid() const {
  if (!valid()) throw ParameterError("invalid qpn: " + problems_.front());
}

std::vector<bool> Qpn::descendants(std::size_t i) const {
  std::vector<bool> mark(nodes_.size(), false);
  std::vector<std::size_t> stack;
  for (const auto& [c, e] : out_[i]) stack.push_back(c);
  while (!stack.empty()) {
    std::size_t u = stack.back();
    stack.pop_back();
    if (mark[u]) continue;
    mark[u] = true;
    for (const auto& [c, e] : out_[u]) stack.push_back(c);
  }
  return mark;
}

// ---------------------------------------------------------------------------
// Presets

namespace {

constexpr std::array<std::pair<QpnPreset, const char*>, 4> kPresetNames = {{
    {QpnPreset::kFig5, "Fig5"},
    {QpnPreset::kFig5Ipv, "Fig5-IPV"},
    {QpnPreset::kFig5Spsb, "Fig5-SPSB"},
    {QpnPreset::kFig6, "Fig6"},
}};

QpnEdge Inf(std::string from, std::string to, Sign s) { return {std::move(from), std::move(to), s, EdgeKind::kInfluence}; }
QpnEdge Info(std::string from, std::string to) { return {std::move(from), std::move(to), Sign::kZero, EdgeKind::kInformation}; }

// Bids, winner and utilities shared by the auction presets. `price_from_own`
// selects FPSB (b_i -> u_i) versus SPSB (b_i -> u_{-i}).
void AuctionTail(std::vector<QpnNode>& nodes, std::vector<QpnEdge>& edges, std::vector<SynergyArc>& syn,
                 const std::string& value1, const std::string& value2, bool price_from_own) {
  nodes.push_back({"b1", NodeKind::kDecision});
  nodes.push_back({"b2", NodeKind::kDecision});
  nodes.push_back({"w", NodeKind::kChance});
  nodes.push_back({"u1", NodeKind::kValue});
  nodes.push_back({"u2", NodeKind::kValue});
  edges.push_back(Info("s1", "b1"));
  edges.push_back(Info("s2", "b2"));
  edges.push_back(Inf("b1", "w", Sign::kPlus));
  edges.push_back(Inf("b2", "w", Sign::kMinus));
  edges.push_back(Inf(value1, "u1", Sign::kPlus));
  edges.push_back(Inf(value2, "u2", Sign::kPlus));
  if (price_from_own) {
    edges.push_back(Inf("b1", "u1", Sign::kMinus));
    edges.push_back(Inf("b2", "u2", Sign::kMinus));
  } else {
    edges.push_back(Inf("b1", "u2", Sign::kMinus));
    edges.push_back(Inf("b2", "u1", Sign::kMinus));
  }
  edges.push_back(Inf("w", "u1", Sign::kAmbiguous));
  edges.push_back(Inf("w", "u2", Sign::kAmbiguous));
  // w is true when agent 1 wins, so it enters agent 2's synergy negatively.
  syn.push_back({value1, "w", "u1", Sign::kPlus});
  syn.push_back({value2, "w", "u2", Sign::kMinus});
}

Qpn GeneratedAuction(bool shared_state, bool price_from_own) {
  std::vector<QpnNode> nodes;
  std::vector<QpnEdge> edges;
  std::vector<SynergyArc> syn;
  if (shared_state) nodes.push_back({"omega", NodeKind::kChance});
  for (const char* id : {"v1", "v2", "s1", "s2"}) nodes.push_back({id, NodeKind::kChance});
  if (shared_state) {
    edges.push_back(Inf("omega", "v1", Sign::kPlus));
    edges.push_back(Inf("omega", "v2", Sign::kPlus));
  }
  edges.push_back(Inf("v1", "s1", Sign::kPlus));
  edges.push_back(Inf("v2", "s2", Sign::kPlus));
  AuctionTail(nodes, edges, syn, "v1", "v2", price_from_own);
  return Qpn(std::move(nodes), std::move(edges), std::move(syn));
}

}  // namespace

const std::vector<QpnPreset>& AllQpnPresets() {
  static const std::vector<QpnPreset> all = {QpnPreset::kFig5, QpnPreset::kFig5Ipv, QpnPreset::kFig5Spsb,
                                             QpnPreset::kFig6};
  return all;
}

const char* QpnPresetName(QpnPreset p) {
  for (const auto& [key, name] : kPresetNames) {
    if (key == p) return name;
  }
  return "unknown";
}

std::optional<QpnPreset> ParseQpnPreset(std::string_view name) {
  for (const auto& [key, label] : kPresetNames) {
    if (name == label) return key;
  }
  return std::nullopt;
}

Qpn build_qpn_preset(QpnPreset p) {
  switch (p) {
    case QpnPreset::kFig5: return GeneratedAuction(true, true);
    case QpnPreset::kFig5Ipv: return GeneratedAuction(false, true);
    case QpnPreset::kFig5Spsb: return GeneratedAuction(true, false);
    case QpnPreset::kFig6: {
      std::vector<QpnNode> nodes{{"s1", NodeKind::kChance}, {"s2", NodeKind::kChance}, {"v", NodeKind::kChance}};
      std::vector<QpnEdge> edges{Inf("s1", "v", Sign::kPlus), Inf("s2", "v", Sign::kPlus)};
      std::vector<SynergyArc> syn;
      AuctionTail(nodes, edges, syn, "v", "v", true);
      return Qpn(std::move(nodes), std::move(edges), std::move(syn));
    }
  }
  throw ParameterError("unknown qpn preset");
}

// ---------------------------------------------------------------------------
// Quantified nets

Sign influence_sign(const BayesNet& net, std::string_view parent, std::string_view child) {
  const std::size_t ci = net.index_of(child);
  const Cpt* cpt = net.cpt_for(ci);
  if (cpt == nullptr) throw InvalidNetError("no cpt for '" + std::string(child) + "'");
  auto pos = std::find(cpt->parents.begin(), cpt->parents.end(), parent);
  if (pos == cpt->parents.end()) {
    throw std::invalid_argument("'" + std::string(parent) + "' is not a parent of '" + std::string(child) + "'");
  }
  if (!net.variable(parent).ordered || !net.variable(child).ordered) {
    throw ParameterError("influence signs need ordered variables");
  }
  const std::size_t k = static_cast<std::size_t>(pos - cpt->parents.begin());
  std::vector<std::size_t> cards;
  for (const auto& p : cpt->parents) cards.push_back(net.variable(p).cardinality());
  std::size_t stride = 1;
  for (std::size_t j = cards.size(); j-- > k + 1;) stride *= cards[j];
  constexpr double kTol = 1e-12;
  bool up = false, down = false;
  for (std::size_t r = 0; r < cpt->rows.size(); ++r) {
    const std::size_t state = (r / stride) % cards[k];
    if (state + 1 >= cards[k]) continue;
    const auto& lo = cpt->rows[r];
    const auto& hi = cpt->rows[r + stride];
    double f_lo = 0.0, f_hi = 0.0;
    bool hi_above = false, hi_below = false;
    for (std::size_t j = 0; j + 1 < lo.size(); ++j) {
      f_lo += lo[j];
      f_hi += hi[j];
      if (f_hi < f_lo - kTol) hi_above = true;  // higher parent shifts mass up
      if (f_hi > f_lo + kTol) hi_below = true;
    }
    if (hi_above && hi_below) return Sign::kAmbiguous;
    up = up || hi_above;
    down = down || hi_below;
  }
  if (up && down) return Sign::kAmbiguous;
  return up ? Sign::kPlus : down ? Sign::kMinus : Sign::kZero;
}

Qpn qpn_from_quantified(const BayesNet& net) {
  net.require_valid();
  std::vector<QpnNode> nodes;
  for (const auto& v : net.variables()) nodes.push_back({v.id, NodeKind::kChance});
  std::vector<QpnEdge> edges;
  for (const auto& [p, c] : net.edges()) {
    const std::string& from = net.variable(p).id;
    const std::string& to = net.variable(c).id;
    edges.push_back(Inf(from, to, influence_sign(net, from, to)));
  }
  return Qpn(std::move(nodes), std::move(edges), {});
}

Qpn apply_policy(const Qpn& net, std::string_view decision, Sign policy) {
  const QpnNode& d = net.node(decision);
  if (d.kind != NodeKind::kDecision) throw ParameterError("'" + d.id + "' is not a decision node");
  std::vector<QpnNode> nodes = net.nodes();
  for (auto& n : nodes) {
    if (n.id == decision) n.kind = NodeKind::kChance;
  }
  std::vector<QpnEdge> edges = net.edges();
  for (auto& e : edges) {
    if (e.kind == EdgeKind::kInformation && e.to == decision) {
      e.kind = EdgeKind::kInfluence;
      e.sign = policy;
    }
  }
  return Qpn(std::move(nodes), std::move(edges), net.synergies());
}

// ---------------------------------------------------------------------------
// Inference

namespace {

struct Activity {
  std::vector<bool> observed;
  std::vector<bool> opens_collider;  // observed or has an observed descendant
};

Activity MakeActivity(const Qpn& net, const std::set<std::string>& evidence) {
  Activity a;
  const std::size_t n = net.nodes().size();
  a.observed.assign(n, false);
  for (const auto& id : evidence) a.observed[net.index_of(id)] = true;
  a.opens_collider = a.observed;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> d = net.descendants(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (d[j] && a.observed[j]) a.opens_collider[i] = true;
    }
  }
  return a;
}

}  // namespace

SignMap propagate(const Qpn& net, std::string_view perturbed, Sign direction, const std::set<std::string>& evidence) {
  net.require_valid();
  if (direction != Sign::kPlus && direction != Sign::kMinus) {
    throw std::invalid_argument("perturbation direction must be plus or minus");
  }
  if (evidence.count(std::string(perturbed))) throw std::invalid_argument("perturbed node is in the evidence");
  const std::size_t n = net.nodes().size();
  const Activity act = MakeActivity(net, evidence);
  std::vector<Sign> sign(n, Sign::kZero);
  const std::size_t origin = net.index_of(perturbed);
  sign[origin] = direction;
  std::vector<bool> on_trail(n, false);
  on_trail[origin] = true;

  // A message reaching `node` along an edge; `from_parent` says the edge
  // points into `node`. The trail set keeps every trail simple.
  std::function<void(std::size_t, bool, Sign)> deliver = [&](std::size_t node, bool from_parent, Sign message) {
    if (!act.observed[node]) sign[node] = sign_combine(sign[node], message);
    on_trail[node] = true;
    auto forward = [&](std::size_t next, std::size_t edge, bool into_next) {
      if (on_trail[next]) return;
      // Collider when both the arrival and the departure edge point at node.
      const bool collider = from_parent && !into_next;
      const bool active = collider ? act.opens_collider[node] : !act.observed[node];
      if (active) deliver(next, into_next, sign_product(message, net.edges()[edge].sign));
    };
    for (const auto& [c, e] : net.influence_children(node)) forward(c, e, true);
    for (const auto& [p, e] : net.influence_parents(node)) forward(p, e, false);
    on_trail[node] = false;
  };
  for (const auto& [c, e] : net.influence_children(origin)) deliver(c, true, sign_product(direction, net.edges()[e].sign));
  for (const auto& [p, e] : net.influence_parents(origin)) deliver(p, false, sign_product(direction, net.edges()[e].sign));

  SignMap out;
  for (std::size_t i = 0; i < n; ++i) out[net.nodes()[i].id] = sign[i];
  return out;
}

TrailResult trail_sign(const Qpn& net, std::string_view from, std::string_view to, const std::set<std::string>& evidence,
                       std::size_t cap) {
  net.require_valid();
  if (from == to) throw std::invalid_argument("trail endpoints must differ");
  if (evidence.count(std::string(from)) || evidence.count(std::string(to))) {
    throw std::invalid_argument("trail endpoints must not be in the evidence");
  }
  const std::size_t n = net.nodes().size();
  const std::size_t src = net.index_of(from);
  const std::size_t dst = net.index_of(to);
  const Activity act = MakeActivity(net, evidence);

  // Undirected skeleton: (neighbor, edge, edge points at neighbor).
  std::vector<std::vector<std::array<std::size_t, 3>>> adj(n);
  for (std::size_t e = 0; e < net.edges().size(); ++e) {
    const QpnEdge& edge = net.edges()[e];
    if (edge.kind != EdgeKind::kInfluence) continue;
    std::size_t a = net.index_of(edge.from), b = net.index_of(edge.to);
    adj[a].push_back({b, e, 1});
    adj[b].push_back({a, e, 0});
  }

  TrailResult result;
  std::size_t enumerated = 0;
  std::vector<std::size_t> path{src};
  std::vector<std::size_t> path_edges;
  std::vector<bool> into;  // per path edge: points toward the later node
  std::vector<bool> visited(n, false);
  visited[src] = true;
  std::function<void(std::size_t)> walk = [&](std::size_t u) {
    for (const auto& [v, e, toward] : adj[u]) {
      if (visited[v]) continue;
      path.push_back(v);
      path_edges.push_back(e);
      into.push_back(toward == 1);
      if (v == dst) {
        if (++enumerated > cap) {
          throw CapExceededError("trail enumeration exceeds cap of " + std::to_string(cap));
        }
        bool active = true;
        for (std::size_t k = 1; k + 1 < path.size() && active; ++k) {
          const bool collider = into[k - 1] && !into[k];
          active = collider ? act.opens_collider[path[k]] : !act.observed[path[k]];
        }
        if (active) {
          Trail t;
          t.sign = Sign::kPlus;
          for (std::size_t k = 0; k < path.size(); ++k) {
            t.nodes.push_back(net.nodes()[path[k]].id);
            if (k < path_edges.size()) t.sign = sign_product(t.sign, net.edges()[path_edges[k]].sign);
          }
          result.sign = sign_combine(result.sign, t.sign);
          result.active.push_back(std::move(t));
        }
      } else {
        visited[v] = true;
        walk(v);
        visited[v] = false;
      }
      path.pop_back();
      path_edges.pop_back();
      into.pop_back();
    }
  };
  walk(src);
  return result;
}

namespace {

// Join over directed influence paths from -> to of the product of signs;
// zero when none exists.
Sign DirectedPathSign(const Qpn& net, std::size_t from, std::size_t to) {
  Sign total = Sign::kZero;
  std::function<void(std::size_t, Sign)> rec = [&](std::size_t u, Sign acc) {
    if (u == to) {
      total = sign_combine(total, acc);
      return;
    }
    for (const auto& [c, e] : net.influence_children(u)) rec(c, sign_product(acc, net.edges()[e].sign));
  };
  rec(from, Sign::kPlus);
  return from == to ? Sign::kZero : total;
}

}  // namespace

PolicyDerivation derive_policy_monotonicity(const Qpn& net, std::string_view decision, std::string_view observation,
                                            std::string_view utility) {
  net.require_valid();
  const std::size_t d = net.index_of(decision);
  const std::size_t o = net.index_of(observation);
  if (net.nodes()[d].kind != NodeKind::kDecision) throw ParameterError("'" + std::string(decision) + "' is not a decision node");
  const auto& inf = net.informants(d);
  if (std::find(inf.begin(), inf.end(), o) == inf.end()) {
    throw ParameterError("no information edge " + std::string(observation) + " -> " + std::string(decision));
  }
  if (net.node(utility).kind != NodeKind::kValue) throw ParameterError("'" + std::string(utility) + "' is not a value node");

  PolicyDerivation out;
  bool applied = false;
  Sign total = Sign::kZero;
  for (const auto& arc : net.synergies()) {
    if (arc.target != utility) continue;
    for (int flip = 0; flip < 2; ++flip) {
      const std::string& x = flip ? arc.b : arc.a;
      const std::string& w = flip ? arc.a : arc.b;
      const Sign b = DirectedPathSign(net, d, net.index_of(w));
      if (b == Sign::kZero) continue;  // decision does not drive W
      const Sign a = x == observation ? Sign::kPlus : trail_sign(net, observation, x).sign;
      const Sign s = sign_product(arc.sign, sign_product(a, b));
      out.steps.push_back(std::string("path ") + std::string(observation) + " ~ " + x + " is " + SignName(a) + "; " +
                          "path " + std::string(decision) + " -> " + w + " is " + SignName(b) + "; synergy (" + x +
                          ", " + w + " -> " + arc.target + ") is " + SignName(arc.sign) + "; product " + SignName(s));
      total = sign_combine(total, s);
      applied = true;
    }
  }
  if (!applied) {
    out.sign = Sign::kAmbiguous;
    out.diagnostic = "no synergy arc on '" + std::string(utility) + "' pairs a node driven by '" + std::string(decision) + "'";
    return out;
  }
  out.sign = total;
  return out;
}

CurseResult winners_curse(const Qpn& net, std::string_view win, std::string_view value,
                          const std::set<std::string>& evidence) {
  CurseResult r;
  r.sign = trail_sign(net, win, value, evidence).sign;
  r.curse = r.sign == Sign::kMinus;
  return r;
}

}  // namespace sigstruct
