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

// Qualitative probabilistic networks: signed influences between chance,
// decision and value nodes, qualitative synergies, and sign inference along
// active trails.

#ifndef SIGSTRUCT_QPN_HPP_
#define SIGSTRUCT_QPN_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sigstruct/bayesnet.hpp"

namespace sigstruct {

enum class Sign { kZero, kPlus, kMinus, kAmbiguous };

// Zero annihilates; ambiguous absorbs every nonzero sign.
Sign sign_product(Sign a, Sign b);
// Join on zero < {plus, minus} < ambiguous.
Sign sign_combine(Sign a, Sign b);
bool sign_leq(Sign a, Sign b);
Sign sign_negate(Sign a);

// "+", "-", "0", "?"
const char* SignSymbol(Sign s);
// "plus", "minus", "zero", "ambiguous"
const char* SignName(Sign s);
std::optional<Sign> ParseSign(std::string_view text);

enum class NodeKind { kChance, kDecision, kValue };
const char* NodeKindName(NodeKind k);
std::optional<NodeKind> ParseNodeKind(std::string_view text);

struct QpnNode {
  std::string id;
  NodeKind kind = NodeKind::kChance;
};

enum class EdgeKind { kInfluence, kInformation };

struct QpnEdge {
  std::string from;
  std::string to;
  Sign sign = Sign::kZero;  // unused for information edges
  EdgeKind kind = EdgeKind::kInfluence;
};

struct SynergyArc {
  std::string a;
  std::string b;
  std::string target;
  Sign sign = Sign::kPlus;
};

class Qpn {
 public:
  Qpn() = default;
  // Structural problems are recorded, not thrown; see problems().
  Qpn(std::vector<QpnNode> nodes, std::vector<QpnEdge> edges, std::vector<SynergyArc> synergies);

  const std::vector<QpnNode>& nodes() const { return nodes_; }
  const std::vector<QpnEdge>& edges() const { return edges_; }
  const std::vector<SynergyArc>& synergies() const { return synergies_; }

  bool contains(std::string_view id) const;
  std::size_t index_of(std::string_view id) const;
  const QpnNode& node(std::string_view id) const { return nodes_[index_of(id)]; }

  // Influence adjacency: (neighbor, edge index).
  const std::vector<std::pair<std::size_t, std::size_t>>& influence_parents(std::size_t i) const { return in_[i]; }
  const std::vector<std::pair<std::size_t, std::size_t>>& influence_children(std::size_t i) const { return out_[i]; }
  // Sources of information edges into i.
  const std::vector<std::size_t>& informants(std::size_t i) const { return informants_[i]; }

  const std::vector<std::string>& problems() const { return problems_; }
  bool valid() const { return problems_.empty(); }
  // Throws ParameterError naming the first problem.
  void require_valid() const;

  // Influence descendants of i, excluding i.
  std::vector<bool> descendants(std::size_t i) const;

 private:
  std::vector<QpnNode> nodes_;
  std::vector<QpnEdge> edges_;
  std::vector<SynergyArc> synergies_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> in_, out_;
  std::vector<std::vector<std::size_t>> informants_;
  std::vector<std::string> problems_;
};

enum class QpnPreset { kFig5, kFig5Ipv, kFig5Spsb, kFig6 };
const std::vector<QpnPreset>& AllQpnPresets();
const char* QpnPresetName(QpnPreset p);
std::optional<QpnPreset> ParseQpnPreset(std::string_view name);
Qpn build_qpn_preset(QpnPreset p);

// Chance-node QPN with each edge signed by first-order stochastic dominance
// of the child's CPT rows along the parent's state order (other parents
// held fixed). Requires ordered variables.
Qpn qpn_from_quantified(const BayesNet& net);
Sign influence_sign(const BayesNet& net, std::string_view parent, std::string_view child);

// Turns `decision` into a chance node whose information edges become
// influence edges carrying `policy`.
Qpn apply_policy(const Qpn& net, std::string_view decision, Sign policy);

using SignMap = std::map<std::string, Sign>;

// Sign of every node after perturbing `perturbed` in `direction`, by
// qualitative message passing along active trails. Evidence nodes report
// zero.
SignMap propagate(const Qpn& net, std::string_view perturbed, Sign direction, const std::set<std::string>& evidence = {});

struct Trail {
  std::vector<std::string> nodes;
  Sign sign = Sign::kZero;
};

struct TrailResult {
  Sign sign = Sign::kZero;
  std::vector<Trail> active;
};

inline constexpr std::size_t kDefaultTrailCap = 100000;

// Combined sign over every active trail of influence edges. Throws
// CapExceededError once more than `cap` trails are enumerated.
TrailResult trail_sign(const Qpn& net, std::string_view from, std::string_view to,
                       const std::set<std::string>& evidence = {}, std::size_t cap = kDefaultTrailCap);

struct PolicyDerivation {
  Sign sign = Sign::kAmbiguous;
  // One line per synergy arc considered.
  std::vector<std::string> steps;
  std::string diagnostic;  // set when no synergy arc applies
};

// Synergy chaining: for an arc (X, W -> utility) of sign s with a directed
// influence path from the decision to W, the policy sign is
// s * trail_sign(observation, X) * (combined sign of directed paths
// decision -> W); several arcs combine by join.
PolicyDerivation derive_policy_monotonicity(const Qpn& net, std::string_view decision, std::string_view observation,
                                            std::string_view utility);

struct CurseResult {
  bool curse = false;
  Sign sign = Sign::kZero;
};

CurseResult winners_curse(const Qpn& net, std::string_view win, std::string_view value,
                          const std::set<std::string>& evidence);

}  // namespace sigstruct

#endif  // SIGSTRUCT_QPN_HPP_
