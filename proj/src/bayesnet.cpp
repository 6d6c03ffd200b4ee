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

#include "sigstruct/bayesnet.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sigstruct/error.hpp"

namespace sigstruct {

ModelError::ModelError(std::vector<Diagnostic> diagnostics)
    : Error([&] {
        std::ostringstream out;
        out << "model error";
        for (const auto& d : diagnostics) out << "\n  " << d.location << ": " << d.message;
        return out.str();
      }()),
      diagnostics_(std::move(diagnostics)) {}

std::optional<std::size_t> Variable::state_index(std::string_view label) const {
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i] == label) return i;
  }
  return std::nullopt;
}

Variable Variable::Lexical(std::string id, std::vector<std::string> states, bool ordered) {
  std::sort(states.begin(), states.end());
  return Variable{std::move(id), std::move(states), ordered};
}

const char* ViolationKindName(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::kEmptyStates: return "empty-states";
    case Violation::Kind::kDuplicateVariable: return "duplicate-variable";
    case Violation::Kind::kDuplicateState: return "duplicate-state";
    case Violation::Kind::kUnknownVariable: return "unknown-variable";
    case Violation::Kind::kSelfEdge: return "self-edge";
    case Violation::Kind::kDuplicateEdge: return "duplicate-edge";
    case Violation::Kind::kCycle: return "cycle";
    case Violation::Kind::kMissingCpt: return "missing-cpt";
    case Violation::Kind::kDuplicateCpt: return "duplicate-cpt";
    case Violation::Kind::kParentMismatch: return "parent-mismatch";
    case Violation::Kind::kArityMismatch: return "arity-mismatch";
    case Violation::Kind::kEntryRange: return "entry-range";
    case Violation::Kind::kRowSum: return "row-sum";
    case Violation::Kind::kNotDeterministic: return "not-deterministic";
  }
  return "unknown";
}

bool ValidationReport::has(Violation::Kind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

// ---------------------------------------------------------------------------
// Builder

BayesNet::Builder& BayesNet::Builder::variable(Variable v) {
  variables_.push_back(std::move(v));
  return *this;
}

BayesNet::Builder& BayesNet::Builder::edge(std::string parent, std::string child) {
  edges_.emplace_back(std::move(parent), std::move(child));
  return *this;
}

BayesNet::Builder& BayesNet::Builder::cpt(Cpt table) {
  cpts_.push_back(std::move(table));
  return *this;
}

BayesNet::Builder& BayesNet::Builder::node(Variable v, std::vector<std::string> parents,
                                           std::vector<std::vector<double>> rows,
                                           bool deterministic) {
  for (const auto& p : parents) edges_.emplace_back(p, v.id);
  cpts_.push_back(Cpt{v.id, std::move(parents), std::move(rows), deterministic});
  variables_.push_back(std::move(v));
  return *this;
}

BayesNet BayesNet::Builder::build() const {
  BayesNet net;
  auto& report = net.validation_.violations;
  auto violate = [&report](Violation::Kind kind, std::string subject, std::string message) {
    report.push_back(Violation{kind, std::move(subject), std::move(message)});
  };

  for (const auto& v : variables_) {
    if (net.index_.count(v.id) != 0) {
      violate(Violation::Kind::kDuplicateVariable, v.id, "variable '" + v.id + "' declared twice");
      continue;
    }
    if (v.states.empty()) {
      violate(Violation::Kind::kEmptyStates, v.id, "variable '" + v.id + "' has no states");
    }
    std::set<std::string> seen;
    for (const auto& s : v.states) {
      if (!seen.insert(s).second) {
        violate(Violation::Kind::kDuplicateState, v.id,
                "variable '" + v.id + "' repeats state '" + s + "'");
      }
    }
    net.index_.emplace(v.id, net.variables_.size());
    net.variables_.push_back(v);
  }

  const std::size_t n = net.variables_.size();
  net.parents_.assign(n, {});
  net.children_.assign(n, {});
  std::set<std::pair<std::size_t, std::size_t>> edge_set;
  for (const auto& [parent, child] : edges_) {
    auto p = net.index_.find(parent);
    auto c = net.index_.find(child);
    if (p == net.index_.end() || c == net.index_.end()) {
      const std::string& missing = p == net.index_.end() ? parent : child;
      violate(Violation::Kind::kUnknownVariable, missing,
              "edge " + parent + " -> " + child + " references undeclared variable '" + missing + "'");
      continue;
    }
    if (p->second == c->second) {
      violate(Violation::Kind::kSelfEdge, parent, "self edge on '" + parent + "'");
      continue;
    }
    if (!edge_set.insert({p->second, c->second}).second) {
      violate(Violation::Kind::kDuplicateEdge, child, "duplicate edge " + parent + " -> " + child);
      continue;
    }
    net.edges_.emplace_back(p->second, c->second);
    net.parents_[c->second].push_back(p->second);
    net.children_[p->second].push_back(c->second);
  }

  // Kahn's algorithm; anything left over sits on or behind a cycle.
  {
    std::vector<std::size_t> indegree(n, 0);
    for (const auto& e : net.edges_) ++indegree[e.second];
    std::deque<std::size_t> ready;
    for (std::size_t i = 0; i < n; ++i) {
      if (indegree[i] == 0) ready.push_back(i);
    }
    std::size_t removed = 0;
    while (!ready.empty()) {
      std::size_t u = ready.front();
      ready.pop_front();
      ++removed;
      for (std::size_t c : net.children_[u]) {
        if (--indegree[c] == 0) ready.push_back(c);
      }
    }
    if (removed != n) {
      std::string members;
      for (std::size_t i = 0; i < n; ++i) {
        if (indegree[i] > 0) members += (members.empty() ? "" : ", ") + net.variables_[i].id;
      }
      violate(Violation::Kind::kCycle, members, "directed cycle among {" + members + "}");
    }
  }

  net.cpt_of_.assign(n, std::nullopt);
  for (const auto& table : cpts_) {
    auto c = net.index_.find(table.child);
    if (c == net.index_.end()) {
      violate(Violation::Kind::kUnknownVariable, table.child,
              "cpt for undeclared variable '" + table.child + "'");
      continue;
    }
    if (net.cpt_of_[c->second]) {
      violate(Violation::Kind::kDuplicateCpt, table.child, "second cpt for '" + table.child + "'");
      continue;
    }
    net.cpt_of_[c->second] = net.cpts_.size();
    net.cpts_.push_back(table);
  }

  for (std::size_t i = 0; i < n; ++i) {
    const Variable& var = net.variables_[i];
    if (!net.cpt_of_[i]) {
      violate(Violation::Kind::kMissingCpt, var.id, "no cpt for '" + var.id + "'");
      continue;
    }
    const Cpt& table = net.cpts_[*net.cpt_of_[i]];
    std::set<std::size_t> cpt_parents;
    bool known = true;
    for (const auto& p : table.parents) {
      auto it = net.index_.find(p);
      if (it == net.index_.end()) {
        violate(Violation::Kind::kUnknownVariable, p,
                "cpt of '" + var.id + "' names undeclared parent '" + p + "'");
        known = false;
        continue;
      }
      cpt_parents.insert(it->second);
    }
    if (!known) continue;
    std::set<std::size_t> dag_parents(net.parents_[i].begin(), net.parents_[i].end());
    if (cpt_parents != dag_parents || cpt_parents.size() != table.parents.size()) {
      violate(Violation::Kind::kParentMismatch, var.id,
              "cpt parents of '" + var.id + "' differ from its graph parents");
      continue;
    }
    std::size_t expected_rows = 1;
    for (const auto& p : table.parents) {
      expected_rows *= net.variables_[net.index_.find(p)->second].cardinality();
    }
    if (table.rows.size() != expected_rows) {
      violate(Violation::Kind::kArityMismatch, var.id,
              "cpt of '" + var.id + "' has " + std::to_string(table.rows.size()) +
                  " rows, expected " + std::to_string(expected_rows));
      continue;
    }
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      const auto& row = table.rows[r];
      const std::string where = "cpt of '" + var.id + "' row " + std::to_string(r);
      if (row.size() != var.cardinality()) {
        violate(Violation::Kind::kArityMismatch, var.id,
                where + " has " + std::to_string(row.size()) + " entries, expected " +
                    std::to_string(var.cardinality()));
        continue;
      }
      double sum = 0.0;
      bool in_range = true;
      std::size_t ones = 0;
      std::size_t zeros = 0;
      for (double p : row) {
        if (!(p >= 0.0 && p <= 1.0)) in_range = false;
        sum += p;
        if (p == 1.0) ++ones;
        if (p == 0.0) ++zeros;
      }
      if (!in_range) {
        violate(Violation::Kind::kEntryRange, var.id, where + " has an entry outside [0, 1]");
      }
      if (std::abs(sum - 1.0) > kProbTolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << where << " sums to " << sum;
        violate(Violation::Kind::kRowSum, var.id, msg.str());
      }
      if (table.deterministic && !(ones == 1 && zeros + 1 == row.size())) {
        violate(Violation::Kind::kNotDeterministic, var.id, where + " is not one-hot");
      }
    }
  }

  if (net.valid()) net.finalize();
  return net;
}

void BayesNet::finalize() {
  compiled_.resize(variables_.size());
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    const Cpt& table = cpts_[*cpt_of_[i]];
    CompiledCpt& c = compiled_[i];
    c.child_card = variables_[i].cardinality();
    c.parent_index.clear();
    for (const auto& p : table.parents) c.parent_index.push_back(index_.find(p)->second);
    c.stride.assign(c.parent_index.size(), 1);
    for (std::size_t k = c.parent_index.size(); k-- > 1;) {
      c.stride[k - 1] = c.stride[k] * variables_[c.parent_index[k]].cardinality();
    }
    c.table.clear();
    for (const auto& row : table.rows) c.table.insert(c.table.end(), row.begin(), row.end());
  }
}

// ---------------------------------------------------------------------------
// Accessors

const Variable& BayesNet::variable(std::string_view id) const { return variables_[index_of(id)]; }

bool BayesNet::contains(std::string_view id) const { return index_.find(id) != index_.end(); }

std::size_t BayesNet::index_of(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw std::out_of_range("unknown variable '" + std::string(id) + "'");
  return it->second;
}

const Cpt* BayesNet::cpt_for(std::size_t index) const {
  if (index >= cpt_of_.size() || !cpt_of_[index]) return nullptr;
  return &cpts_[*cpt_of_[index]];
}

void BayesNet::require_valid() const {
  if (!valid()) {
    const Violation& v = validation_.violations.front();
    throw InvalidNetError(std::string("invalid net (") + ViolationKindName(v.kind) + "): " + v.message);
  }
}

std::vector<std::size_t> BayesNet::topological_order() const {
  require_valid();
  std::vector<std::size_t> indegree(size(), 0);
  for (const auto& e : edges_) ++indegree[e.second];
  std::set<std::size_t> ready;
  for (std::size_t i = 0; i < size(); ++i) {
    if (indegree[i] == 0) ready.insert(i);
  }
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    std::size_t u = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(u);
    for (std::size_t c : children_[u]) {
      if (--indegree[c] == 0) ready.insert(c);
    }
  }
  return order;
}

std::vector<bool> BayesNet::descendants(std::size_t index) const {
  std::vector<bool> mark(size(), false);
  std::vector<std::size_t> stack(children_.at(index).begin(), children_.at(index).end());
  while (!stack.empty()) {
    std::size_t u = stack.back();
    stack.pop_back();
    if (mark[u]) continue;
    mark[u] = true;
    for (std::size_t c : children_[u]) stack.push_back(c);
  }
  return mark;
}

std::vector<bool> BayesNet::ancestors_of(const std::vector<bool>& nodes) const {
  std::vector<bool> mark(size(), false);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i]) stack.push_back(i);
  }
  while (!stack.empty()) {
    std::size_t u = stack.back();
    stack.pop_back();
    if (mark[u]) continue;
    mark[u] = true;
    for (std::size_t p : parents_[u]) stack.push_back(p);
  }
  return mark;
}

double BayesNet::joint_probability(std::span<const std::size_t> states) const {
  double p = 1.0;
  for (std::size_t i = 0; i < compiled_.size(); ++i) {
    const CompiledCpt& c = compiled_[i];
    std::size_t row = 0;
    for (std::size_t k = 0; k < c.parent_index.size(); ++k) row += states[c.parent_index[k]] * c.stride[k];
    p *= c.table[row * c.child_card + states[i]];
    if (p == 0.0) return 0.0;
  }
  return p;
}

std::size_t BayesNet::joint_state_count() const {
  std::size_t count = 1;
  for (const auto& v : variables_) count *= v.cardinality();
  return count;
}

// ---------------------------------------------------------------------------
// Distribution

double Distribution::at(std::span<const std::size_t> states) const {
  std::size_t flat = 0;
  for (std::size_t k = 0; k < labels.size(); ++k) flat = flat * labels[k].size() + states[k];
  return table.at(flat);
}

double Distribution::probability(const Assignment& assignment) const {
  std::vector<std::size_t> states(targets.size());
  for (std::size_t k = 0; k < targets.size(); ++k) {
    auto it = assignment.find(targets[k]);
    if (it == assignment.end()) throw IncompleteAssignmentError("target '" + targets[k] + "' unbound");
    auto pos = std::find(labels[k].begin(), labels[k].end(), it->second);
    if (pos == labels[k].end()) {
      throw std::out_of_range("'" + it->second + "' is not a state of '" + targets[k] + "'");
    }
    states[k] = static_cast<std::size_t>(pos - labels[k].begin());
  }
  return at(states);
}

std::vector<std::size_t> Distribution::decode(std::size_t flat) const {
  std::vector<std::size_t> states(labels.size());
  for (std::size_t k = labels.size(); k-- > 0;) {
    states[k] = flat % labels[k].size();
    flat /= labels[k].size();
  }
  return states;
}

// ---------------------------------------------------------------------------
// Operations

ValidationReport validate(const BayesNet& net) { return net.validation(); }

namespace {

std::size_t bind_state(const BayesNet& net, std::size_t index, const std::string& label) {
  const Variable& v = net.variable(index);
  auto s = v.state_index(label);
  if (!s) throw std::out_of_range("'" + label + "' is not a state of '" + v.id + "'");
  return *s;
}

// Sums the joint over all completions of the evidence, handing each
// positive-probability configuration to `visit`. Returns Pr(evidence).
template <typename Visit>
double enumerate(const BayesNet& net, const std::vector<std::optional<std::size_t>>& fixed,
                 std::size_t limit, Visit&& visit) {
  std::vector<std::size_t> free_vars;
  std::vector<std::size_t> states(net.size(), 0);
  std::size_t count = 1;
  for (std::size_t i = 0; i < net.size(); ++i) {
    if (fixed[i]) {
      states[i] = *fixed[i];
    } else {
      free_vars.push_back(i);
      count *= net.variable(i).cardinality();
      if (count > limit) {
        throw CapExceededError("joint enumeration exceeds limit of " + std::to_string(limit) + " states");
      }
    }
  }
  double total = 0.0;
  for (std::size_t step = 0; step < count; ++step) {
    double p = net.joint_probability(states);
    if (p > 0.0) {
      total += p;
      visit(std::span<const std::size_t>(states), p);
    }
    for (std::size_t k = free_vars.size(); k-- > 0;) {
      std::size_t v = free_vars[k];
      if (++states[v] < net.variable(v).cardinality()) break;
      states[v] = 0;
    }
  }
  return total;
}

std::vector<std::optional<std::size_t>> bind_evidence(const BayesNet& net, const Assignment& evidence) {
  std::vector<std::optional<std::size_t>> fixed(net.size());
  for (const auto& [id, label] : evidence) {
    std::size_t i = net.index_of(id);
    fixed[i] = bind_state(net, i, label);
  }
  return fixed;
}

Distribution empty_distribution(const BayesNet& net, const std::vector<std::string>& targets,
                                std::vector<std::size_t>& target_index) {
  Distribution d;
  d.targets = targets;
  std::size_t size = 1;
  std::set<std::string> seen;
  for (const auto& t : targets) {
    if (!seen.insert(t).second) throw std::invalid_argument("target '" + t + "' listed twice");
    std::size_t i = net.index_of(t);
    target_index.push_back(i);
    d.labels.push_back(net.variable(i).states);
    size *= net.variable(i).cardinality();
  }
  d.table.assign(size, 0.0);
  return d;
}

std::size_t flat_index(const Distribution& d, const std::vector<std::size_t>& target_index,
                       std::span<const std::size_t> states) {
  std::size_t flat = 0;
  for (std::size_t k = 0; k < target_index.size(); ++k) {
    flat = flat * d.labels[k].size() + states[target_index[k]];
  }
  return flat;
}

}  // namespace

double joint_probability(const BayesNet& net, const Assignment& full) {
  net.require_valid();
  std::vector<std::size_t> states(net.size());
  for (const auto& [id, label] : full) {
    if (!net.contains(id)) throw std::out_of_range("unknown variable '" + id + "'");
  }
  for (std::size_t i = 0; i < net.size(); ++i) {
    auto it = full.find(net.variable(i).id);
    if (it == full.end()) {
      throw IncompleteAssignmentError("assignment leaves '" + net.variable(i).id + "' unbound");
    }
    states[i] = bind_state(net, i, it->second);
  }
  return net.joint_probability(states);
}

Distribution query(const BayesNet& net, const std::vector<std::string>& targets,
                   const Assignment& evidence, const QueryOptions& options) {
  net.require_valid();
  for (const auto& t : targets) {
    if (evidence.count(t) != 0) throw std::invalid_argument("'" + t + "' is both target and evidence");
  }
  std::vector<std::size_t> target_index;
  Distribution d = empty_distribution(net, targets, target_index);
  auto fixed = bind_evidence(net, evidence);
  double z = enumerate(net, fixed, options.enumeration_limit,
                       [&](std::span<const std::size_t> states, double p) {
                         d.table[flat_index(d, target_index, states)] += p;
                       });
  if (!(z > 0.0)) throw ZeroProbabilityError("evidence has probability zero");
  for (double& p : d.table) p /= z;
  return d;
}

double evidence_probability(const BayesNet& net, const Assignment& evidence,
                            const QueryOptions& options) {
  net.require_valid();
  auto fixed = bind_evidence(net, evidence);
  return enumerate(net, fixed, options.enumeration_limit, [](std::span<const std::size_t>, double) {});
}

Distribution marginal(const BayesNet& net, const std::vector<std::string>& targets,
                      const QueryOptions& options) {
  net.require_valid();
  std::vector<std::size_t> target_index;
  Distribution d = empty_distribution(net, targets, target_index);
  std::vector<std::optional<std::size_t>> fixed(net.size());
  enumerate(net, fixed, options.enumeration_limit, [&](std::span<const std::size_t> states, double p) {
    d.table[flat_index(d, target_index, states)] += p;
  });
  return d;
}

bool d_separated(const BayesNet& net, const VariableSet& x, const VariableSet& y,
                 const VariableSet& z) {
  auto to_mask = [&net](const VariableSet& set) {
    std::vector<bool> mask(net.size(), false);
    for (const auto& id : set) mask[net.index_of(id)] = true;
    return mask;
  };
  const std::vector<bool> in_x = to_mask(x);
  const std::vector<bool> in_y = to_mask(y);
  const std::vector<bool> in_z = to_mask(z);
  for (std::size_t i = 0; i < net.size(); ++i) {
    if ((in_x[i] && in_y[i]) || (in_x[i] && in_z[i]) || (in_y[i] && in_z[i])) {
      throw std::invalid_argument("d-separation sets must be disjoint ('" + net.variable(i).id + "')");
    }
  }
  // Reachability over (node, arrived-from-child) states; a collider passes
  // only when it has a conditioned descendant or is conditioned itself.
  const std::vector<bool> z_or_ancestor = net.ancestors_of(in_z);
  std::vector<std::array<bool, 2>> visited(net.size(), {false, false});
  std::vector<std::pair<std::size_t, bool>> stack;  // (node, from_child)
  for (std::size_t i = 0; i < net.size(); ++i) {
    if (in_x[i]) stack.emplace_back(i, true);
  }
  while (!stack.empty()) {
    auto [u, from_child] = stack.back();
    stack.pop_back();
    if (visited[u][from_child ? 1 : 0]) continue;
    visited[u][from_child ? 1 : 0] = true;
    if (!in_z[u] && in_y[u]) return false;
    if (from_child) {
      if (in_z[u]) continue;
      for (std::size_t p : net.parents(u)) stack.emplace_back(p, true);
      for (std::size_t c : net.children(u)) stack.emplace_back(c, false);
    } else {
      if (!in_z[u]) {
        for (std::size_t c : net.children(u)) stack.emplace_back(c, false);
      }
      if (z_or_ancestor[u]) {
        for (std::size_t p : net.parents(u)) stack.emplace_back(p, true);
      }
    }
  }
  return true;
}

VariableSet markov_blanket(const BayesNet& net, std::string_view x) {
  const std::size_t i = net.index_of(x);
  VariableSet blanket;
  for (std::size_t p : net.parents(i)) blanket.insert(net.variable(p).id);
  for (std::size_t c : net.children(i)) {
    blanket.insert(net.variable(c).id);
    for (std::size_t cp : net.parents(c)) blanket.insert(net.variable(cp).id);
  }
  blanket.erase(std::string(x));
  return blanket;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    auto b = current.find_first_not_of(" \t");
    auto e = current.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(current.substr(b, e - b + 1));
    current.clear();
  };
  for (char c : text) {
    if (c == ',') {
      flush();
    } else {
      current.push_back(c);
    }
  }
  flush();
  return out;
}

Assignment parse_assignment(std::string_view text) {
  Assignment out;
  for (const auto& item : split_list(text)) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
      throw std::invalid_argument("expected name=state, got '" + item + "'");
    }
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t");
      auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    out[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
  }
  return out;
}

}  // namespace sigstruct
