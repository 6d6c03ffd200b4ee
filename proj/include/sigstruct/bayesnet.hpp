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

// Discrete Bayesian networks with exact enumeration inference and
// graph-theoretic independence queries (d-separation, Markov blankets).

#ifndef SIGSTRUCT_BAYESNET_HPP_
#define SIGSTRUCT_BAYESNET_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sigstruct {

inline constexpr double kProbTolerance = 1e-9;
inline constexpr std::size_t kDefaultEnumerationLimit = std::size_t{1} << 22;

struct Variable {
  std::string id;
  // Listed order is the state order; `ordered` says whether it means anything.
  std::vector<std::string> states;
  bool ordered = false;

  std::size_t cardinality() const { return states.size(); }
  std::optional<std::size_t> state_index(std::string_view label) const;

  // States sorted lexically, for callers that have no explicit order.
  static Variable Lexical(std::string id, std::vector<std::string> states,
                          bool ordered = false);
};

// Rows are indexed by the joint parent assignment in mixed radix over
// `parents`, last parent varying fastest.
struct Cpt {
  std::string child;
  std::vector<std::string> parents;
  std::vector<std::vector<double>> rows;
  bool deterministic = false;
};

// Partial map from variable id to state label.
using Assignment = std::map<std::string, std::string>;
using VariableSet = std::set<std::string>;

struct Violation {
  enum class Kind {
    kEmptyStates,
    kDuplicateVariable,
    kDuplicateState,
    kUnknownVariable,
    kSelfEdge,
    kDuplicateEdge,
    kCycle,
    kMissingCpt,
    kDuplicateCpt,
    kParentMismatch,
    kArityMismatch,
    kEntryRange,
    kRowSum,
    kNotDeterministic,
  };
  Kind kind;
  std::string subject;
  std::string message;
};

const char* ViolationKindName(Violation::Kind kind);

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(Violation::Kind kind) const;
};

class BayesNet {
 public:
  class Builder;

  BayesNet() = default;

  std::size_t size() const { return variables_.size(); }
  const std::vector<Variable>& variables() const { return variables_; }
  const Variable& variable(std::size_t index) const { return variables_.at(index); }
  const Variable& variable(std::string_view id) const;
  bool contains(std::string_view id) const;
  // Throws std::out_of_range naming the id.
  std::size_t index_of(std::string_view id) const;

  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  const std::vector<std::size_t>& parents(std::size_t index) const { return parents_.at(index); }
  const std::vector<std::size_t>& children(std::size_t index) const { return children_.at(index); }
  const std::vector<Cpt>& cpts() const { return cpts_; }
  // Null when the node has no CPT.
  const Cpt* cpt_for(std::size_t index) const;

  const ValidationReport& validation() const { return validation_; }
  bool valid() const { return validation_.ok(); }
  // Throws InvalidNetError with the first violation.
  void require_valid() const;

  std::vector<std::size_t> topological_order() const;
  // Strict descendants of `index`.
  std::vector<bool> descendants(std::size_t index) const;
  std::vector<bool> ancestors_of(const std::vector<bool>& nodes) const;

  // Probability of one full assignment given as state indices per variable.
  double joint_probability(std::span<const std::size_t> states) const;

  std::size_t joint_state_count() const;

 private:
  friend class Builder;

  struct CompiledCpt {
    std::vector<std::size_t> parent_index;  // in CPT order
    std::vector<std::size_t> stride;        // row stride per CPT parent
    std::size_t child_card = 0;
    std::vector<double> table;              // row-major, child state fastest
  };

  void finalize();

  std::vector<Variable> variables_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::vector<std::size_t>> parents_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<Cpt> cpts_;
  std::vector<std::optional<std::size_t>> cpt_of_;
  std::vector<CompiledCpt> compiled_;
  ValidationReport validation_;
};

// Collects structure and parameters; build() never throws, and the result
// carries its validation report. References to unknown variables are kept
// out of the graph and reported as violations.
class BayesNet::Builder {
 public:
  Builder& variable(Variable v);
  Builder& edge(std::string parent, std::string child);
  Builder& cpt(Cpt table);
  // Variable, its parent edges and its CPT in one call.
  Builder& node(Variable v, std::vector<std::string> parents,
                std::vector<std::vector<double>> rows, bool deterministic = false);

  BayesNet build() const;

 private:
  std::vector<Variable> variables_;
  std::vector<std::pair<std::string, std::string>> edges_;
  std::vector<Cpt> cpts_;
};

struct Distribution {
  std::vector<std::string> targets;
  std::vector<std::vector<std::string>> labels;
  // Mixed radix over targets, last target fastest.
  std::vector<double> table;

  std::size_t size() const { return table.size(); }
  double at(std::span<const std::size_t> states) const;
  // Every target must be bound.
  double probability(const Assignment& assignment) const;
  std::vector<std::size_t> decode(std::size_t flat) const;
};

ValidationReport validate(const BayesNet& net);

// `full` must bind every variable.
double joint_probability(const BayesNet& net, const Assignment& full);

struct QueryOptions {
  std::size_t enumeration_limit = kDefaultEnumerationLimit;
};

// Exact Pr(targets | evidence) by summing the joint over every completion.
// Throws ZeroProbabilityError when Pr(evidence) = 0.
Distribution query(const BayesNet& net, const std::vector<std::string>& targets,
                   const Assignment& evidence = {}, const QueryOptions& options = {});

double evidence_probability(const BayesNet& net, const Assignment& evidence,
                            const QueryOptions& options = {});

// Unconditional joint over `targets`, no normalization involved.
Distribution marginal(const BayesNet& net, const std::vector<std::string>& targets,
                      const QueryOptions& options = {});

// Every undirected path between X and Y is blocked by Z. X, Y, Z must be
// pairwise disjoint.
bool d_separated(const BayesNet& net, const VariableSet& x, const VariableSet& y,
                 const VariableSet& z);

VariableSet markov_blanket(const BayesNet& net, std::string_view x);

// Parses "a=1,b=0" (whitespace tolerant, empty string -> empty assignment).
Assignment parse_assignment(std::string_view text);
std::vector<std::string> split_list(std::string_view text);

}  // namespace sigstruct

#endif  // SIGSTRUCT_BAYESNET_HPP_
