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

// Interpreted signals: a state space of attribute vectors, a deterministic
// outcome, and per-agent interpretations that project the state onto a
// subset of attributes. Predictions are posterior argmaxes of the outcome.

#ifndef SIGSTRUCT_INTERPRETED_HPP_
#define SIGSTRUCT_INTERPRETED_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sigstruct/bayesnet.hpp"

namespace sigstruct {

// States of Omega are attribute tuples in mixed radix, last attribute fastest.
class AttributeSpace {
 public:
  // Independent attributes with the given marginals.
  static AttributeSpace Product(std::vector<Variable> attributes, std::vector<std::vector<double>> marginals);
  // Uniform independent attributes.
  static AttributeSpace Uniform(std::vector<Variable> attributes);
  // Explicit joint over Omega.
  static AttributeSpace Joint(std::vector<Variable> attributes, std::vector<double> joint);

  const std::vector<Variable>& attributes() const { return attributes_; }
  // Empty unless built from a product.
  const std::vector<std::vector<double>>& marginals() const { return marginals_; }
  bool is_product() const { return !marginals_.empty() || attributes_.empty(); }

  std::size_t size() const { return prior_.size(); }
  double prior(std::size_t omega) const { return prior_[omega]; }
  const std::vector<double>& prior() const { return prior_; }
  std::size_t attribute_state(std::size_t omega, std::size_t attribute) const;
  std::vector<std::size_t> decode(std::size_t omega) const;

 private:
  void check();
  std::vector<Variable> attributes_;
  std::vector<std::vector<double>> marginals_;
  std::vector<double> prior_;
  std::vector<std::size_t> stride_;
};

enum class TieBreak { kLowestOutcome, kHighestOutcome };

struct AgentView {
  std::string id;
  // Indices into the attribute list, ascending.
  std::vector<std::size_t> observed;
};

struct InterpretedModel {
  AttributeSpace space;
  Variable outcome;
  // outcome_of[omega] indexes outcome.states.
  std::vector<std::size_t> outcome_of;
  std::vector<AgentView> agents;
  TieBreak tie_break = TieBreak::kLowestOutcome;

  // Throws ParameterError when a field is inconsistent.
  void check() const;
  // Number of interpretation cells of an agent.
  std::size_t cell_count(std::size_t agent) const;
  // Cell index of pi_i(omega), mixed radix over the observed attributes.
  std::size_t interpretation(std::size_t agent, std::size_t omega) const;
  std::size_t cell_of(std::size_t agent, const std::vector<std::size_t>& observed_states) const;
};

// Builds the model from a callable over attribute tuples.
template <typename F>
InterpretedModel MakeInterpreted(AttributeSpace space, Variable outcome, F&& f, std::vector<AgentView> agents,
                                 TieBreak tie_break = TieBreak::kLowestOutcome) {
  InterpretedModel m{std::move(space), std::move(outcome), {}, std::move(agents), tie_break};
  for (std::size_t w = 0; w < m.space.size(); ++w) m.outcome_of.push_back(f(m.space.decode(w)));
  m.check();
  return m;
}

// The AppendixA pattern: two uniform bits, v = x1 OR x2, agent i sees x_i.
InterpretedModel AppendixAInterpreted();

// argmax_v of Pr(v, pi_i = cell). Throws ZeroProbabilityError for a null cell.
std::size_t predict(const InterpretedModel& m, std::size_t agent, std::size_t cell);
std::size_t predict(const InterpretedModel& m, std::size_t agent, const std::vector<std::size_t>& observed_states);

struct Correctness {
  std::vector<std::size_t> prediction;  // phi_i(omega)
  std::vector<int> delta;               // 1 iff prediction equals outcome
  double accuracy = 0.0;
};

// Null cells predict by the tie rule over zero mass; they carry no weight.
Correctness correctness(const InterpretedModel& m, std::size_t agent);

struct CorrelationResult {
  std::optional<double> coefficient;  // empty when either delta has zero variance
  double covariance = 0.0;
};

CorrelationResult correctness_correlation(const InterpretedModel& m, std::size_t i, std::size_t j);

// Deterministic net: attributes x_k, outcome v, pi_i and phi_i per agent,
// and delta_i when requested.
BayesNet to_bayes_net(const InterpretedModel& m, bool with_correctness = false);

// One configuration from the conditional-independence search: an outcome
// function over K binary attributes (bit w of `truth_table` is f at the
// attribute tuple with code w) and the attribute masks of the two agents
// (bit k set when attribute k is observed, attribute 0 most significant).
struct CiConfiguration {
  unsigned attributes = 0;
  unsigned long truth_table = 0;
  std::vector<unsigned> masks;

  InterpretedModel model() const;
};

struct CiSearchResult {
  std::vector<CiConfiguration> configurations;
  std::size_t functions_checked = 0;
  std::size_t configurations_checked = 0;
};

// Every nonconstant f and pair of observed subsets over K <= 4 uniform
// binary attributes where the signals are informative, not determined by
// v, and conditionally independent given v. Sorted by (f, masks).
CiSearchResult search_ci_outcome_functions(unsigned attributes, unsigned agents = 2);

// Exhaustive sweep over binary models with 1..max_attributes uniform
// attributes, every outcome function and every pair of observed subsets.
// A model qualifies when both predictions are balanced (each outcome
// predicted with probability 1/2), mutually independent, and correct with
// probability above 1/2.
struct CorrelationSweep {
  std::size_t models_checked = 0;
  std::size_t qualifying = 0;
  // Qualifying models where a correctness indicator is constant.
  std::size_t undefined = 0;
  double max_covariance = -1.0;
  std::optional<double> max_coefficient;
  std::optional<CiConfiguration> worst;  // largest covariance
};

CorrelationSweep sweep_correctness_correlation(unsigned max_attributes = 3);

// Is the signal informative: accuracy strictly above the best constant guess.
bool informative(const InterpretedModel& m, std::size_t agent);
// Does some outcome value leave more than one signal cell with positive mass.
bool nondegenerate(const InterpretedModel& m, std::size_t agent);

// N partitions of a uniform Omega with |Omega| = states; partitions[i][w] is
// the block of state w under agent i.
struct PartitionWitness {
  std::size_t states = 0;
  std::vector<std::vector<std::size_t>> partitions;
};

struct InterpretationSearch {
  std::optional<std::size_t> minimal_states;
  std::optional<PartitionWitness> witness;
  // Sizes examined without finding a witness.
  std::vector<std::size_t> exhausted;
};

// First witness at exactly `states`, or none. N <= 3, states <= 64.
std::optional<PartitionWitness> find_independent_partitions(unsigned agents, std::size_t states);
// Smallest |Omega| <= max_states with N mutually independent nontrivial
// partitions under the uniform prior.
InterpretationSearch search_independent_interpretations(unsigned agents, std::size_t max_states);

// Joint pmf of the partitions factorizes (absolute tolerance 1e-12).
bool mutually_independent(const PartitionWitness& w);

}  // namespace sigstruct

#endif  // SIGSTRUCT_INTERPRETED_HPP_
