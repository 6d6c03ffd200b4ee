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

#ifndef SIGSTRUCT_STRUCTURE_CHECKS_HPP_
#define SIGSTRUCT_STRUCTURE_CHECKS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "sigstruct/bayesnet.hpp"

namespace sigstruct {

inline constexpr double kIndependenceTolerance = 1e-9;

struct IndependenceResult {
  bool independent = true;
  // max over z with Pr(z) > 0 of |Pr(x, y | z) - Pr(x | z) Pr(y | z)|
  double max_deviation = 0.0;
};

IndependenceResult check_independence(const BayesNet& net, const VariableSet& x, const VariableSet& y,
                                      const VariableSet& z = {});

enum class AffiliationVerdict { kAffiliated, kViolated, kDegenerate };
const char* AffiliationVerdictName(AffiliationVerdict v);

// One instance of Pr(x v y) Pr(x ^ y) >= Pr(x) Pr(y) with points given as
// state indices over the report's variables.
struct LatticeInstance {
  std::vector<std::size_t> x, y, join, meet;
  double lhs = 0.0;  // Pr(join) Pr(meet)
  double rhs = 0.0;  // Pr(x) Pr(y)
};

struct AffiliationReport {
  std::vector<std::string> variables;
  Assignment given;
  AffiliationVerdict verdict = AffiliationVerdict::kAffiliated;
  // Largest violation when violated, otherwise the tightest instance checked.
  std::optional<LatticeInstance> witness;
  std::size_t instances_checked = 0;
};

// Lattice inequality over the joint of `variables` (all ordered, at least
// two) conditioned on `given`. Degenerate when Pr(given) = 0 or a variable
// has a single state. Throws ParameterError for unordered variables.
AffiliationReport check_affiliation(const BayesNet& net, const std::vector<std::string>& variables,
                                    const Assignment& given = {});

inline AffiliationReport check_affiliation_pair(const BayesNet& net, const std::string& a, const std::string& b,
                                                const Assignment& given = {}) {
  return check_affiliation(net, {a, b}, given);
}

enum class SignalPattern { kGenerated, kInterpreted };
const char* SignalPatternName(SignalPattern p);

struct Classification {
  SignalPattern pattern = SignalPattern::kGenerated;
  // Signal pairs not d-separated by the outcome.
  std::vector<std::pair<std::string, std::string>> open_pairs;
};

// Generated iff the outcome d-separates every pair of signals.
Classification classify(const BayesNet& net, const std::vector<std::string>& signals, const std::string& outcome);

// A d-separation statement X _||_ Y | Z with its expected truth value.
struct DsepStatement {
  VariableSet x, y, z;
  bool separated = true;
};

std::string FormatStatement(const DsepStatement& s);

}  // namespace sigstruct

#endif  // SIGSTRUCT_STRUCTURE_CHECKS_HPP_
