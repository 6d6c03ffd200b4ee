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

#ifndef SIGSTRUCT_CANONICAL_HPP_
#define SIGSTRUCT_CANONICAL_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sigstruct/bayesnet.hpp"

namespace sigstruct {

enum class CanonicalId {
  kFig1a,       // omega -> v_i -> s_i
  kFig1b,       // v_i -> s_i, no shared state
  kFig1c,       // v -> s_i, one common value
  kFig1d,       // omega0 -> v_i <- s_i
  kFig2a,       // omega -> v, omega -> s_i
  kFig2b,       // omega -> v, omega -> pi_i -> phi_i
  kFig3a,       // x_i -> pi_i -> phi_i, {x_i} -> v
  kFig3b,       // Fig3a plus delta_i <- {phi_i, v}
  kFig4a,       // v -> s_i
  kFig4b,       // {s1, s2} -> v
  kFig5chance,  // three-level Fig1a used by the auction instances
  kFig6chance,  // x_i -> s_i, {x1, x2} -> v
  kAppendixA,   // s1, s2 uniform, v = s1 OR s2
};

struct CanonicalParams {
  int agents = 2;
  // Pr(s_i = v_i) for binary generated signals.
  double accuracy = 0.75;
  // Pr(v_i = omega) in Fig1a.
  double coupling = 0.8;
};

struct CanonicalModel {
  CanonicalId id = CanonicalId::kAppendixA;
  CanonicalParams params;
};

const std::vector<CanonicalId>& AllCanonicalIds();
std::string_view CanonicalIdName(CanonicalId id);
std::optional<CanonicalId> ParseCanonicalId(std::string_view name);

// Throws ParameterError when params do not fit the structure.
BayesNet build_canonical(const CanonicalModel& model);
inline BayesNet build_canonical(CanonicalId id) { return build_canonical(CanonicalModel{id, {}}); }

// Signal and value variable ids of agent i (1-based), in the naming every
// builder uses: s<i>, v<i> or the shared "v".
std::string SignalId(int agent);
std::string ValueId(int agent);

}  // namespace sigstruct

#endif  // SIGSTRUCT_CANONICAL_HPP_
