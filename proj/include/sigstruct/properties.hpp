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

// Seeded property sweeps over random nets and the sign algebra. Each sweep
// stops counting at the first counterexample and describes it.

#ifndef SIGSTRUCT_PROPERTIES_HPP_
#define SIGSTRUCT_PROPERTIES_HPP_

#include <cstdint>
#include <random>
#include <string>

#include "sigstruct/bayesnet.hpp"

namespace sigstruct {

inline constexpr double kPropertyTolerance = 1e-9;

struct PropertyResult {
  bool holds = true;
  std::size_t cases = 0;
  double worst = 0.0;          // largest residual seen
  std::string counterexample;  // first failure
};

// DAG over `nodes` variables n0.. in topological order with 2 or 3 states
// each, forward edges kept with probability `density`, and strictly
// positive CPT entries.
BayesNet random_net(std::mt19937_64& rng, int nodes, double density);

// The joint sums to 1.
PropertyResult check_factorization(std::uint64_t seed, int nets = 200);
// d-separated triples have conditional mutual information <= tolerance.
PropertyResult check_dsep_soundness(std::uint64_t seed, int nets = 200);
// Each node is independent of the rest given its Markov blanket.
PropertyResult check_blanket_sufficiency(std::uint64_t seed, int nets = 60);
// Commutativity, associativity, identities, annihilation by zero,
// distributivity and monotonicity of the sign operations.
PropertyResult check_sign_laws();
// serialize(parse(serialize(net))) is stable and structure is preserved.
PropertyResult check_round_trip(std::uint64_t seed, int nets = 100);

}  // namespace sigstruct

#endif  // SIGSTRUCT_PROPERTIES_HPP_
