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

// Logarithmic market scoring rule: value of information, signal
// interaction, and a finite alternating-report game.

#ifndef SIGSTRUCT_MARKET_HPP_
#define SIGSTRUCT_MARKET_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sigstruct/bayesnet.hpp"

namespace sigstruct {

// Expected log-score gain, in nats, of reporting Pr(outcome | info) instead
// of the prior.
double information_value(const BayesNet& net, const std::string& outcome, const std::vector<std::string>& info);

enum class Interaction { kComplements, kSubstitutes, kAdditive };
const char* InteractionName(Interaction i);

inline constexpr double kInteractionTolerance = 1e-12;

struct InteractionReport {
  double v1 = 0.0;
  double v2 = 0.0;
  double v12 = 0.0;
  Interaction verdict = Interaction::kAdditive;
};

InteractionReport signal_interaction(const BayesNet& net, const std::string& outcome, const std::string& s1 = "s1",
                                     const std::string& s2 = "s2");

using Belief = std::vector<double>;

struct MsrGame {
  BayesNet world;
  std::string outcome = "v";
  std::array<std::string, 2> signals = {"s1", "s2"};
  // Agent index per move. After the first move, each move must be its
  // agent's last.
  std::vector<std::size_t> stages = {0, 1, 0};
  std::size_t grid_points = 21;
  double probability_floor = 1e-9;  // log(0) is read as log(floor)
  std::uint64_t strategy_cap = 10000000;
};

// Prior, posteriors given s1 in A and s2 in B for all nonempty A and B, and
// interior grid points, deduplicated.
std::vector<Belief> msr_menu(const MsrGame& game);

struct MsrSolution {
  std::vector<Belief> menu;
  // Menu index per stage-1 signal state of the first mover.
  std::vector<std::size_t> best_strategy;
  std::vector<std::size_t> truthful_strategy;
  double best_value = 0.0;
  double truthful_value = 0.0;
  double bluff_gain = 0.0;
  bool clamp_used = false;
  std::uint64_t strategies_checked = 0;
};

// The first mover's stage-1 report map is searched exhaustively; every later
// move is a best report given the public history, which is sequentially
// rational since it is the mover's last.
MsrSolution solve_msr(const MsrGame& game);

}  // namespace sigstruct

#endif  // SIGSTRUCT_MARKET_HPP_
