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

// Finite Bayesian games over a signal world: sealed-bid auctions, exact
// expected utilities, best-response sets and pure equilibrium search.

#ifndef SIGSTRUCT_GAMES_HPP_
#define SIGSTRUCT_GAMES_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sigstruct/bayesnet.hpp"

namespace sigstruct {

// u_i = f(v_i, b_i) * g(b_i, b_{-i}) + h(b_i, b_{-i}).
struct PayoffDecomposition {
  std::function<double(double value, double own_bid)> f;
  std::function<double(double own_bid, const std::vector<double>& other_bids)> g;
  std::function<double(double own_bid, const std::vector<double>& other_bids)> h;
};

// u_i(values, bids) with values and bids indexed by player.
using GeneralPayoff =
    std::function<double(std::size_t player, const std::vector<double>& values, const std::vector<double>& bids)>;

enum class AuctionKind { kFpsb, kSpsb };
const char* AuctionKindName(AuctionKind k);
std::optional<AuctionKind> ParseAuctionKind(std::string_view name);

struct BayesianGame {
  BayesNet world;
  // Per player: signal variable and value variable in `world`. Value state
  // labels must parse as numbers. Players may share a value variable.
  std::vector<std::string> signals;
  std::vector<std::string> values;
  // Per player: a nonempty, strictly increasing bid grid.
  std::vector<std::vector<double>> grids;
  std::optional<PayoffDecomposition> decomposition;
  GeneralPayoff general;  // used when set, otherwise f*g + h
  std::string label;

  std::size_t players() const { return signals.size(); }
  double payoff(std::size_t player, const std::vector<double>& values, const std::vector<double>& bids) const;
  // Throws ParameterError on malformed games, including a joint signal
  // distribution that is not strictly positive.
  void check() const;
};

// Share of the good: 1/k when tied with k-1 others at the top, else 0 or 1.
double win_share(double own_bid, const std::vector<double>& other_bids);
PayoffDecomposition AuctionDecomposition(AuctionKind kind);

// Signals default to s1..sN; values to v1..vN, or a shared "v".
BayesianGame make_auction(AuctionKind kind, BayesNet world, std::vector<std::vector<double>> grids,
                          std::vector<std::string> signals = {}, std::vector<std::string> values = {});

// Largest |general - (f*g + h)| over every value state and grid point.
double decomposition_gap(const BayesianGame& game);

// Bid index per own-signal state.
using Strategy = std::vector<std::size_t>;
using StrategyProfile = std::vector<Strategy>;

std::size_t signal_count(const BayesianGame& game, std::size_t player);
bool is_monotone(const Strategy& s);
// Bids chosen by a strategy, for reports.
std::vector<double> strategy_bids(const BayesianGame& game, std::size_t player, const Strategy& s);

double expected_utility(const BayesianGame& game, const StrategyProfile& profile, std::size_t player);

inline constexpr double kBestResponseTolerance = 1e-12;
inline constexpr std::uint64_t kDefaultStrategyCap = std::uint64_t{1} << 40;
inline constexpr std::uint64_t kDefaultProfileCap = 2000000;

struct BestResponseSet {
  double value = 0.0;
  // Per own-signal state, every maximizing bid index in increasing order.
  std::vector<std::vector<std::size_t>> argmax;
  // Interim utility per own-signal state and bid, unnormalized.
  std::vector<std::vector<double>> interim;

  // Number of maximizing maps (saturates at UINT64_MAX).
  std::uint64_t size() const;
  bool contains(const Strategy& s) const;
  Strategy lowest() const;
  Strategy highest() const;
  // Every maximizing map; throws CapExceededError beyond `cap`.
  std::vector<Strategy> enumerate(std::uint64_t cap = kDefaultProfileCap) const;
  bool operator==(const BestResponseSet& o) const { return argmax == o.argmax; }
};

// Signal-separable exhaustive search over B_i^{S_i}; throws CapExceededError
// when |B_i|^|S_i| exceeds `cap`.
BestResponseSet best_responses(const BayesianGame& game, const StrategyProfile& profile, std::size_t player,
                               std::uint64_t cap = kDefaultStrategyCap);

// Largest gain any player can get by deviating.
double max_deviation_gain(const BayesianGame& game, const StrategyProfile& profile);

// Every pure profile within `epsilon` of best responding, in lexicographic
// order. Throws CapExceededError when there are more than `cap` profiles.
std::vector<StrategyProfile> find_pure_equilibria(const BayesianGame& game, double epsilon,
                                                  std::uint64_t cap = kDefaultProfileCap);

// Profiles where every player uses the same strategy; needs equal grids and
// signal spaces. `monotone_only` restricts to nondecreasing strategies.
std::vector<Strategy> find_symmetric_equilibria(const BayesianGame& game, double epsilon, bool monotone_only,
                                                std::uint64_t cap = kDefaultProfileCap);

struct IteratedBestResponse {
  StrategyProfile profile;
  bool converged = false;
  std::size_t rounds = 0;
};

// Round-robin switches to the lowest best response until nobody moves.
IteratedBestResponse iterated_best_response(const BayesianGame& game, StrategyProfile start,
                                            std::size_t max_rounds = 1000);

// Independent-private-values world with the same per-player (signal, value)
// joints and mutually independent players. Shared value variables are split
// into v1..vN.
BayesianGame marginalize_to_ipv(const BayesianGame& game);

// max over own signals and grid bids of
// |E[fg+h | s_i] - (E[f | s_i] E[g | s_i] + E[h | s_i])|.
double factorization_gap(const BayesianGame& game, const StrategyProfile& profile, std::size_t player);

struct Theorem1Report {
  bool equivalent = true;
  bool exhaustive = true;
  std::uint64_t profiles_checked = 0;
  // First opponent profile whose best-response sets differ.
  std::optional<std::size_t> witness_player;
  StrategyProfile witness_profile;
  std::string detail;
};

// Compares best-response sets of every player against every opponent
// profile (a seeded sample once the count exceeds `cap`). Both games need a
// decomposed payoff.
Theorem1Report check_theorem1(const BayesianGame& full, const BayesianGame& ipv, std::uint64_t cap = 100000,
                              std::uint64_t seed = 0);

struct WinnersCurse {
  bool defined = false;  // false when Pr(win | s) = 0
  double expected_value = 0.0;
  double expected_value_given_win = 0.0;
  double win_probability = 0.0;
  double curse = 0.0;  // E[v | s, win] - E[v | s]
};

// Win is weighted by the tie-splitting share at `own_bid`. The opponent
// strategies must be nondecreasing.
WinnersCurse measure_winners_curse(const BayesianGame& game, std::size_t player, std::size_t signal_state,
                                   const StrategyProfile& opponents, double own_bid);

// Every nondecreasing map from `signals` states to `bids` indices, in
// lexicographic order.
std::vector<Strategy> monotone_strategies(std::size_t signals, std::size_t bids);

// Values uniform over `levels`, each observed exactly by its own signal.
BayesNet ipv_grid_world(const std::vector<double>& levels, std::size_t players = 2);

std::vector<double> uniform_grid(double lo, double hi, std::size_t points);

}  // namespace sigstruct

#endif  // SIGSTRUCT_GAMES_HPP_
