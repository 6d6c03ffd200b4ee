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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "sigstruct/canonical.hpp"
#include "sigstruct/error.hpp"
#include "sigstruct/games.hpp"

namespace sigstruct {
namespace {

// Expected utility by walking every full assignment of the world.
double FlatExpectedUtility(const BayesianGame& g, const StrategyProfile& profile, std::size_t player) {
  const BayesNet& net = g.world;
  std::vector<std::size_t> st(net.size(), 0);
  double total = 0.0;
  while (true) {
    Assignment a;
    for (std::size_t k = 0; k < net.size(); ++k) a[net.variable(k).id] = net.variable(k).states[st[k]];
    const double p = joint_probability(net, a);
    if (p > 0.0) {
      std::vector<double> vals, bids;
      for (std::size_t i = 0; i < g.players(); ++i) {
        vals.push_back(std::stod(a[g.values[i]]));
        const std::size_t s = *net.variable(g.signals[i]).state_index(a[g.signals[i]]);
        bids.push_back(g.grids[i][profile[i][s]]);
      }
      total += p * g.payoff(player, vals, bids);
    }
    std::size_t k = net.size();
    while (k-- > 0) {
      if (++st[k] < net.variable(k).cardinality()) break;
      st[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return total;
}

// Deviation scan through expected_utility alone: every single-signal bid
// change for every player.
double ScanGain(const BayesianGame& g, const StrategyProfile& profile) {
  double gain = 0.0;
  for (std::size_t i = 0; i < g.players(); ++i) {
    const double base = expected_utility(g, profile, i);
    double total = 0.0;
    for (std::size_t s = 0; s < profile[i].size(); ++s) {
      double best = 0.0;
      for (std::size_t b = 0; b < g.grids[i].size(); ++b) {
        StrategyProfile alt = profile;
        alt[i][s] = b;
        best = std::max(best, expected_utility(g, alt, i) - base);
      }
      total += best;  // own-signal events are additive
    }
    gain = std::max(gain, total);
  }
  return gain;
}

BayesianGame MatchingPennies() {
  BayesNet::Builder b;
  for (const char* id : {"s1", "s2"}) b.node(Variable{id, {"0"}, true}, {}, {{1.0}});
  for (const char* id : {"v1", "v2"}) b.node(Variable{id, {"0"}, true}, {}, {{1.0}});
  BayesianGame g;
  g.world = b.build();
  g.signals = {"s1", "s2"};
  g.values = {"v1", "v2"};
  g.grids = {{0, 1}, {0, 1}};
  g.general = [](std::size_t i, const std::vector<double>&, const std::vector<double>& bids) {
    const double match = bids[0] == bids[1] ? 1.0 : -1.0;
    return i == 0 ? match : -match;
  };
  return g;
}

TEST_CASE("auction payoffs match the stated forms") {
  PayoffDecomposition fpsb = AuctionDecomposition(AuctionKind::kFpsb);
  PayoffDecomposition spsb = AuctionDecomposition(AuctionKind::kSpsb);
  auto u = [](const PayoffDecomposition& d, double v, double b, std::vector<double> others) {
    return d.f(v, b) * d.g(b, others) + d.h(b, others);
  };
  CHECK(u(fpsb, 1.0, 0.4, {0.2}) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(u(fpsb, 1.0, 0.2, {0.4}) == 0.0);
  CHECK(win_share(0.3, {0.3}) == 0.5);
  CHECK(win_share(0.3, {0.3, 0.3}) == doctest::Approx(1.0 / 3.0));
  CHECK(u(spsb, 1.0, 0.8, {0.3}) == doctest::Approx(0.7).epsilon(1e-15));

  // The general form agrees with f*g + h on every grid point.
  BayesianGame g = make_auction(AuctionKind::kFpsb, build_canonical(CanonicalId::kFig5chance),
                                {uniform_grid(0, 1, 11), uniform_grid(0, 1, 11)});
  g.general = [](std::size_t i, const std::vector<double>& v, const std::vector<double>& b) {
    return (v[i] - b[i]) * win_share(b[i], {b[1 - i]});
  };
  CHECK(decomposition_gap(g) == 0.0);
  BayesianGame s = make_auction(AuctionKind::kSpsb, build_canonical(CanonicalId::kFig5chance),
                                {uniform_grid(0, 1, 11), uniform_grid(0, 1, 11)});
  s.general = [](std::size_t i, const std::vector<double>& v, const std::vector<double>& b) {
    return (v[i] - b[1 - i]) * win_share(b[i], {b[1 - i]});
  };
  CHECK(decomposition_gap(s) == 0.0);

  BayesNet::Builder nb;
  nb.node(Variable{"s1", {"0", "1"}, true}, {}, {{0.5, 0.5}});
  nb.node(Variable{"s2", {"0", "1"}, true}, {}, {{0.5, 0.5}});
  CHECK_THROWS_AS(make_auction(AuctionKind::kFpsb, nb.build(), {{0.0}, {0.0}}), ParameterError);
}

TEST_CASE("expected utility matches flat enumeration") {
  const std::vector<double> grid = {0.0, 0.25, 0.5, 0.75, 1.0};
  std::mt19937_64 rng(3);
  for (CanonicalId id : {CanonicalId::kAppendixA, CanonicalId::kFig1a, CanonicalId::kFig1d, CanonicalId::kFig5chance}) {
    CAPTURE(CanonicalIdName(id));
    for (AuctionKind kind : {AuctionKind::kFpsb, AuctionKind::kSpsb}) {
      BayesianGame g = make_auction(kind, build_canonical(id), {grid, grid});
      for (int t = 0; t < 10; ++t) {
        StrategyProfile p(2);
        for (std::size_t i = 0; i < 2; ++i) {
          for (std::size_t s = 0; s < signal_count(g, i); ++s) p[i].push_back(rng() % grid.size());
        }
        for (std::size_t i = 0; i < 2; ++i) {
          CHECK(std::fabs(expected_utility(g, p, i) - FlatExpectedUtility(g, p, i)) <= 1e-12);
        }
      }
    }
  }
  // Posterior-mean bids on AppendixA: E[v | s_i] is 1/2 or 1.
  BayesianGame a = make_auction(AuctionKind::kFpsb, build_canonical(CanonicalId::kAppendixA), {grid, grid});
  StrategyProfile truthful = {{2, 4}, {2, 4}};
  CHECK(std::fabs(expected_utility(a, truthful, 0) - FlatExpectedUtility(a, truthful, 0)) <= 1e-12);
  // Everyone bids zero: the tie splits a good of positive value for free.
  CHECK(expected_utility(a, {{0, 0}, {0, 0}}, 0) > 0.0);
  BayesianGame zero = a;
  zero.general = [](std::size_t, const std::vector<double>&, const std::vector<double>&) { return 0.0; };
  CHECK(expected_utility(zero, truthful, 1) == 0.0);
}

TEST_CASE("best-response sets") {
  SUBCASE("truthful bidding is a best response in second price with private values") {
    const std::vector<double> grid = uniform_grid(0, 1, 6);
    BayesianGame g = make_auction(AuctionKind::kSpsb, ipv_grid_world(grid), {grid, grid});
    Strategy truthful = {0, 1, 2, 3, 4, 5};
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
      Strategy opp;
      for (int s = 0; s < 6; ++s) opp.push_back(rng() % 6);
      CHECK(best_responses(g, {Strategy(6, 0), opp}, 0).contains(truthful));
    }
  }
  SUBCASE("strict dominance gives a singleton") {
    BayesNet::Builder b;
    b.node(Variable{"s1", {"0", "1"}, true}, {}, {{0.5, 0.5}});
    b.node(Variable{"s2", {"0"}, true}, {}, {{1.0}});
    b.node(Variable{"v1", {"1"}, true}, {}, {{1.0}});
    b.node(Variable{"v2", {"0"}, true}, {}, {{1.0}});
    BayesianGame g;
    g.world = b.build();
    g.signals = {"s1", "s2"};
    g.values = {"v1", "v2"};
    g.grids = {{0, 1, 2}, {0}};
    g.general = [](std::size_t i, const std::vector<double>&, const std::vector<double>& bids) { return i == 0 ? bids[0] : 0.0; };
    BestResponseSet br = best_responses(g, {{0, 0}, {0}}, 0);
    CHECK(br.size() == 1);
    CHECK(br.lowest() == Strategy{2, 2});
    CHECK(br.value == doctest::Approx(2.0));
    g.general = [](std::size_t, const std::vector<double>&, const std::vector<double>&) { return 1.0; };
    BestResponseSet tied = best_responses(g, {{0, 0}, {0}}, 0);
    CHECK(tied.size() == 9);
    CHECK(tied.enumerate().size() == 9);
    g.grids[0] = {0, 1};
    CHECK(best_responses(g, {{0, 0}, {0}}, 0).size() == 4);  // 2^|S_1|
    CHECK_THROWS_AS(best_responses(g, {{0, 0}, {0}}, 0, 3), CapExceededError);
  }
}

TEST_CASE("pure equilibrium search") {
  BayesianGame mp = MatchingPennies();
  CHECK(find_pure_equilibria(mp, 0.0).empty());
  CHECK(find_pure_equilibria(mp, 2.0).size() == 4);
  CHECK_THROWS_AS(find_pure_equilibria(mp, 0.0, 3), CapExceededError);

  // Coordination game: the two matching profiles, in order.
  BayesianGame coord = mp;
  coord.general = [](std::size_t, const std::vector<double>&, const std::vector<double>& b) { return b[0] == b[1] ? 1.0 : 0.0; };
  auto eq = find_pure_equilibria(coord, 0.0);
  REQUIRE(eq.size() == 2);
  CHECK(eq[0] == StrategyProfile{{0}, {0}});
  CHECK(eq[1] == StrategyProfile{{1}, {1}});

  // Small FPSB: every reported equilibrium survives an independent scan and
  // every non-reported profile has a profitable deviation.
  const std::vector<double> grid = {0.0, 0.5, 1.0};
  BayesianGame a = make_auction(AuctionKind::kFpsb, build_canonical(CanonicalId::kAppendixA), {grid, grid});
  auto found = find_pure_equilibria(a, 0.0);
  CHECK_FALSE(found.empty());
  for (const auto& p : found) CHECK(ScanGain(a, p) <= 1e-12);
  std::set<StrategyProfile> reported(found.begin(), found.end());
  for (std::size_t x = 0; x < 9; ++x) {
    for (std::size_t y = 0; y < 9; ++y) {
      StrategyProfile p = {{x / 3, x % 3}, {y / 3, y % 3}};
      if (!reported.count(p)) CHECK(ScanGain(a, p) > 1e-12);
    }
  }
}

TEST_CASE("first-price bids shade to about half the private value") {
  const std::vector<double> grid = uniform_grid(0, 1, 11);
  BayesianGame g = make_auction(AuctionKind::kFpsb, ipv_grid_world(grid), {grid, grid});
  // On this grid no exact pure symmetric equilibrium exists; best responses
  // cycle between neighbouring shadings.
  CHECK(find_symmetric_equilibria(g, 0.0, true).empty());
  auto eq = find_symmetric_equilibria(g, 1e-3, true);
  REQUIRE_FALSE(eq.empty());
  for (const auto& s : eq) {
    CHECK(ScanGain(g, {s, s}) <= 1e-3 + 1e-12);
    for (std::size_t k = 0; k < grid.size(); ++k) CHECK(std::fabs(grid[s[k]] - grid[k] / 2) <= 0.1 + 1e-12);
  }
}

TEST_CASE("iterated best response") {
  BayesianGame coord = MatchingPennies();
  coord.general = [](std::size_t, const std::vector<double>&, const std::vector<double>& b) { return b[0] == b[1] ? 1.0 : 0.0; };
  IteratedBestResponse r = iterated_best_response(coord, {{1}, {0}});
  CHECK(r.converged);
  CHECK(r.profile[0] == r.profile[1]);
  IteratedBestResponse pennies = iterated_best_response(MatchingPennies(), {{0}, {0}}, 20);
  CHECK_FALSE(pennies.converged);
}

TEST_CASE("marginalizing to private values keeps each bidder's pair joint") {
  BayesianGame g = make_auction(AuctionKind::kFpsb, build_canonical(CanonicalId::kFig1d), {{0.0, 1.0}, {0.0, 1.0}});
  BayesianGame ipv = marginalize_to_ipv(g);
  for (std::size_t i = 0; i < 2; ++i) {
    Distribution a = marginal(g.world, {g.values[i], g.signals[i]});
    Distribution b = marginal(ipv.world, {ipv.values[i], ipv.signals[i]});
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::fabs(a.table[k] - b.table[k]) <= 1e-15);
  }
  CHECK(d_separated(ipv.world, {"s1", "v1"}, {"s2", "v2"}, {}));
  BayesianGame shared = make_auction(AuctionKind::kFpsb, build_canonical(CanonicalId::kAppendixA), {{0.0}, {0.0}});
  CHECK(marginalize_to_ipv(shared).values == std::vector<std::string>{"v1", "v2"});
}

TEST_CASE("independent signals with separable payoffs are strategically private values") {
  const std::vector<double> grid = uniform_grid(0, 1, 6);
  BayesianGame d = make_auction(AuctionKind::kFpsb, build_canonical(CanonicalId::kFig1d), {grid, grid});
  BayesianGame ipv = marginalize_to_ipv(d);
  Theorem1Report r = check_theorem1(d, ipv);
  CHECK(r.equivalent);
  CHECK(r.exhaustive);
  CHECK(r.profiles_checked == 72);
  CHECK(check_theorem1(ipv, ipv).equivalent);

  for (const auto& o : monotone_strategies(2, 6)) {
    for (const auto& m : monotone_strategies(2, 6)) CHECK(factorization_gap(d, {m, o}, 0) <= 1e-12);
  }

  BayesianGame a = make_auction(AuctionKind::kFpsb, build_canonical(CanonicalId::kFig1a), {grid, grid});
  Theorem1Report control = check_theorem1(a, marginalize_to_ipv(a));
  CHECK_FALSE(control.equivalent);
  REQUIRE(control.witness_player.has_value());
  CHECK(factorization_gap(a, control.witness_profile, *control.witness_player) > 1e-6);

  BayesianGame general = d;
  general.decomposition.reset();
  general.general = [](std::size_t, const std::vector<double>&, const std::vector<double>&) { return 0.0; };
  CHECK_THROWS_AS(check_theorem1(general, ipv), ParameterError);
}

TEST_CASE("winning is bad news about a common-cause value") {
  const std::vector<double> grid = uniform_grid(0, 1, 6);
  BayesianGame a = make_auction(AuctionKind::kFpsb, build_canonical(CanonicalId::kFig1a), {grid, grid});
  StrategyProfile opp = {{0, 0}, {1, 3}};
  for (std::size_t s = 0; s < 2; ++s) {
    WinnersCurse w = measure_winners_curse(a, 0, s, opp, grid[2]);
    REQUIRE(w.defined);
    CHECK(w.curse < 0.0);
  }
  BayesianGame ipv = marginalize_to_ipv(a);
  for (std::size_t s = 0; s < 2; ++s) CHECK(std::fabs(measure_winners_curse(ipv, 0, s, opp, grid[2]).curse) <= 1e-15);
  CHECK(std::fabs(measure_winners_curse(a, 0, 1, {{0, 0}, {2, 2}}, grid[3]).curse) <= 1e-15);
  WinnersCurse never = measure_winners_curse(a, 0, 1, {{0, 0}, {4, 4}}, grid[1]);
  CHECK_FALSE(never.defined);
  CHECK_THROWS_AS(measure_winners_curse(a, 0, 1, {{0, 0}, {3, 1}}, grid[1]), ParameterError);
}

TEST_CASE("three-level interdependent auction") {
  const std::vector<double> grid = uniform_grid(0, 1, 11);
  BayesianGame g = make_auction(AuctionKind::kFpsb, build_canonical(CanonicalId::kFig5chance), {grid, grid});
  const auto opponents = monotone_strategies(3, 11);
  CHECK(opponents.size() == 286);
  for (const auto& o : opponents) {
    BestResponseSet br = best_responses(g, {Strategy(3, 0), o}, 0);
    // Ascending in the strong set order.
    for (std::size_t s = 0; s + 1 < 3; ++s) {
      CHECK(br.argmax[s].front() <= br.argmax[s + 1].front());
      CHECK(br.argmax[s].back() <= br.argmax[s + 1].back());
    }
    CHECK(is_monotone(br.lowest()));
    CHECK(is_monotone(br.highest()));
  }
  auto inter = find_symmetric_equilibria(g, 0.0, true);
  auto priv = find_symmetric_equilibria(marginalize_to_ipv(g), 0.0, true);
  REQUIRE(inter.size() == 1);
  REQUIRE(priv.size() == 1);
  CHECK(inter[0] == Strategy{1, 2, 4});
  CHECK(priv[0] == Strategy{2, 3, 4});
  CHECK(ScanGain(g, {inter[0], inter[0]}) <= 1e-12);
}

TEST_CASE("monotone strategy enumeration") {
  auto all = monotone_strategies(3, 4);
  CHECK(all.size() == 20);
  CHECK(std::is_sorted(all.begin(), all.end()));
  for (const auto& s : all) CHECK(is_monotone(s));
  CHECK(uniform_grid(0, 1, 11)[3] == 0.3);
}

}  // namespace
}  // namespace sigstruct
