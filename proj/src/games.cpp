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

#include "sigstruct/games.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "sigstruct/error.hpp"

namespace sigstruct {
namespace {

double ParseNumber(const std::string& label, const std::string& var) {
  double x = 0.0;
  const char* end = label.data() + label.size();
  auto [ptr, ec] = std::from_chars(label.data(), end, x);
  if (ec != std::errc() || ptr != end) {
    throw ParameterError("value variable '" + var + "' has non-numeric state '" + label + "'");
  }
  return x;
}

std::string FormatNumber(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::uint64_t SaturatingPow(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t k = 0; k < exp; ++k) {
    if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    out *= base;
  }
  return out;
}

std::uint64_t SaturatingMul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

// Positive-probability joint states of (signals, values), grouped by each
// player's own signal state.
class Compiled {
 public:
  struct Entry {
    std::vector<std::size_t> signal;  // per player
    std::vector<double> value;        // per player
    double p = 0.0;
  };

  explicit Compiled(const BayesianGame& game) : game_(game) {
    game.check();
    const std::size_t n = game.players();
    std::vector<std::string> targets;
    auto slot = [&](const std::string& id) {
      auto it = std::find(targets.begin(), targets.end(), id);
      if (it != targets.end()) return static_cast<std::size_t>(it - targets.begin());
      targets.push_back(id);
      return targets.size() - 1;
    };
    std::vector<std::size_t> sig_slot(n), val_slot(n);
    for (std::size_t i = 0; i < n; ++i) sig_slot[i] = slot(game.signals[i]);
    for (std::size_t i = 0; i < n; ++i) val_slot[i] = slot(game.values[i]);
    std::vector<std::vector<double>> numeric(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& label : game.world.variable(game.values[i]).states) {
        numeric[i].push_back(ParseNumber(label, game.values[i]));
      }
    }
    Distribution d = marginal(game.world, targets);
    groups_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) groups_[i].assign(game.world.variable(game.signals[i]).cardinality(), {});
    for (std::size_t flat = 0; flat < d.size(); ++flat) {
      if (d.table[flat] <= 0.0) continue;
      std::vector<std::size_t> st = d.decode(flat);
      Entry e;
      e.p = d.table[flat];
      for (std::size_t i = 0; i < n; ++i) {
        e.signal.push_back(st[sig_slot[i]]);
        e.value.push_back(numeric[i][st[val_slot[i]]]);
      }
      for (std::size_t i = 0; i < n; ++i) groups_[i][e.signal[i]].push_back(entries_.size());
      entries_.push_back(std::move(e));
    }
    bids_.resize(n);
  }

  const std::vector<Entry>& entries() const { return entries_; }
  const std::vector<std::size_t>& group(std::size_t player, std::size_t state) const { return groups_[player][state]; }
  std::size_t states(std::size_t player) const { return groups_[player].size(); }

  double Payoff(std::size_t player, const Entry& e) {
    if (game_.general) return game_.general(player, e.value, bids_);
    others_.clear();
    for (std::size_t j = 0; j < bids_.size(); ++j) {
      if (j != player) others_.push_back(bids_[j]);
    }
    const PayoffDecomposition& d = *game_.decomposition;
    const double b = bids_[player];
    return d.f(e.value[player], b) * d.g(b, others_) + d.h(b, others_);
  }

  void SetOpponentBids(const StrategyProfile& profile, std::size_t player, const Entry& e) {
    for (std::size_t j = 0; j < bids_.size(); ++j) {
      if (j != player) bids_[j] = game_.grids[j][profile[j][e.signal[j]]];
    }
  }

  // Pr(s_i = state and ...) times expected payoff of bidding `bid` there.
  double Interim(const StrategyProfile& profile, std::size_t player, std::size_t state, double bid) {
    double total = 0.0;
    for (std::size_t k : groups_[player][state]) {
      const Entry& e = entries_[k];
      SetOpponentBids(profile, player, e);
      bids_[player] = bid;
      total += e.p * Payoff(player, e);
    }
    return total;
  }

  double Expected(const StrategyProfile& profile, std::size_t player) {
    double total = 0.0;
    for (std::size_t s = 0; s < states(player); ++s) {
      total += Interim(profile, player, s, game_.grids[player][profile[player][s]]);
    }
    return total;
  }

  BestResponseSet Best(const StrategyProfile& profile, std::size_t player) {
    BestResponseSet out;
    const auto& grid = game_.grids[player];
    for (std::size_t s = 0; s < states(player); ++s) {
      std::vector<double> row;
      for (double b : grid) row.push_back(Interim(profile, player, s, b));
      const double best = *std::max_element(row.begin(), row.end());
      std::vector<std::size_t> arg;
      for (std::size_t k = 0; k < row.size(); ++k) {
        if (row[k] >= best - kBestResponseTolerance) arg.push_back(k);
      }
      out.value += best;
      out.argmax.push_back(std::move(arg));
      out.interim.push_back(std::move(row));
    }
    return out;
  }

  // True when `profile[player]` is within epsilon of a best response.
  bool BestResponding(const StrategyProfile& profile, std::size_t player, double epsilon) {
    double gain = 0.0;
    const auto& grid = game_.grids[player];
    for (std::size_t s = 0; s < states(player); ++s) {
      const double current = Interim(profile, player, s, grid[profile[player][s]]);
      double best = current;
      for (double b : grid) best = std::max(best, Interim(profile, player, s, b));
      gain += best - current;
      if (gain > epsilon + kBestResponseTolerance) return false;
    }
    return true;
  }

 private:
  const BayesianGame& game_;
  std::vector<Entry> entries_;
  std::vector<std::vector<std::vector<std::size_t>>> groups_;
  std::vector<double> bids_, others_;
};

void CheckProfile(const BayesianGame& game, const StrategyProfile& profile, std::size_t skip) {
  if (profile.size() != game.players()) throw std::invalid_argument("profile has the wrong number of players");
  for (std::size_t j = 0; j < game.players(); ++j) {
    if (j == skip) continue;
    if (profile[j].size() != signal_count(game, j)) {
      throw std::invalid_argument("strategy of player " + std::to_string(j) + " is not total on its signals");
    }
    for (std::size_t b : profile[j]) {
      if (b >= game.grids[j].size()) throw std::invalid_argument("bid index out of range");
    }
  }
}

// Decodes a mixed-radix index into a strategy with |S| digits base |B|.
Strategy DecodeStrategy(std::uint64_t index, std::size_t signals, std::size_t bids) {
  Strategy s(signals, 0);
  for (std::size_t k = signals; k-- > 0;) {
    s[k] = static_cast<std::size_t>(index % bids);
    index /= bids;
  }
  return s;
}

}  // namespace

const char* AuctionKindName(AuctionKind k) { return k == AuctionKind::kFpsb ? "FPSB" : "SPSB"; }

std::optional<AuctionKind> ParseAuctionKind(std::string_view name) {
  if (name == "FPSB" || name == "fpsb") return AuctionKind::kFpsb;
  if (name == "SPSB" || name == "spsb") return AuctionKind::kSpsb;
  return std::nullopt;
}

double BayesianGame::payoff(std::size_t player, const std::vector<double>& vals, const std::vector<double>& bids) const {
  if (general) return general(player, vals, bids);
  if (!decomposition) throw ParameterError("game has no payoff");
  std::vector<double> others;
  for (std::size_t j = 0; j < bids.size(); ++j) {
    if (j != player) others.push_back(bids[j]);
  }
  const double b = bids[player];
  return decomposition->f(vals[player], b) * decomposition->g(b, others) + decomposition->h(b, others);
}

void BayesianGame::check() const {
  world.require_valid();
  const std::size_t n = players();
  if (n == 0) throw ParameterError("game has no players");
  if (values.size() != n || grids.size() != n) throw ParameterError("signals, values and grids must have one entry per player");
  if (!general && !decomposition) throw ParameterError("game has no payoff");
  if (decomposition && (!decomposition->f || !decomposition->g || !decomposition->h)) {
    throw ParameterError("payoff decomposition is incomplete");
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < n; ++i) {
    if (!world.contains(signals[i])) throw ParameterError("missing signal variable '" + signals[i] + "'");
    if (!world.contains(values[i])) throw ParameterError("missing value variable '" + values[i] + "'");
    if (!seen.insert(signals[i]).second) throw ParameterError("players share signal '" + signals[i] + "'");
    if (grids[i].empty()) throw ParameterError("bid grid of player " + std::to_string(i) + " is empty");
    for (std::size_t k = 1; k < grids[i].size(); ++k) {
      if (!(grids[i][k - 1] < grids[i][k])) throw ParameterError("bid grid of player " + std::to_string(i) + " is not sorted");
    }
    for (const auto& label : world.variable(values[i]).states) ParseNumber(label, values[i]);
  }
  Distribution joint = marginal(world, signals);
  for (std::size_t k = 0; k < joint.size(); ++k) {
    if (!(joint.table[k] > 0.0)) throw ParameterError("joint signal distribution is not strictly positive");
  }
}

double win_share(double own_bid, const std::vector<double>& other_bids) {
  std::size_t tied = 1;
  for (double b : other_bids) {
    if (b > own_bid) return 0.0;
    if (b == own_bid) ++tied;
  }
  return 1.0 / static_cast<double>(tied);
}

PayoffDecomposition AuctionDecomposition(AuctionKind kind) {
  PayoffDecomposition d;
  d.f = [](double v, double) { return v; };
  d.g = [](double b, const std::vector<double>& others) { return win_share(b, others); };
  if (kind == AuctionKind::kFpsb) {
    d.h = [](double b, const std::vector<double>& others) { return -b * win_share(b, others); };
  } else {
    d.h = [](double b, const std::vector<double>& others) {
      double price = 0.0;
      for (double o : others) price = std::max(price, o);
      return -price * win_share(b, others);
    };
  }
  return d;
}

BayesianGame make_auction(AuctionKind kind, BayesNet world, std::vector<std::vector<double>> grids,
                          std::vector<std::string> signals, std::vector<std::string> values) {
  const std::size_t n = grids.size();
  if (signals.empty()) {
    for (std::size_t i = 0; i < n; ++i) signals.push_back("s" + std::to_string(i + 1));
  }
  if (values.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      std::string own = "v" + std::to_string(i + 1);
      if (world.contains(own)) {
        values.push_back(own);
      } else if (world.contains("v")) {
        values.push_back("v");
      } else {
        throw ParameterError("missing value variable for player " + std::to_string(i + 1));
      }
    }
  }
  BayesianGame g;
  g.world = std::move(world);
  g.signals = std::move(signals);
  g.values = std::move(values);
  g.grids = std::move(grids);
  g.decomposition = AuctionDecomposition(kind);
  g.label = AuctionKindName(kind);
  g.check();
  return g;
}

double decomposition_gap(const BayesianGame& game) {
  if (!game.general || !game.decomposition) throw ParameterError("both payoff forms are needed");
  game.check();
  const std::size_t n = game.players();
  std::vector<std::vector<double>> levels(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& label : game.world.variable(game.values[i]).states) levels[i].push_back(ParseNumber(label, game.values[i]));
  }
  BayesianGame decomposed = game;
  decomposed.general = nullptr;
  double gap = 0.0;
  std::vector<std::size_t> vi(n, 0), bi(n, 0);
  std::vector<double> vals(n), bids(n);
  // Odometer over value states then bids.
  while (true) {
    for (std::size_t i = 0; i < n; ++i) {
      vals[i] = levels[i][vi[i]];
      bids[i] = game.grids[i][bi[i]];
    }
    for (std::size_t i = 0; i < n; ++i) {
      gap = std::max(gap, std::fabs(game.payoff(i, vals, bids) - decomposed.payoff(i, vals, bids)));
    }
    std::size_t k = 0;
    for (; k < 2 * n; ++k) {
      auto& digit = k < n ? bi[k] : vi[k - n];
      const std::size_t limit = k < n ? game.grids[k].size() : levels[k - n].size();
      if (++digit < limit) break;
      digit = 0;
    }
    if (k == 2 * n) break;
  }
  return gap;
}

std::size_t signal_count(const BayesianGame& game, std::size_t player) {
  return game.world.variable(game.signals.at(player)).cardinality();
}

bool is_monotone(const Strategy& s) { return std::is_sorted(s.begin(), s.end()); }

std::vector<double> strategy_bids(const BayesianGame& game, std::size_t player, const Strategy& s) {
  std::vector<double> out;
  for (std::size_t b : s) out.push_back(game.grids.at(player).at(b));
  return out;
}

double expected_utility(const BayesianGame& game, const StrategyProfile& profile, std::size_t player) {
  Compiled c(game);
  CheckProfile(game, profile, game.players());
  return c.Expected(profile, player);
}

std::uint64_t BestResponseSet::size() const {
  std::uint64_t n = 1;
  for (const auto& a : argmax) n = SaturatingMul(n, a.size());
  return n;
}

bool BestResponseSet::contains(const Strategy& s) const {
  if (s.size() != argmax.size()) return false;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (!std::binary_search(argmax[k].begin(), argmax[k].end(), s[k])) return false;
  }
  return true;
}

Strategy BestResponseSet::lowest() const {
  Strategy s;
  for (const auto& a : argmax) s.push_back(a.front());
  return s;
}

Strategy BestResponseSet::highest() const {
  Strategy s;
  for (const auto& a : argmax) s.push_back(a.back());
  return s;
}

std::vector<Strategy> BestResponseSet::enumerate(std::uint64_t cap) const {
  if (size() > cap) throw CapExceededError("best-response set has more than " + std::to_string(cap) + " maps");
  std::vector<Strategy> out;
  std::vector<std::size_t> pos(argmax.size(), 0);
  while (true) {
    Strategy s;
    for (std::size_t k = 0; k < pos.size(); ++k) s.push_back(argmax[k][pos[k]]);
    out.push_back(std::move(s));
    std::size_t k = pos.size();
    while (k-- > 0) {
      if (++pos[k] < argmax[k].size()) break;
      pos[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

BestResponseSet best_responses(const BayesianGame& game, const StrategyProfile& profile, std::size_t player,
                               std::uint64_t cap) {
  Compiled c(game);
  CheckProfile(game, profile, player);
  if (SaturatingPow(game.grids[player].size(), signal_count(game, player)) > cap) {
    throw CapExceededError("strategy space of player " + std::to_string(player) + " exceeds cap of " + std::to_string(cap));
  }
  return c.Best(profile, player);
}

double max_deviation_gain(const BayesianGame& game, const StrategyProfile& profile) {
  Compiled c(game);
  CheckProfile(game, profile, game.players());
  double gain = 0.0;
  for (std::size_t i = 0; i < game.players(); ++i) gain = std::max(gain, c.Best(profile, i).value - c.Expected(profile, i));
  return gain;
}

std::vector<StrategyProfile> find_pure_equilibria(const BayesianGame& game, double epsilon, std::uint64_t cap) {
  Compiled c(game);
  const std::size_t n = game.players();
  std::vector<std::uint64_t> spaces(n);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    spaces[i] = SaturatingPow(game.grids[i].size(), signal_count(game, i));
    total = SaturatingMul(total, spaces[i]);
  }
  if (total > cap) {
    throw CapExceededError("pure profile count exceeds cap of " + std::to_string(cap) +
                           "; use iterated best response or the symmetric search instead");
  }
  std::vector<StrategyProfile> out;
  std::vector<std::uint64_t> idx(n, 0);
  StrategyProfile profile(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) profile[i] = DecodeStrategy(idx[i], signal_count(game, i), game.grids[i].size());
    bool eq = true;
    for (std::size_t i = 0; i < n && eq; ++i) eq = c.BestResponding(profile, i, epsilon);
    if (eq) out.push_back(profile);
    std::size_t k = n;
    while (k-- > 0) {
      if (++idx[k] < spaces[k]) break;
      idx[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

std::vector<Strategy> find_symmetric_equilibria(const BayesianGame& game, double epsilon, bool monotone_only,
                                                std::uint64_t cap) {
  Compiled c(game);
  const std::size_t n = game.players();
  const std::size_t signals = signal_count(game, 0);
  for (std::size_t i = 1; i < n; ++i) {
    if (game.grids[i] != game.grids[0] || signal_count(game, i) != signals) {
      throw ParameterError("symmetric search needs identical grids and signal spaces");
    }
  }
  const std::size_t bids = game.grids[0].size();
  std::vector<Strategy> candidates;
  if (monotone_only) {
    candidates = monotone_strategies(signals, bids);
    if (candidates.size() > cap) throw CapExceededError("monotone strategy count exceeds cap");
  } else {
    const std::uint64_t space = SaturatingPow(bids, signals);
    if (space > cap) throw CapExceededError("strategy count exceeds cap of " + std::to_string(cap));
    for (std::uint64_t k = 0; k < space; ++k) candidates.push_back(DecodeStrategy(k, signals, bids));
  }
  std::vector<Strategy> out;
  for (const auto& s : candidates) {
    StrategyProfile profile(n, s);
    bool eq = true;
    for (std::size_t i = 0; i < n && eq; ++i) eq = c.BestResponding(profile, i, epsilon);
    if (eq) out.push_back(s);
  }
  return out;
}

IteratedBestResponse iterated_best_response(const BayesianGame& game, StrategyProfile start, std::size_t max_rounds) {
  Compiled c(game);
  CheckProfile(game, start, game.players());
  IteratedBestResponse out;
  out.profile = std::move(start);
  for (out.rounds = 0; out.rounds < max_rounds; ++out.rounds) {
    bool moved = false;
    for (std::size_t i = 0; i < game.players(); ++i) {
      BestResponseSet br = c.Best(out.profile, i);
      if (!br.contains(out.profile[i])) {
        out.profile[i] = br.lowest();
        moved = true;
      }
    }
    if (!moved) {
      out.converged = true;
      break;
    }
  }
  return out;
}

BayesianGame marginalize_to_ipv(const BayesianGame& game) {
  game.check();
  const std::size_t n = game.players();
  std::set<std::string> distinct(game.values.begin(), game.values.end());
  const bool split = distinct.size() != n;
  BayesNet::Builder b;
  std::vector<std::string> values;
  for (std::size_t i = 0; i < n; ++i) {
    const Variable& sv = game.world.variable(game.signals[i]);
    Variable vv = game.world.variable(game.values[i]);
    if (split) vv.id = "v" + std::to_string(i + 1);
    Distribution pair = marginal(game.world, {game.values[i], game.signals[i]});
    const std::size_t nv = vv.cardinality(), ns = sv.cardinality();
    std::vector<double> prior(nv, 0.0);
    std::vector<std::vector<double>> rows(nv, std::vector<double>(ns, 0.0));
    for (std::size_t a = 0; a < nv; ++a) {
      for (std::size_t s = 0; s < ns; ++s) prior[a] += pair.table[a * ns + s];
      for (std::size_t s = 0; s < ns; ++s) {
        rows[a][s] = prior[a] > 0.0 ? pair.table[a * ns + s] / prior[a] : 1.0 / static_cast<double>(ns);
      }
    }
    values.push_back(vv.id);
    b.node(vv, {}, {prior});
    b.node(sv, {vv.id}, rows);
  }
  BayesianGame out = game;
  out.world = b.build();
  out.world.require_valid();
  out.values = std::move(values);
  out.label = game.label + " (IPV)";
  return out;
}

double factorization_gap(const BayesianGame& game, const StrategyProfile& profile, std::size_t player) {
  if (!game.decomposition) throw ParameterError("factorization needs a decomposed payoff");
  Compiled c(game);
  CheckProfile(game, profile, player);
  const PayoffDecomposition& d = *game.decomposition;
  double gap = 0.0;
  std::vector<double> others;
  for (std::size_t s = 0; s < c.states(player); ++s) {
    for (double b : game.grids[player]) {
      double mass = 0.0, joint = 0.0, ef = 0.0, eg = 0.0, eh = 0.0;
      for (std::size_t k : c.group(player, s)) {
        const auto& e = c.entries()[k];
        others.clear();
        for (std::size_t j = 0; j < game.players(); ++j) {
          if (j != player) others.push_back(game.grids[j][profile[j][e.signal[j]]]);
        }
        const double f = d.f(e.value[player], b), g = d.g(b, others), h = d.h(b, others);
        mass += e.p;
        joint += e.p * (f * g + h);
        ef += e.p * f;
        eg += e.p * g;
        eh += e.p * h;
      }
      if (mass <= 0.0) continue;
      gap = std::max(gap, std::fabs(joint / mass - ((ef / mass) * (eg / mass) + eh / mass)));
    }
  }
  return gap;
}

Theorem1Report check_theorem1(const BayesianGame& full, const BayesianGame& ipv, std::uint64_t cap, std::uint64_t seed) {
  if (!full.decomposition || !ipv.decomposition) {
    throw ParameterError("strategic equivalence needs value-action separable payoffs");
  }
  Compiled cf(full), ci(ipv);
  const std::size_t n = full.players();
  if (ipv.players() != n) throw ParameterError("games differ in player count");
  for (std::size_t i = 0; i < n; ++i) {
    if (full.grids[i] != ipv.grids[i] || signal_count(full, i) != signal_count(ipv, i)) {
      throw ParameterError("games differ in grids or signal spaces");
    }
  }
  Theorem1Report report;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint64_t> spaces(n, 1);
    std::uint64_t total = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      spaces[j] = SaturatingPow(full.grids[j].size(), signal_count(full, j));
      total = SaturatingMul(total, spaces[j]);
    }
    const bool exhaustive = total <= cap;
    report.exhaustive = report.exhaustive && exhaustive;
    const std::uint64_t count = exhaustive ? total : cap;
    std::vector<std::uint64_t> idx(n, 0);
    for (std::uint64_t t = 0; t < count; ++t) {
      StrategyProfile profile(n);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) {
          profile[j] = Strategy(signal_count(full, j), 0);
          continue;
        }
        const std::uint64_t k = exhaustive ? idx[j] : std::uniform_int_distribution<std::uint64_t>(0, spaces[j] - 1)(rng);
        profile[j] = DecodeStrategy(k, signal_count(full, j), full.grids[j].size());
      }
      if (exhaustive) {
        std::size_t k = n;
        while (k-- > 0) {
          if (k == i) continue;
          if (++idx[k] < spaces[k]) break;
          idx[k] = 0;
        }
      }
      ++report.profiles_checked;
      if (!(cf.Best(profile, i) == ci.Best(profile, i))) {
        report.equivalent = false;
        report.witness_player = i;
        report.witness_profile = profile;
        report.detail = "best responses of player " + std::to_string(i + 1) + " differ";
        return report;
      }
    }
  }
  return report;
}

WinnersCurse measure_winners_curse(const BayesianGame& game, std::size_t player, std::size_t signal_state,
                                   const StrategyProfile& opponents, double own_bid) {
  Compiled c(game);
  CheckProfile(game, opponents, player);
  for (std::size_t j = 0; j < game.players(); ++j) {
    if (j != player && !is_monotone(opponents[j])) {
      throw ParameterError("opponent strategy of player " + std::to_string(j + 1) + " is not monotone");
    }
  }
  if (signal_state >= c.states(player)) throw std::invalid_argument("signal state out of range");
  double mass = 0.0, ev = 0.0, win = 0.0, ev_win = 0.0;
  std::vector<double> others;
  for (std::size_t k : c.group(player, signal_state)) {
    const auto& e = c.entries()[k];
    others.clear();
    for (std::size_t j = 0; j < game.players(); ++j) {
      if (j != player) others.push_back(game.grids[j][opponents[j][e.signal[j]]]);
    }
    const double g = win_share(own_bid, others);
    mass += e.p;
    ev += e.p * e.value[player];
    win += e.p * g;
    ev_win += e.p * g * e.value[player];
  }
  WinnersCurse out;
  if (mass <= 0.0) return out;
  out.expected_value = ev / mass;
  out.win_probability = win / mass;
  out.defined = win > 0.0;
  if (out.defined) {
    out.expected_value_given_win = ev_win / win;
    out.curse = out.expected_value_given_win - out.expected_value;
  }
  return out;
}

std::vector<Strategy> monotone_strategies(std::size_t signals, std::size_t bids) {
  std::vector<Strategy> out;
  if (bids == 0) return out;
  Strategy s(signals, 0);
  while (true) {
    out.push_back(s);
    std::size_t k = signals;
    while (k-- > 0) {
      if (s[k] + 1 < bids) {
        ++s[k];
        for (std::size_t j = k + 1; j < signals; ++j) s[j] = s[k];
        break;
      }
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

BayesNet ipv_grid_world(const std::vector<double>& levels, std::size_t players) {
  if (levels.empty()) throw ParameterError("value grid is empty");
  std::vector<std::string> labels;
  for (double x : levels) labels.push_back(FormatNumber(x));
  const std::size_t n = levels.size();
  std::vector<std::vector<double>> identity(n, std::vector<double>(n, 0.0));
  for (std::size_t k = 0; k < n; ++k) identity[k][k] = 1.0;
  BayesNet::Builder b;
  for (std::size_t i = 1; i <= players; ++i) {
    const std::string v = "v" + std::to_string(i), s = "s" + std::to_string(i);
    b.node(Variable{v, labels, true}, {}, {std::vector<double>(n, 1.0 / static_cast<double>(n))});
    b.node(Variable{s, labels, true}, {v}, identity, true);
  }
  return b.build();
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
  if (points == 0) throw ParameterError("grid needs at least one point");
  if (points == 1) return {lo};
  std::vector<double> out;
  const double steps = static_cast<double>(points - 1);
  for (std::size_t k = 0; k < points; ++k) {
    const double t = static_cast<double>(k);
    out.push_back((lo * (steps - t) + hi * t) / steps);
  }
  return out;
}

}  // namespace sigstruct
