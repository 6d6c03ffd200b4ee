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

#include "sigstruct/market.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "sigstruct/error.hpp"

namespace sigstruct {

double information_value(const BayesNet& net, const std::string& outcome, const std::vector<std::string>& info) {
  Distribution prior = marginal(net, {outcome});
  if (info.empty()) return 0.0;
  Distribution evidence = marginal(net, info);
  double total = 0.0;
  for (std::size_t flat = 0; flat < evidence.size(); ++flat) {
    const double p = evidence.table[flat];
    if (p <= 0.0) continue;
    Assignment a;
    std::vector<std::size_t> st = evidence.decode(flat);
    for (std::size_t k = 0; k < info.size(); ++k) a[info[k]] = evidence.labels[k][st[k]];
    Distribution post = query(net, {outcome}, a);
    double gain = 0.0;
    for (std::size_t v = 0; v < post.size(); ++v) {
      if (post.table[v] > 0.0) gain += post.table[v] * (std::log(post.table[v]) - std::log(prior.table[v]));
    }
    total += p * gain;
  }
  return total;
}

const char* InteractionName(Interaction i) {
  switch (i) {
    case Interaction::kComplements: return "complements";
    case Interaction::kSubstitutes: return "substitutes";
    case Interaction::kAdditive: return "additive";
  }
  return "additive";
}

InteractionReport signal_interaction(const BayesNet& net, const std::string& outcome, const std::string& s1,
                                     const std::string& s2) {
  InteractionReport r;
  r.v1 = information_value(net, outcome, {s1});
  r.v2 = information_value(net, outcome, {s2});
  r.v12 = information_value(net, outcome, {s1, s2});
  if (r.v12 > r.v1 + r.v2 + kInteractionTolerance) {
    r.verdict = Interaction::kComplements;
  } else if (r.v12 < r.v1 + r.v2 - kInteractionTolerance) {
    r.verdict = Interaction::kSubstitutes;
  }
  return r;
}

namespace {

constexpr double kMenuTolerance = 1e-12;

// P[a][b][v] over (signal 0, signal 1, outcome).
struct Joint {
  std::size_t n0 = 0, n1 = 0, nv = 0;
  std::vector<double> p;
  double at(std::size_t a, std::size_t b, std::size_t v) const { return p[(a * n1 + b) * nv + v]; }
};

Joint MakeJoint(const MsrGame& g) {
  g.world.require_valid();
  for (const auto& id : {g.signals[0], g.signals[1], g.outcome}) {
    if (!g.world.contains(id)) throw ParameterError("market world has no variable '" + id + "'");
  }
  if (g.signals[0] == g.signals[1] || g.signals[0] == g.outcome || g.signals[1] == g.outcome) {
    throw ParameterError("market signals and outcome must be distinct variables");
  }
  Distribution d = marginal(g.world, {g.signals[0], g.signals[1], g.outcome});
  Joint j;
  j.n0 = d.labels[0].size();
  j.n1 = d.labels[1].size();
  j.nv = d.labels[2].size();
  j.p = d.table;
  return j;
}

// Pr(v | s0 in a_mask, s1 in b_mask); empty when the event has no mass.
Belief Conditional(const Joint& j, const std::vector<bool>& a_in, const std::vector<bool>& b_in) {
  Belief out(j.nv, 0.0);
  double mass = 0.0;
  for (std::size_t a = 0; a < j.n0; ++a) {
    if (!a_in[a]) continue;
    for (std::size_t b = 0; b < j.n1; ++b) {
      if (!b_in[b]) continue;
      for (std::size_t v = 0; v < j.nv; ++v) {
        out[v] += j.at(a, b, v);
        mass += j.at(a, b, v);
      }
    }
  }
  if (mass <= 0.0) return {};
  for (double& x : out) x /= mass;
  return out;
}

std::vector<bool> Mask(std::size_t n, std::uint64_t bits) {
  std::vector<bool> m(n);
  for (std::size_t k = 0; k < n; ++k) m[k] = (bits >> k) & 1;
  return m;
}

void AddUnique(std::vector<Belief>& menu, const Belief& r) {
  for (const auto& m : menu) {
    double gap = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) gap = std::max(gap, std::fabs(m[k] - r[k]));
    if (gap <= kMenuTolerance) return;
  }
  menu.push_back(r);
}

std::size_t Find(const std::vector<Belief>& menu, const Belief& r) {
  for (std::size_t i = 0; i < menu.size(); ++i) {
    double gap = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) gap = std::max(gap, std::fabs(menu[i][k] - r[k]));
    if (gap <= kMenuTolerance) return i;
  }
  throw ParameterError("report is missing from the menu");
}

void CheckStages(const MsrGame& g) {
  if (g.stages.empty()) throw ParameterError("market game has no stages");
  for (std::size_t t = 0; t < g.stages.size(); ++t) {
    if (g.stages[t] > 1) throw ParameterError("stage " + std::to_string(t + 1) + " names an unknown agent");
    if (t == 0) continue;
    for (std::size_t u = t + 1; u < g.stages.size(); ++u) {
      if (g.stages[u] == g.stages[t]) {
        throw ParameterError("unsupported stage order: only the first mover may move twice, and its second move must be last for it");
      }
    }
  }
}

}  // namespace

std::vector<Belief> msr_menu(const MsrGame& game) {
  const Joint j = MakeJoint(game);
  std::vector<Belief> menu;
  AddUnique(menu, Conditional(j, std::vector<bool>(j.n0, true), std::vector<bool>(j.n1, true)));
  if (j.n0 > 20 || j.n1 > 20) throw CapExceededError("too many signal states for the posterior menu");
  for (std::uint64_t a = 1; a < (std::uint64_t{1} << j.n0); ++a) {
    for (std::uint64_t b = 1; b < (std::uint64_t{1} << j.n1); ++b) {
      Belief r = Conditional(j, Mask(j.n0, a), Mask(j.n1, b));
      if (!r.empty()) AddUnique(menu, r);
    }
  }
  // Interior grid: coordinates k / (points - 1), all positive.
  if (game.grid_points >= 2) {
    const std::size_t steps = game.grid_points - 1;
    std::vector<std::size_t> parts(j.nv, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t k, std::size_t left) {
      if (k + 1 == j.nv) {
        if (left == 0) return;
        parts[k] = left;
        Belief r;
        for (std::size_t x : parts) r.push_back(static_cast<double>(x) / static_cast<double>(steps));
        AddUnique(menu, r);
        return;
      }
      for (std::size_t x = 1; x + (j.nv - k - 1) <= left; ++x) {
        parts[k] = x;
        rec(k + 1, left - x);
      }
    };
    if (steps >= j.nv) rec(0, steps);
  }
  return menu;
}

MsrSolution solve_msr(const MsrGame& game) {
  CheckStages(game);
  if (!(game.probability_floor > 0.0)) throw ParameterError("probability floor must be positive");
  const Joint j = MakeJoint(game);
  MsrSolution out;
  out.menu = msr_menu(game);
  const auto& menu = out.menu;
  const std::size_t first = game.stages[0];
  const std::size_t n_first = first == 0 ? j.n0 : j.n1;
  const std::size_t n_other = first == 0 ? j.n1 : j.n0;
  const double log_floor = std::log(game.probability_floor);
  auto score = [&](std::size_t r, std::size_t v) {
    const double x = menu[r][v];
    return x < game.probability_floor ? log_floor : std::log(x);
  };
  auto signal_of = [&](std::size_t agent, std::size_t a, std::size_t b) { return agent == 0 ? a : b; };

  std::vector<std::size_t> sigma(n_first, 0);
  // Report of the stage-t mover holding `signal`, given the public history.
  std::function<std::size_t(std::size_t, std::size_t, const std::vector<std::size_t>&)> move =
      [&](std::size_t t, std::size_t signal, const std::vector<std::size_t>& history) -> std::size_t {
    if (t == 0) return sigma[signal];
    const std::size_t m = game.stages[t];
    const std::size_t other = 1 - m;
    const std::size_t n_o = other == 0 ? j.n0 : j.n1;
    std::vector<bool> own(m == 0 ? j.n0 : j.n1, false), theirs(n_o, false);
    own[signal] = true;
    for (std::size_t s = 0; s < n_o; ++s) {
      bool consistent = true;
      for (std::size_t u = 0; u < t && consistent; ++u) {
        if (game.stages[u] != other) continue;
        std::vector<std::size_t> prefix(history.begin(), history.begin() + static_cast<std::ptrdiff_t>(u));
        consistent = move(u, s, prefix) == history[u];
      }
      theirs[s] = consistent;
    }
    Belief belief = m == 0 ? Conditional(j, own, theirs) : Conditional(j, theirs, own);
    std::size_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < menu.size(); ++r) {
      double s = 0.0;
      for (std::size_t v = 0; v < j.nv; ++v) {
        if (!belief.empty() && belief[v] > 0.0) s += belief[v] * score(r, v);
      }
      if (s > best_score) {
        best_score = s;
        best = r;
      }
    }
    return best;
  };

  const std::size_t prior = 0;  // menu[0] is the prior
  bool clamp = false;
  auto value = [&]() {
    double total = 0.0;
    for (std::size_t a = 0; a < j.n0; ++a) {
      for (std::size_t b = 0; b < j.n1; ++b) {
        std::vector<std::size_t> history;
        for (std::size_t t = 0; t < game.stages.size(); ++t) {
          history.push_back(move(t, signal_of(game.stages[t], a, b), history));
        }
        for (std::size_t v = 0; v < j.nv; ++v) {
          const double p = j.at(a, b, v);
          if (p <= 0.0) continue;
          std::size_t current = prior;
          for (std::size_t t = 0; t < history.size(); ++t) {
            if (menu[history[t]][v] < game.probability_floor || menu[current][v] < game.probability_floor) clamp = true;
            if (game.stages[t] == first) total += p * (score(history[t], v) - score(current, v));
            current = history[t];
          }
        }
      }
    }
    return total;
  };

  // Truthful stage-1 report: the first mover's own posterior.
  for (std::size_t s = 0; s < n_first; ++s) {
    std::vector<bool> own(n_first, false);
    own[s] = true;
    std::vector<bool> all(n_other, true);
    Belief post = first == 0 ? Conditional(j, own, all) : Conditional(j, all, own);
    out.truthful_strategy.push_back(post.empty() ? prior : Find(menu, post));
  }
  sigma = out.truthful_strategy;
  out.truthful_value = value();
  out.clamp_used = clamp;

  std::uint64_t count = 1;
  for (std::size_t s = 0; s < n_first; ++s) {
    if (count > game.strategy_cap / menu.size()) throw CapExceededError("stage-1 strategy count exceeds cap");
    count *= menu.size();
  }
  out.best_value = -std::numeric_limits<double>::infinity();
  bool best_clamp = false;
  for (std::uint64_t k = 0; k < count; ++k) {
    std::uint64_t x = k;
    for (std::size_t s = n_first; s-- > 0;) {
      sigma[s] = static_cast<std::size_t>(x % menu.size());
      x /= menu.size();
    }
    clamp = false;
    const double v = value();
    ++out.strategies_checked;
    if (v > out.best_value) {
      out.best_value = v;
      out.best_strategy = sigma;
      best_clamp = clamp;
    }
  }
  out.clamp_used = out.clamp_used || best_clamp;
  out.bluff_gain = out.best_value - out.truthful_value;
  return out;
}

}  // namespace sigstruct
