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

#include "sigstruct/canonical.hpp"

#include <array>
#include <functional>
#include <utility>

#include "sigstruct/error.hpp"

namespace sigstruct {
namespace {

constexpr std::array<std::pair<CanonicalId, std::string_view>, 13> kNames = {{
    {CanonicalId::kFig1a, "Fig1a"},
    {CanonicalId::kFig1b, "Fig1b"},
    {CanonicalId::kFig1c, "Fig1c"},
    {CanonicalId::kFig1d, "Fig1d"},
    {CanonicalId::kFig2a, "Fig2a"},
    {CanonicalId::kFig2b, "Fig2b"},
    {CanonicalId::kFig3a, "Fig3a"},
    {CanonicalId::kFig3b, "Fig3b"},
    {CanonicalId::kFig4a, "Fig4a"},
    {CanonicalId::kFig4b, "Fig4b"},
    {CanonicalId::kFig5chance, "Fig5chance"},
    {CanonicalId::kFig6chance, "Fig6chance"},
    {CanonicalId::kAppendixA, "AppendixA"},
}};

Variable Bit(std::string id) { return Variable{std::move(id), {"0", "1"}, true}; }

std::vector<double> Noisy(double p_one) { return {1.0 - p_one, p_one}; }

// Binary channel keeping its input with probability `keep`.
std::vector<std::vector<double>> Copy(double keep) { return {{keep, 1.0 - keep}, {1.0 - keep, keep}}; }

std::vector<double> OneHot(std::size_t n, std::size_t hot) {
  std::vector<double> row(n, 0.0);
  row[hot] = 1.0;
  return row;
}

// Deterministic rows over `parent_cards` (last parent fastest).
std::vector<std::vector<double>> Function(const std::vector<std::size_t>& parent_cards,
                                          std::size_t child_card,
                                          const std::function<std::size_t(const std::vector<std::size_t>&)>& f) {
  std::size_t rows = 1;
  for (std::size_t c : parent_cards) rows *= c;
  std::vector<std::vector<double>> out;
  std::vector<std::size_t> states(parent_cards.size(), 0);
  for (std::size_t r = 0; r < rows; ++r) {
    out.push_back(OneHot(child_card, f(states)));
    for (std::size_t k = parent_cards.size(); k-- > 0;) {
      if (++states[k] < parent_cards[k]) break;
      states[k] = 0;
    }
  }
  return out;
}

std::string Indexed(const char* stem, int i) { return stem + std::to_string(i); }

// Argmax prediction of v from one uniform bit x_i when v = outcome(x) over N
// uniform bits; ties go to the lower outcome.
std::size_t BitPrediction(int agents, int agent, std::size_t observed,
                          const std::function<std::size_t(const std::vector<std::size_t>&)>& outcome) {
  std::array<double, 2> mass{0.0, 0.0};
  std::vector<std::size_t> x(static_cast<std::size_t>(agents), 0);
  for (std::size_t code = 0; code < (std::size_t{1} << agents); ++code) {
    for (int k = 0; k < agents; ++k) x[static_cast<std::size_t>(k)] = (code >> (agents - 1 - k)) & 1U;
    if (x[static_cast<std::size_t>(agent)] != observed) continue;
    mass[outcome(x)] += 1.0;
  }
  return mass[1] > mass[0] ? 1 : 0;
}

void RequireAgents(const CanonicalModel& m, int lo, int hi) {
  int n = m.params.agents;
  if (n < lo || n > hi) {
    throw ParameterError(std::string(CanonicalIdName(m.id)) + " needs " +
                         (lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi)) +
                         " agents, got " + std::to_string(n));
  }
}

void RequireUnit(const char* name, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError(std::string(name) + " must lie in [0, 1]");
}

std::size_t Or(const std::vector<std::size_t>& x) {
  for (std::size_t b : x) {
    if (b != 0) return 1;
  }
  return 0;
}

// Fig3 outcome: 1 iff at least ceil(N/2) attributes are 1 (OR for two agents).
std::size_t Threshold(const std::vector<std::size_t>& x) {
  std::size_t ones = 0;
  for (std::size_t b : x) ones += b;
  return 2 * ones >= x.size() ? 1 : 0;
}

BayesNet GeneratedCopies(const CanonicalModel& m, bool shared_value) {
  BayesNet::Builder b;
  const int n = m.params.agents;
  if (shared_value) {
    b.node(Bit("v"), {}, {{0.5, 0.5}});
    for (int i = 1; i <= n; ++i) b.node(Bit(SignalId(i)), {"v"}, Copy(m.params.accuracy));
  } else {
    for (int i = 1; i <= n; ++i) {
      b.node(Bit(ValueId(i)), {}, {{0.5, 0.5}});
      b.node(Bit(SignalId(i)), {ValueId(i)}, Copy(m.params.accuracy));
    }
  }
  return b.build();
}

BayesNet AttributeState(const CanonicalModel& m, bool with_predictions) {
  const int n = m.params.agents;
  std::vector<std::string> labels;
  for (std::size_t code = 0; code < (std::size_t{1} << n); ++code) {
    std::string label;
    for (int k = 0; k < n; ++k) label.push_back(((code >> (n - 1 - k)) & 1U) ? '1' : '0');
    labels.push_back(label);
  }
  const std::size_t size = labels.size();
  auto bit = [n](std::size_t code, int k) -> std::size_t { return (code >> (n - 1 - k)) & 1U; };
  BayesNet::Builder b;
  b.node(Variable{"omega", labels, false}, {}, {std::vector<double>(size, 1.0 / static_cast<double>(size))});
  b.node(Bit("v"), {"omega"}, Function({size}, 2, [&](const std::vector<std::size_t>& s) {
           std::vector<std::size_t> x;
           for (int k = 0; k < n; ++k) x.push_back(bit(s[0], k));
           return Or(x);
         }), true);
  for (int i = 1; i <= n; ++i) {
    const std::string signal = with_predictions ? Indexed("pi", i) : SignalId(i);
    b.node(Bit(signal), {"omega"},
           Function({size}, 2, [&](const std::vector<std::size_t>& s) { return bit(s[0], i - 1); }), true);
    if (with_predictions) {
      b.node(Bit(Indexed("phi", i)), {signal}, Function({2}, 2, [&](const std::vector<std::size_t>& s) {
               return BitPrediction(n, i - 1, s[0], Or);
             }), true);
    }
  }
  return b.build();
}

BayesNet IndependentAttributes(const CanonicalModel& m, bool with_correctness) {
  const int n = m.params.agents;
  BayesNet::Builder b;
  std::vector<std::string> xs;
  for (int i = 1; i <= n; ++i) {
    xs.push_back(Indexed("x", i));
    b.node(Bit(xs.back()), {}, {{0.5, 0.5}});
  }
  b.node(Bit("v"), xs, Function(std::vector<std::size_t>(xs.size(), 2), 2, Threshold), true);
  for (int i = 1; i <= n; ++i) {
    b.node(Bit(Indexed("pi", i)), {Indexed("x", i)}, Function({2}, 2, [](const auto& s) { return s[0]; }), true);
    b.node(Bit(Indexed("phi", i)), {Indexed("pi", i)}, Function({2}, 2, [&](const std::vector<std::size_t>& s) {
             return BitPrediction(n, i - 1, s[0], Threshold);
           }), true);
    if (with_correctness) {
      b.node(Bit(Indexed("delta", i)), {Indexed("phi", i), "v"},
             Function({2, 2}, 2, [](const std::vector<std::size_t>& s) -> std::size_t { return s[0] == s[1]; }),
             true);
    }
  }
  return b.build();
}

}  // namespace

const std::vector<CanonicalId>& AllCanonicalIds() {
  static const std::vector<CanonicalId> ids = [] {
    std::vector<CanonicalId> out;
    for (const auto& [id, name] : kNames) out.push_back(id);
    return out;
  }();
  return ids;
}

std::string_view CanonicalIdName(CanonicalId id) {
  for (const auto& [key, name] : kNames) {
    if (key == id) return name;
  }
  return "unknown";
}

std::optional<CanonicalId> ParseCanonicalId(std::string_view name) {
  for (const auto& [key, label] : kNames) {
    if (label == name) return key;
  }
  return std::nullopt;
}

std::string SignalId(int agent) { return Indexed("s", agent); }
std::string ValueId(int agent) { return Indexed("v", agent); }

BayesNet build_canonical(const CanonicalModel& m) {
  RequireUnit("accuracy", m.params.accuracy);
  RequireUnit("coupling", m.params.coupling);
  const int n = m.params.agents;
  switch (m.id) {
    case CanonicalId::kFig1a: {
      RequireAgents(m, 2, 6);
      BayesNet::Builder b;
      b.node(Bit("omega"), {}, {{0.5, 0.5}});
      for (int i = 1; i <= n; ++i) {
        b.node(Bit(ValueId(i)), {"omega"}, Copy(m.params.coupling));
        b.node(Bit(SignalId(i)), {ValueId(i)}, Copy(m.params.accuracy));
      }
      return b.build();
    }
    case CanonicalId::kFig1b:
      RequireAgents(m, 2, 6);
      return GeneratedCopies(m, false);
    case CanonicalId::kFig1c:
    case CanonicalId::kFig4a:
      RequireAgents(m, 2, 6);
      return GeneratedCopies(m, true);
    case CanonicalId::kFig1d: {
      RequireAgents(m, 2, 6);
      BayesNet::Builder b;
      b.node(Bit("omega0"), {}, {{0.5, 0.5}});
      for (int i = 1; i <= n; ++i) {
        b.node(Bit(SignalId(i)), {}, {{0.5, 0.5}});
        b.node(Bit(ValueId(i)), {SignalId(i), "omega0"},
               {Noisy(0.1), Noisy(0.5), Noisy(0.5), Noisy(0.9)});
      }
      return b.build();
    }
    case CanonicalId::kFig2a:
      RequireAgents(m, 2, 4);
      return AttributeState(m, false);
    case CanonicalId::kFig2b:
      RequireAgents(m, 2, 4);
      return AttributeState(m, true);
    case CanonicalId::kFig3a:
      RequireAgents(m, 2, 6);
      return IndependentAttributes(m, false);
    case CanonicalId::kFig3b:
      RequireAgents(m, 2, 6);
      return IndependentAttributes(m, true);
    case CanonicalId::kFig4b:
      RequireAgents(m, 2, 2);
      return BayesNet::Builder()
          .node(Bit("s1"), {}, {{0.5, 0.5}})
          .node(Bit("s2"), {}, {{0.5, 0.5}})
          .node(Bit("v"), {"s1", "s2"}, {Noisy(0.1), Noisy(0.6), Noisy(0.6), Noisy(0.9)})
          .build();
    case CanonicalId::kFig5chance: {
      RequireAgents(m, 2, 6);
      const Variable level{"", {"0", "1", "2"}, true};
      const double third = 1.0 / 3.0;
      BayesNet::Builder b;
      b.node(Variable{"omega", level.states, true}, {}, {{third, third, third}});
      for (int i = 1; i <= n; ++i) {
        b.node(Variable{ValueId(i), {"0", "0.5", "1"}, true}, {"omega"},
               {{0.8, 0.15, 0.05}, {third, third, third}, {0.05, 0.15, 0.8}});
        b.node(Variable{SignalId(i), level.states, true}, {ValueId(i)},
               {{0.55, 0.3, 0.15}, {third, third, third}, {0.15, 0.3, 0.55}});
      }
      return b.build();
    }
    case CanonicalId::kFig6chance: {
      RequireAgents(m, 2, 2);
      auto copy = Function({2}, 2, [](const auto& s) { return s[0]; });
      return BayesNet::Builder()
          .node(Bit("x1"), {}, {{0.5, 0.5}})
          .node(Bit("x2"), {}, {{0.5, 0.5}})
          .node(Bit("s1"), {"x1"}, copy, true)
          .node(Bit("s2"), {"x2"}, copy, true)
          .node(Bit("v"), {"x1", "x2"}, Function({2, 2}, 2, Or), true)
          .build();
    }
    case CanonicalId::kAppendixA:
      RequireAgents(m, 2, 2);
      return BayesNet::Builder()
          .node(Bit("s1"), {}, {{0.5, 0.5}})
          .node(Bit("s2"), {}, {{0.5, 0.5}})
          .node(Bit("v"), {"s1", "s2"}, Function({2, 2}, 2, Or), true)
          .build();
  }
  throw ParameterError("unknown canonical model");
}

}  // namespace sigstruct
