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

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <tuple>

#include "oracles.hpp"
#include "sigstruct/canonical.hpp"
#include "sigstruct/error.hpp"
#include "sigstruct/fingerprints.hpp"
#include "sigstruct/interpreted.hpp"
#include "sigstruct/structure_checks.hpp"

namespace sigstruct {
namespace {

std::vector<std::string> Ids(const BayesNet& net) {
  std::vector<std::string> out;
  for (const auto& v : net.variables()) out.push_back(v.id);
  return out;
}

// Every X={a}, Y={b}, |Z| <= 1 over distinct variables.
std::vector<DsepStatement> SmallStatements(const BayesNet& net) {
  std::vector<DsepStatement> out;
  auto ids = Ids(net);
  for (std::size_t a = 0; a < ids.size(); ++a) {
    for (std::size_t b = a + 1; b < ids.size(); ++b) {
      out.push_back({{ids[a]}, {ids[b]}, {}, true});
      for (std::size_t c = 0; c < ids.size(); ++c) {
        if (c != a && c != b) out.push_back({{ids[a]}, {ids[b]}, {ids[c]}, true});
      }
    }
  }
  return out;
}

TEST_CASE("every canonical model builds a valid net") {
  for (CanonicalId id : AllCanonicalIds()) {
    CAPTURE(CanonicalIdName(id));
    BayesNet net = build_canonical(id);
    CHECK(net.valid());
    CHECK(ParseCanonicalId(CanonicalIdName(id)) == id);
  }
}

TEST_CASE("AppendixA joint has four configurations of mass one quarter") {
  BayesNet net = build_canonical(CanonicalId::kAppendixA);
  for (const char* s1 : {"0", "1"}) {
    for (const char* s2 : {"0", "1"}) {
      for (const char* v : {"0", "1"}) {
        bool positive = (std::string(v) == "1") == (std::string(s1) == "1" || std::string(s2) == "1");
        CHECK(joint_probability(net, {{"s1", s1}, {"s2", s2}, {"v", v}}) == (positive ? 0.25 : 0.0));
      }
    }
  }
}

TEST_CASE("Fig1b has no shared state and independent signals") {
  BayesNet net = build_canonical(CanonicalId::kFig1b);
  CHECK_FALSE(net.contains("omega"));
  CHECK(d_separated(net, {"s1"}, {"s2"}, {}));
}

TEST_CASE("Fig1c has a single common value") {
  BayesNet net = build_canonical(CanonicalId::kFig1c);
  CHECK(net.contains("v"));
  CHECK_FALSE(net.contains("v1"));
  CHECK(net.children(net.index_of("v")).size() == 2);
}

TEST_CASE("canonical parameters are checked") {
  CHECK_THROWS_AS(build_canonical(CanonicalModel{CanonicalId::kFig1a, {1, 0.75, 0.8}}), ParameterError);
  CHECK_THROWS_AS(build_canonical(CanonicalModel{CanonicalId::kAppendixA, {3, 0.75, 0.8}}), ParameterError);
  CHECK_THROWS_AS(build_canonical(CanonicalModel{CanonicalId::kFig1a, {2, 1.5, 0.8}}), ParameterError);
  BayesNet three = build_canonical(CanonicalModel{CanonicalId::kFig1a, {3, 0.75, 0.8}});
  CHECK(three.contains("s3"));
  CHECK(markov_blanket(three, "omega") == VariableSet{"v1", "v2", "v3"});
}

TEST_CASE("golden fingerprints hold for every canonical structure") {
  for (CanonicalId id : AllCanonicalIds()) {
    CAPTURE(CanonicalIdName(id));
    FingerprintCheck check = check_fingerprint(id);
    CHECK(check.edges_match);
    for (std::size_t k = 0; k < check.dsep_matches.size(); ++k) {
      CAPTURE(FormatStatement(GoldenFingerprint(id).statements[k]));
      CHECK(check.dsep_matches[k]);
      CHECK(check.numeric_matches[k]);
    }
  }
}

TEST_CASE("d-separation matches the moral-graph criterion on every small statement") {
  for (CanonicalId id : AllCanonicalIds()) {
    BayesNet net = build_canonical(id);
    for (const auto& s : SmallStatements(net)) {
      CAPTURE(CanonicalIdName(id));
      CAPTURE(FormatStatement(s));
      bool separated = d_separated(net, s.x, s.y, s.z);
      CHECK(separated == testing::MoralSeparated(net, s.x, s.y, s.z));
      if (separated) CHECK(check_independence(net, s.x, s.y, s.z).independent);
    }
  }
}

TEST_CASE("Fig1d markov blanket of a signal") {
  BayesNet net = build_canonical(CanonicalId::kFig1d);
  CHECK(markov_blanket(net, "s1") == VariableSet{"omega0", "v1"});
}

TEST_CASE("check_independence examples") {
  BayesNet fig1a = build_canonical(CanonicalId::kFig1a);
  IndependenceResult r = check_independence(fig1a, {"s1"}, {"s2"}, {"omega"});
  CHECK(r.independent);
  CHECK(r.max_deviation <= 1e-9);
  BayesNet a = build_canonical(CanonicalId::kAppendixA);
  CHECK(check_independence(a, {"s1"}, {"s2"}).independent);
  IndependenceResult given_v = check_independence(a, {"s1"}, {"s2"}, {"v"});
  CHECK_FALSE(given_v.independent);
  // Pr(1,1|v=1) = 1/3 against (2/3)(2/3).
  CHECK(given_v.max_deviation == doctest::Approx(4.0 / 9 - 1.0 / 3).epsilon(1e-12));
}

TEST_CASE("affiliation on the AppendixA joint") {
  BayesNet a = build_canonical(CanonicalId::kAppendixA);
  AffiliationReport r = check_affiliation(a, {"s1", "s2", "v"});
  CHECK(r.verdict == AffiliationVerdict::kViolated);
  REQUIRE(r.witness);
  CHECK(r.witness->x == std::vector<std::size_t>{1, 0, 1});
  CHECK(r.witness->y == std::vector<std::size_t>{0, 1, 1});
  CHECK(r.witness->lhs == 0.0);
  CHECK(r.witness->rhs == 1.0 / 16);
  CHECK(check_affiliation_pair(a, "s1", "s2").verdict == AffiliationVerdict::kAffiliated);
  CHECK(check_affiliation_pair(a, "s1", "s2", {{"v", "1"}}).verdict == AffiliationVerdict::kViolated);
}

TEST_CASE("affiliation of generated copies and degenerate cases") {
  BayesNet fig4a = build_canonical(CanonicalId::kFig4a);
  AffiliationReport r = check_affiliation_pair(fig4a, "s1", "s2");
  CHECK(r.verdict == AffiliationVerdict::kAffiliated);
  // Oracle: Pr(1,1) Pr(0,0) = (0.3125)^2 >= Pr(1,0) Pr(0,1) = (0.1875)^2.
  REQUIRE(r.witness);
  CHECK(r.witness->lhs == doctest::Approx(0.3125 * 0.3125).epsilon(1e-12));
  CHECK(r.witness->rhs == doctest::Approx(0.1875 * 0.1875).epsilon(1e-12));
  BayesNet a = build_canonical(CanonicalId::kAppendixA);
  // v = 0 pins both signals: a point mass is affiliated.
  CHECK(check_affiliation_pair(a, "s1", "s2", {{"v", "0"}}).verdict == AffiliationVerdict::kAffiliated);
  BayesNet fig6 = build_canonical(CanonicalId::kFig6chance);
  CHECK(check_affiliation_pair(fig6, "s1", "s2", {{"x1", "1"}, {"v", "0"}}).verdict ==
        AffiliationVerdict::kDegenerate);
  BayesNet unordered = BayesNet::Builder()
                           .node(Variable{"a", {"x", "y"}, false}, {}, {{0.5, 0.5}})
                           .node(Variable{"b", {"0", "1"}, true}, {}, {{0.5, 0.5}})
                           .build();
  CHECK_THROWS_AS(check_affiliation_pair(unordered, "a", "b"), ParameterError);
}

TEST_CASE("independent pairs are always affiliated") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    BayesNet net = testing::RandomNet(rng, 5, 0.4);
    for (const auto& s : SmallStatements(net)) {
      if (!s.z.empty() || !d_separated(net, s.x, s.y, {})) continue;
      CHECK(check_affiliation_pair(net, *s.x.begin(), *s.y.begin()).verdict == AffiliationVerdict::kAffiliated);
    }
  }
}

TEST_CASE("classify separates generated from interpreted patterns") {
  CHECK(classify(build_canonical(CanonicalId::kFig1c), {"s1", "s2"}, "v").pattern == SignalPattern::kGenerated);
  CHECK(classify(build_canonical(CanonicalId::kFig4a), {"s1", "s2"}, "v").pattern == SignalPattern::kGenerated);
  CHECK(classify(build_canonical(CanonicalId::kFig2a), {"s1", "s2"}, "v").pattern == SignalPattern::kInterpreted);
  CHECK(classify(build_canonical(CanonicalId::kAppendixA), {"s1", "s2"}, "v").pattern ==
        SignalPattern::kInterpreted);
}

TEST_CASE("predictions on the AppendixA interpreted model") {
  InterpretedModel m = AppendixAInterpreted();
  CHECK(predict(m, 0, std::vector<std::size_t>{1}) == 1);
  CHECK(predict(m, 0, std::vector<std::size_t>{0}) == 0);
  InterpretedModel high = m;
  high.tie_break = TieBreak::kHighestOutcome;
  CHECK(predict(high, 0, std::vector<std::size_t>{0}) == 1);
  Correctness c = correctness(m, 0);
  CHECK(c.accuracy == 0.75);
  // delta fails only at (x1=0, x2=1), state code 1.
  CHECK(c.delta == std::vector<int>{1, 0, 1, 1});
}

TEST_CASE("full observation predicts the outcome exactly") {
  std::vector<Variable> attrs{{"x1", {"0", "1", "2"}, true}, {"x2", {"0", "1"}, true}};
  InterpretedModel m = MakeInterpreted(
      AttributeSpace::Product(attrs, {{0.2, 0.3, 0.5}, {0.6, 0.4}}), Variable{"v", {"0", "1", "2"}, true},
      [](const std::vector<std::size_t>& x) { return (x[0] + x[1]) % 3; }, {{"a", {0, 1}}, {"b", {0, 1}}});
  for (std::size_t w = 0; w < m.space.size(); ++w) {
    CHECK(predict(m, 0, m.interpretation(0, w)) == m.outcome_of[w]);
  }
  CHECK(correctness(m, 0).accuracy == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_FALSE(correctness_correlation(m, 0, 1).coefficient.has_value());
}

TEST_CASE("constant outcome is always predicted correctly") {
  InterpretedModel m = MakeInterpreted(AttributeSpace::Uniform({{"x1", {"0", "1"}, true}}),
                                       Variable{"v", {"0", "1"}, true},
                                       [](const std::vector<std::size_t>&) { return std::size_t{1}; }, {{"a", {0}}});
  CHECK(correctness(m, 0).accuracy == 1.0);
}

TEST_CASE("predictions are constant on interpretation cells") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<int> table(8);
    for (int& t : table) t = coin(rng);
    InterpretedModel m = MakeInterpreted(
        AttributeSpace::Product({{"x1", {"0", "1"}, true}, {"x2", {"0", "1"}, true}, {"x3", {"0", "1"}, true}},
                                {{0.3, 0.7}, {0.5, 0.5}, {0.9, 0.1}}),
        Variable{"v", {"0", "1"}, true},
        [&](const std::vector<std::size_t>& x) { return static_cast<std::size_t>(table[x[0] * 4 + x[1] * 2 + x[2]]); },
        {{"a", {0, 2}}, {"b", {1}}});
    for (std::size_t agent = 0; agent < 2; ++agent) {
      Correctness c = correctness(m, agent);
      for (std::size_t w = 0; w < m.space.size(); ++w) {
        for (std::size_t u = 0; u < m.space.size(); ++u) {
          if (m.interpretation(agent, w) == m.interpretation(agent, u)) CHECK(c.prediction[w] == c.prediction[u]);
        }
      }
    }
  }
}

TEST_CASE("identical observers have perfectly correlated correctness") {
  InterpretedModel m = AppendixAInterpreted();
  m.agents[1].observed = m.agents[0].observed;
  REQUIRE(correctness_correlation(m, 0, 1).coefficient);
  CHECK(*correctness_correlation(m, 0, 1).coefficient == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("independent informative balanced predictions have negatively correlated correctness") {
  // x1..x3 uniform, v = majority; each agent sees one attribute.
  InterpretedModel m = MakeInterpreted(
      AttributeSpace::Uniform({{"x1", {"0", "1"}, true}, {"x2", {"0", "1"}, true}, {"x3", {"0", "1"}, true}}),
      Variable{"v", {"0", "1"}, true},
      [](const std::vector<std::size_t>& x) -> std::size_t { return x[0] + x[1] + x[2] >= 2; }, {{"a", {0}}, {"b", {1}}});
  // Oracle by hand: delta_i = [x_i = maj]; Pr = 3/4 each; Pr(both) = 1/2.
  CorrelationResult r = correctness_correlation(m, 0, 1);
  CHECK(r.covariance == doctest::Approx(0.5 - 0.5625).epsilon(1e-12));
  REQUIRE(r.coefficient);
  CHECK(*r.coefficient == doctest::Approx(-1.0 / 3).epsilon(1e-12));
}

TEST_CASE("to_bayes_net reproduces predictions and correctness") {
  InterpretedModel m = AppendixAInterpreted();
  BayesNet net = to_bayes_net(m, true);
  REQUIRE(net.valid());
  CHECK(query(net, {"phi1"}, {{"pi1", "0"}}).probability({{"phi1", "0"}}) == 1.0);
  CHECK(query(net, {"delta1"}).probability({{"delta1", "1"}}) == 0.75);
  CHECK_FALSE(d_separated(net, {"delta1"}, {"delta2"}, {}));
}

TEST_CASE("CI search excludes AND with one attribute each") {
  CiSearchResult r = search_ci_outcome_functions(2);
  // AND: f(11)=1 only, code 3 -> truth table 0b1000.
  for (const auto& c : r.configurations) CHECK_FALSE((c.truth_table == 8 && c.masks == std::vector<unsigned>{2, 1}));
  CiConfiguration and_config{2, 8, {2, 1}};
  BayesNet net = to_bayes_net(and_config.model());
  // Pr(s1=0, s2=0 | v=0) = 1/3 against (2/3)(2/3).
  CHECK_FALSE(check_independence(net, {"pi1"}, {"pi2"}, {"v"}).independent);
  CHECK(r.configurations.empty());
}

TEST_CASE("CI search agrees with a net-based oracle") {
  for (unsigned k : {2u, 3u}) {
    CiSearchResult r = search_ci_outcome_functions(k);
    std::set<std::tuple<unsigned long, unsigned, unsigned>> found;
    for (const auto& c : r.configurations) found.insert({c.truth_table, c.masks[0], c.masks[1]});
    for (unsigned long f = 1; f + 1 < (1UL << (1U << k)); ++f) {
      for (unsigned m1 = 0; m1 < (1U << k); ++m1) {
        for (unsigned m2 = 0; m2 < (1U << k); ++m2) {
          CiConfiguration c{k, f, {m1, m2}};
          InterpretedModel m = c.model();
          bool expected = informative(m, 0) && informative(m, 1) && nondegenerate(m, 0) && nondegenerate(m, 1) &&
                          check_independence(to_bayes_net(m), {"pi1"}, {"pi2"}, {"v"}).independent;
          CHECK(expected == (found.count({f, m1, m2}) == 1));
        }
      }
    }
  }
}

TEST_CASE("CI configurations for three attributes miss distinct single attributes") {
  CiSearchResult r = search_ci_outcome_functions(3);
  CHECK_FALSE(r.configurations.empty());
  for (const auto& c : r.configurations) {
    CHECK(__builtin_popcount(c.masks[0]) == 2);
    CHECK(__builtin_popcount(c.masks[1]) == 2);
    CHECK(c.masks[0] != c.masks[1]);
  }
  CHECK_THROWS_AS(search_ci_outcome_functions(5), ParameterError);
}

TEST_CASE("interpretation independence needs a product state space") {
  CHECK_FALSE(find_independent_partitions(2, 3).has_value());
  auto four = find_independent_partitions(2, 4);
  REQUIRE(four);
  CHECK(four->partitions[0] == std::vector<std::size_t>{0, 0, 1, 1});
  CHECK(four->partitions[1] == std::vector<std::size_t>{0, 1, 0, 1});

  InterpretationSearch one = search_independent_interpretations(1, 8);
  CHECK(one.minimal_states == 2u);
  InterpretationSearch two = search_independent_interpretations(2, 8);
  CHECK(two.minimal_states == 4u);
  CHECK(two.exhausted == std::vector<std::size_t>{1, 2, 3});
  InterpretationSearch three = search_independent_interpretations(3, 8);
  CHECK(three.minimal_states == 8u);
  CHECK_THROWS_AS(search_independent_interpretations(4, 8), ParameterError);
  CHECK_THROWS_AS(search_independent_interpretations(2, 65), ParameterError);
}

TEST_CASE("independent interpretations give independent predictions") {
  for (unsigned n : {2u, 3u}) {
    auto search = search_independent_interpretations(n, 8);
    REQUIRE(search.witness);
    const PartitionWitness& w = *search.witness;
    CHECK(mutually_independent(w));
    // Any outcome function: predictions are functions of the partitions.
    for (unsigned long f = 0; f < (1UL << w.states); ++f) {
      std::vector<Variable> attrs{{"omega", {}, false}};
      for (std::size_t s = 0; s < w.states; ++s) attrs[0].states.push_back(std::to_string(s));
      PartitionWitness predictions{w.states, {}};
      for (const auto& part : w.partitions) {
        std::size_t blocks = *std::max_element(part.begin(), part.end()) + 1;
        std::vector<std::array<int, 2>> votes(blocks, {0, 0});
        for (std::size_t s = 0; s < w.states; ++s) ++votes[part[s]][(f >> s) & 1UL];
        std::vector<std::size_t> phi(w.states);
        for (std::size_t s = 0; s < w.states; ++s) phi[s] = votes[part[s]][1] > votes[part[s]][0] ? 1 : 0;
        // Relabel to contiguous block ids.
        std::vector<std::size_t> labels = phi;
        if (std::count(phi.begin(), phi.end(), 1) == 0) std::fill(labels.begin(), labels.end(), 0);
        else if (phi[0] == 1) for (auto& l : labels) l = 1 - l;
        predictions.partitions.push_back(labels);
      }
      CHECK(mutually_independent(predictions));
    }
  }
}

}  // namespace
}  // namespace sigstruct

namespace sigstruct {
namespace {

// Premises and covariance recomputed by inference on the deterministic net.
TEST_CASE("correctness correlation sweep") {
  std::size_t qualifying = 0;
  for (unsigned k = 1; k <= 2; ++k) {
    for (unsigned long f = 0; f < (1UL << (1U << k)); ++f) {
      for (unsigned m1 = 0; m1 < (1U << k); ++m1) {
        for (unsigned m2 = 0; m2 < (1U << k); ++m2) {
          BayesNet net = to_bayes_net(CiConfiguration{k, f, {m1, m2}}.model(), true);
          const double a = query(net, {"phi1"}).probability({{"phi1", "1"}});
          const double b = query(net, {"phi2"}).probability({{"phi2", "1"}});
          const double d1 = query(net, {"delta1"}).probability({{"delta1", "1"}});
          const double d2 = query(net, {"delta2"}).probability({{"delta2", "1"}});
          if (std::fabs(a - 0.5) > 1e-12 || std::fabs(b - 0.5) > 1e-12 || d1 <= 0.5 + 1e-12 || d2 <= 0.5 + 1e-12) continue;
          if (!check_independence(net, {"phi1"}, {"phi2"}).independent) continue;
          ++qualifying;
          const double both = query(net, {"delta1", "delta2"}).probability({{"delta1", "1"}, {"delta2", "1"}});
          CHECK(both - d1 * d2 <= 1e-12);
        }
      }
    }
  }
  CorrelationSweep two = sweep_correctness_correlation(2);
  CHECK(two.qualifying == qualifying);
  CHECK(two.models_checked == 4 * 4 + 16 * 16);

  CorrelationSweep three = sweep_correctness_correlation(3);
  CHECK(three.qualifying > two.qualifying);
  CHECK(three.max_covariance <= 1e-12);
  REQUIRE(three.worst);
  BayesNet worst = to_bayes_net(three.worst->model(), true);
  const double cov = query(worst, {"delta1", "delta2"}).probability({{"delta1", "1"}, {"delta2", "1"}}) -
                     query(worst, {"delta1"}).probability({{"delta1", "1"}}) *
                         query(worst, {"delta2"}).probability({{"delta2", "1"}});
  CHECK(cov == doctest::Approx(three.max_covariance).epsilon(1e-12));
}

}  // namespace
}  // namespace sigstruct
