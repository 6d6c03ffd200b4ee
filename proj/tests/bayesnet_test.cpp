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

#include "sigstruct/bayesnet.hpp"
#include "sigstruct/error.hpp"

namespace sigstruct {
namespace {

Variable Bit(const std::string& id) { return Variable{id, {"0", "1"}, true}; }

// s1, s2 uniform; v = s1 OR s2.
BayesNet OrNet() {
  return BayesNet::Builder()
      .node(Bit("s1"), {}, {{0.5, 0.5}})
      .node(Bit("s2"), {}, {{0.5, 0.5}})
      .node(Bit("v"), {"s1", "s2"}, {{1, 0}, {0, 1}, {0, 1}, {0, 1}}, true)
      .build();
}

TEST_CASE("validate accepts a single Bernoulli node") {
  BayesNet net = BayesNet::Builder().node(Bit("x"), {}, {{0.3, 0.7}}).build();
  CHECK(validate(net).ok());
}

TEST_CASE("validate reports a two-node cycle") {
  BayesNet net = BayesNet::Builder()
                     .node(Bit("a"), {"b"}, {{0.5, 0.5}, {0.5, 0.5}})
                     .node(Bit("b"), {"a"}, {{0.5, 0.5}, {0.5, 0.5}})
                     .build();
  CHECK(validate(net).has(Violation::Kind::kCycle));
  CHECK_THROWS_AS(query(net, {"a"}), InvalidNetError);
}

TEST_CASE("validate names the offending row") {
  BayesNet net = BayesNet::Builder()
                     .node(Bit("a"), {}, {{0.5, 0.5}})
                     .node(Bit("b"), {"a"}, {{0.5, 0.5}, {0.5, 0.6}})
                     .build();
  const auto& report = validate(net);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].kind == Violation::Kind::kRowSum);
  CHECK(report.violations[0].message.find("row 1") != std::string::npos);
}

TEST_CASE("validate collects every violation") {
  BayesNet net = BayesNet::Builder()
                     .variable(Bit("a"))
                     .node(Bit("b"), {"a"}, {{0.5, 0.5}})
                     .edge("a", "ghost")
                     .node(Variable{"c", {"x", "x"}}, {}, {{0.2, 0.8}}, true)
                     .node(Bit("d"), {}, {{-0.1, 1.1}})
                     .build();
  const auto& r = validate(net);
  CHECK(r.has(Violation::Kind::kMissingCpt));
  CHECK(r.has(Violation::Kind::kArityMismatch));
  CHECK(r.has(Violation::Kind::kUnknownVariable));
  CHECK(r.has(Violation::Kind::kDuplicateState));
  CHECK(r.has(Violation::Kind::kNotDeterministic));
  CHECK(r.has(Violation::Kind::kEntryRange));
}

TEST_CASE("validate rejects cpt parents that differ from the graph") {
  BayesNet net = BayesNet::Builder()
                     .node(Bit("a"), {}, {{0.5, 0.5}})
                     .variable(Bit("b"))
                     .edge("a", "b")
                     .cpt(Cpt{"b", {}, {{0.5, 0.5}}})
                     .build();
  CHECK(validate(net).has(Violation::Kind::kParentMismatch));
}

TEST_CASE("joint probability of the OR net") {
  BayesNet net = OrNet();
  CHECK(joint_probability(net, {{"s1", "0"}, {"s2", "0"}, {"v", "0"}}) == 0.25);
  CHECK(joint_probability(net, {{"s1", "0"}, {"s2", "0"}, {"v", "1"}}) == 0.0);
  CHECK(joint_probability(net, {{"s1", "1"}, {"s2", "1"}, {"v", "1"}}) == 0.25);
  CHECK_THROWS_AS(joint_probability(net, {{"s1", "0"}, {"v", "0"}}), IncompleteAssignmentError);
}

TEST_CASE("joint probability of a single Bernoulli node") {
  BayesNet net = BayesNet::Builder().node(Bit("x"), {}, {{0.7, 0.3}}).build();
  CHECK(joint_probability(net, {{"x", "1"}}) == 0.3);
}

TEST_CASE("query on the OR net") {
  BayesNet net = OrNet();
  CHECK(query(net, {"v"}, {{"s1", "1"}}).probability({{"v", "1"}}) == 1.0);
  CHECK(query(net, {"v"}).probability({{"v", "1"}}) == 0.75);
  Distribution d = query(net, {"s1", "s2"}, {{"v", "1"}});
  CHECK(d.probability({{"s1", "1"}, {"s2", "1"}}) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(evidence_probability(net, {{"v", "0"}}) == 0.25);
  CHECK_THROWS_AS(query(net, {"s1"}, {{"v", "0"}, {"s2", "1"}}), ZeroProbabilityError);
  CHECK_THROWS_AS(query(net, {"s1"}, {{"s1", "0"}}), std::invalid_argument);
}

TEST_CASE("query of a root without evidence is its prior row") {
  BayesNet net = BayesNet::Builder()
                     .node(Bit("r"), {}, {{0.2, 0.8}})
                     .node(Bit("c"), {"r"}, {{0.9, 0.1}, {0.4, 0.6}})
                     .build();
  Distribution d = query(net, {"r"});
  CHECK(d.table[0] == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(d.table[1] == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("query respects the enumeration cap") {
  BayesNet::Builder b;
  for (int i = 0; i < 4; ++i) b.node(Bit("x" + std::to_string(i)), {}, {{0.5, 0.5}});
  BayesNet net = b.build();
  CHECK_THROWS_AS(query(net, {"x0"}, {}, QueryOptions{8}), CapExceededError);
  CHECK_NOTHROW(query(net, {"x0"}, {{"x1", "0"}}, QueryOptions{8}));
}

TEST_CASE("d-separation on a chain, fork and collider") {
  BayesNet chain = BayesNet::Builder()
                       .node(Bit("a"), {}, {{0.5, 0.5}})
                       .node(Bit("b"), {"a"}, {{0.9, 0.1}, {0.1, 0.9}})
                       .node(Bit("c"), {"b"}, {{0.9, 0.1}, {0.1, 0.9}})
                       .build();
  CHECK(d_separated(chain, {"a"}, {"c"}, {"b"}));
  CHECK_FALSE(d_separated(chain, {"a"}, {"c"}, {}));

  BayesNet net = OrNet();
  CHECK(d_separated(net, {"s1"}, {"s2"}, {}));
  CHECK_FALSE(d_separated(net, {"s1"}, {"s2"}, {"v"}));
  CHECK_THROWS_AS(d_separated(net, {"s1"}, {"s1"}, {}), std::invalid_argument);
}

TEST_CASE("collider opened by a conditioned descendant") {
  BayesNet net = BayesNet::Builder()
                     .node(Bit("a"), {}, {{0.5, 0.5}})
                     .node(Bit("b"), {}, {{0.5, 0.5}})
                     .node(Bit("c"), {"a", "b"}, {{1, 0}, {0, 1}, {0, 1}, {0, 1}})
                     .node(Bit("d"), {"c"}, {{0.8, 0.2}, {0.2, 0.8}})
                     .build();
  CHECK(d_separated(net, {"a"}, {"b"}, {}));
  CHECK_FALSE(d_separated(net, {"a"}, {"b"}, {"d"}));
}

TEST_CASE("markov blanket") {
  BayesNet net = BayesNet::Builder()
                     .node(Bit("w"), {}, {{0.5, 0.5}})
                     .node(Bit("s"), {}, {{0.5, 0.5}})
                     .node(Bit("v"), {"s", "w"}, {{1, 0}, {0, 1}, {0, 1}, {0, 1}})
                     .node(Bit("lonely"), {}, {{0.5, 0.5}})
                     .build();
  CHECK(markov_blanket(net, "s") == VariableSet{"v", "w"});
  CHECK(markov_blanket(net, "v") == VariableSet{"s", "w"});
  CHECK(markov_blanket(net, "lonely").empty());
}

TEST_CASE("assignment parsing") {
  CHECK(parse_assignment("").empty());
  CHECK(parse_assignment(" a = 1, b=0 ") == Assignment{{"a", "1"}, {"b", "0"}});
  CHECK_THROWS_AS(parse_assignment("a"), std::invalid_argument);
  CHECK(split_list("s1, s2,,v") == std::vector<std::string>{"s1", "s2", "v"});
}

}  // namespace
}  // namespace sigstruct
