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

#include "oracles.hpp"
#include "sigstruct/info.hpp"
#include "sigstruct/properties.hpp"

namespace sigstruct {
namespace {

TEST_CASE("random nets are valid and reproducible") {
  std::mt19937_64 a(11), b(11);
  for (int t = 0; t < 20; ++t) {
    BayesNet x = random_net(a, 6, 0.5);
    BayesNet y = random_net(b, 6, 0.5);
    CHECK(x.valid());
    CHECK(x.edges() == y.edges());
  }
}

TEST_CASE("property sweeps hold for several seeds") {
  for (std::uint64_t seed : {0ULL, 1ULL, 42ULL}) {
    CAPTURE(seed);
    PropertyResult f = check_factorization(seed);
    CHECK(f.holds);
    CHECK(f.cases == 200);
    PropertyResult d = check_dsep_soundness(seed);
    CHECK(d.holds);
    CHECK(d.cases >= 200);
    PropertyResult m = check_blanket_sufficiency(seed);
    CHECK(m.holds);
    CHECK(m.cases > 0);
    CHECK(check_round_trip(seed, 30).holds);
  }
  PropertyResult s = check_sign_laws();
  CHECK(s.holds);
  // 6 unary, 3 binary and 3 ternary laws, plus monotonicity over the 9
  // ordered pairs of the sign lattice.
  CHECK(s.cases == 4 * 6 + 16 * 3 + 64 * 3 + 4 * 9);
}

// The sweep's d-separation verdicts agree with the moral-graph oracle.
TEST_CASE("random triples agree with the moral-graph criterion") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 100; ++t) {
    BayesNet net = random_net(rng, 5, 0.4);
    VariableSet x{"n0"}, y{"n4"}, z{"n2"};
    CHECK(d_separated(net, x, y, z) == testing::MoralSeparated(net, x, y, z));
    if (!d_separated(net, x, y, z)) continue;
    CHECK(conditional_mutual_information(net, x, y, z) <= 1e-9);
  }
}

}  // namespace
}  // namespace sigstruct
