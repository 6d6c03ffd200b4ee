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

#include "sigstruct/properties.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sigstruct/info.hpp"
#include "sigstruct/model_file.hpp"
#include "sigstruct/qpn.hpp"

namespace sigstruct {
namespace {

std::string Name(int k) { return "n" + std::to_string(k); }

std::string Describe(const VariableSet& s) {
  std::string out = "{";
  for (const auto& id : s) out += (out.size() > 1 ? "," : "") + id;
  return out + "}";
}

void Fail(PropertyResult& r, const std::string& what) {
  if (r.holds) r.counterexample = what;
  r.holds = false;
}

// Disjoint random X, Y (nonempty) and Z over the net's variables.
void RandomTriple(std::mt19937_64& rng, int n, VariableSet& x, VariableSet& y, VariableSet& z) {
  std::uniform_int_distribution<int> role(0, 3);
  do {
    x.clear();
    y.clear();
    z.clear();
    for (int k = 0; k < n; ++k) {
      switch (role(rng)) {
        case 0: x.insert(Name(k)); break;
        case 1: y.insert(Name(k)); break;
        case 2: z.insert(Name(k)); break;
        default: break;
      }
    }
  } while (x.empty() || y.empty());
}

}  // namespace

BayesNet random_net(std::mt19937_64& rng, int nodes, double density) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  BayesNet::Builder b;
  std::vector<std::size_t> cards;
  for (int i = 0; i < nodes; ++i) {
    const std::size_t card = unit(rng) < 0.5 ? 2 : 3;
    cards.push_back(card);
    std::vector<std::string> parents;
    std::size_t rows = 1;
    for (int j = 0; j < i; ++j) {
      if (unit(rng) < density) {
        parents.push_back(Name(j));
        rows *= cards[static_cast<std::size_t>(j)];
      }
    }
    std::vector<std::vector<double>> table;
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<double> row;
      double sum = 0.0;
      for (std::size_t s = 0; s < card; ++s) {
        row.push_back(0.05 + unit(rng));
        sum += row.back();
      }
      for (double& p : row) p /= sum;
      table.push_back(row);
    }
    Variable v{Name(i), {}, true};
    for (std::size_t s = 0; s < card; ++s) v.states.push_back(std::to_string(s));
    b.node(v, parents, table);
  }
  return b.build();
}

PropertyResult check_factorization(std::uint64_t seed, int nets) {
  std::mt19937_64 rng(seed);
  PropertyResult r;
  for (int t = 0; t < nets; ++t) {
    BayesNet net = random_net(rng, 3 + t % 6, 0.4);
    std::vector<std::string> all;
    for (const auto& v : net.variables()) all.push_back(v.id);
    const Distribution d = marginal(net, all);
    double sum = 0.0;
    for (double p : d.table) sum += p;
    ++r.cases;
    r.worst = std::max(r.worst, std::fabs(sum - 1.0));
    if (std::fabs(sum - 1.0) > kPropertyTolerance) Fail(r, "net " + std::to_string(t) + " sums to " + std::to_string(sum));
  }
  return r;
}

PropertyResult check_dsep_soundness(std::uint64_t seed, int nets) {
  std::mt19937_64 rng(seed);
  PropertyResult r;
  for (int t = 0; t < nets; ++t) {
    const int n = 3 + t % 4;
    BayesNet net = random_net(rng, n, 0.35);
    for (int q = 0; q < 8; ++q) {
      VariableSet x, y, z;
      RandomTriple(rng, n, x, y, z);
      if (!d_separated(net, x, y, z)) continue;
      ++r.cases;
      const double cmi = conditional_mutual_information(net, x, y, z);
      r.worst = std::max(r.worst, cmi);
      if (cmi > kPropertyTolerance) {
        Fail(r, "net " + std::to_string(t) + ": " + Describe(x) + " _||_ " + Describe(y) + " | " + Describe(z) +
                    " has CMI " + std::to_string(cmi));
      }
    }
  }
  return r;
}

PropertyResult check_blanket_sufficiency(std::uint64_t seed, int nets) {
  std::mt19937_64 rng(seed);
  PropertyResult r;
  for (int t = 0; t < nets; ++t) {
    const int n = 3 + t % 4;
    BayesNet net = random_net(rng, n, 0.45);
    for (int k = 0; k < n; ++k) {
      const VariableSet blanket = markov_blanket(net, Name(k));
      VariableSet rest;
      for (int j = 0; j < n; ++j) {
        if (j != k && !blanket.count(Name(j))) rest.insert(Name(j));
      }
      if (rest.empty()) continue;
      ++r.cases;
      const double cmi = conditional_mutual_information(net, {Name(k)}, rest, blanket);
      r.worst = std::max(r.worst, cmi);
      if (cmi > kPropertyTolerance) Fail(r, "net " + std::to_string(t) + ": blanket of " + Name(k) + " leaks");
    }
  }
  return r;
}

PropertyResult check_sign_laws() {
  PropertyResult r;
  const Sign all[] = {Sign::kZero, Sign::kPlus, Sign::kMinus, Sign::kAmbiguous};
  auto law = [&](bool ok, const std::string& name, Sign a, Sign b, Sign c) {
    ++r.cases;
    if (!ok) Fail(r, name + " fails at (" + SignSymbol(a) + ", " + SignSymbol(b) + ", " + SignSymbol(c) + ")");
  };
  for (Sign a : all) {
    law(sign_product(a, Sign::kPlus) == a, "product identity", a, a, a);
    law(sign_product(a, Sign::kZero) == Sign::kZero, "zero annihilates", a, a, a);
    law(sign_combine(a, Sign::kZero) == a, "combine identity", a, a, a);
    law(sign_combine(a, a) == a, "combine idempotent", a, a, a);
    law(sign_combine(a, Sign::kAmbiguous) == Sign::kAmbiguous, "ambiguous absorbs", a, a, a);
    law(sign_negate(sign_negate(a)) == a, "negation involutive", a, a, a);
    for (Sign b : all) {
      law(sign_product(a, b) == sign_product(b, a), "product commutes", a, b, b);
      law(sign_combine(a, b) == sign_combine(b, a), "combine commutes", a, b, b);
      law(sign_leq(a, sign_combine(a, b)), "combine is an upper bound", a, b, b);
      for (Sign c : all) {
        law(sign_product(a, sign_product(b, c)) == sign_product(sign_product(a, b), c), "product associates", a, b, c);
        law(sign_combine(a, sign_combine(b, c)) == sign_combine(sign_combine(a, b), c), "combine associates", a, b, c);
        law(sign_product(a, sign_combine(b, c)) == sign_combine(sign_product(a, b), sign_product(a, c)),
            "product distributes", a, b, c);
        if (sign_leq(b, c)) law(sign_leq(sign_product(a, b), sign_product(a, c)), "product is monotone", a, b, c);
      }
    }
  }
  return r;
}

PropertyResult check_round_trip(std::uint64_t seed, int nets) {
  std::mt19937_64 rng(seed);
  PropertyResult r;
  for (int t = 0; t < nets; ++t) {
    BayesNet net = random_net(rng, 2 + t % 6, 0.5);
    const std::string text = serialize_model(ModelFile{net});
    ModelFile back = parse_model(text);
    ++r.cases;
    if (serialize_model(back) != text) Fail(r, "net " + std::to_string(t) + " changes on a second pass");
    if (!structurally_equal(std::get<BayesNet>(back.body), net)) Fail(r, "net " + std::to_string(t) + " loses structure");
  }
  return r;
}

}  // namespace sigstruct
