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

#include "sigstruct/fingerprints.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace sigstruct {
namespace {

DsepStatement Sep(VariableSet x, VariableSet y, VariableSet z) { return {std::move(x), std::move(y), std::move(z), true}; }
DsepStatement Dep(VariableSet x, VariableSet y, VariableSet z) { return {std::move(x), std::move(y), std::move(z), false}; }

std::map<CanonicalId, StructureFingerprint> MakeTable() {
  using Id = CanonicalId;
  std::map<Id, StructureFingerprint> t;
  const std::vector<std::pair<std::string, std::string>> fig1a_edges = {
      {"omega", "v1"}, {"v1", "s1"}, {"omega", "v2"}, {"v2", "s2"}};
  t[Id::kFig1a] = {Id::kFig1a, fig1a_edges,
                   {Sep({"s1"}, {"s2"}, {"omega"}), Dep({"s1"}, {"s2"}, {}), Sep({"v1"}, {"v2"}, {"omega"}),
                    Dep({"v1"}, {"v2"}, {}), Sep({"s1"}, {"s2"}, {"v1"}), Sep({"s1"}, {"v2"}, {"omega"})}};
  t[Id::kFig1b] = {Id::kFig1b,
                   {{"v1", "s1"}, {"v2", "s2"}},
                   {Sep({"s1"}, {"s2"}, {}), Sep({"v1"}, {"s2"}, {}), Sep({"v1"}, {"v2"}, {}),
                    Dep({"v1"}, {"s1"}, {})}};
  const std::vector<std::pair<std::string, std::string>> common = {{"v", "s1"}, {"v", "s2"}};
  t[Id::kFig1c] = {Id::kFig1c, common, {Sep({"s1"}, {"s2"}, {"v"}), Dep({"s1"}, {"s2"}, {})}};
  t[Id::kFig1d] = {Id::kFig1d,
                   {{"s1", "v1"}, {"omega0", "v1"}, {"s2", "v2"}, {"omega0", "v2"}},
                   {Sep({"s1"}, {"s2"}, {}), Dep({"s1"}, {"s2"}, {"v1", "v2"}), Sep({"s1"}, {"s2"}, {"omega0"}),
                    Sep({"s1"}, {"s2"}, {"omega0", "v1", "v2"}), Sep({"v1"}, {"s2"}, {"s1"}),
                    Dep({"v1"}, {"v2"}, {})}};
  t[Id::kFig2a] = {Id::kFig2a,
                   {{"omega", "v"}, {"omega", "s1"}, {"omega", "s2"}},
                   {Sep({"s1"}, {"s2"}, {"omega"}), Dep({"s1"}, {"s2"}, {"v"}), Sep({"s1"}, {"v"}, {"omega"})}};
  t[Id::kFig2b] = {Id::kFig2b,
                   {{"omega", "v"}, {"omega", "pi1"}, {"pi1", "phi1"}, {"omega", "pi2"}, {"pi2", "phi2"}},
                   {Sep({"pi1"}, {"pi2"}, {"omega"}), Dep({"pi1"}, {"pi2"}, {"v"}), Dep({"phi1"}, {"phi2"}, {"v"}),
                    Sep({"phi1"}, {"phi2"}, {"omega"}), Sep({"phi1"}, {"v"}, {"pi1"})}};
  const std::vector<std::pair<std::string, std::string>> fig3a_edges = {
      {"x1", "v"}, {"x2", "v"}, {"x1", "pi1"}, {"pi1", "phi1"}, {"x2", "pi2"}, {"pi2", "phi2"}};
  t[Id::kFig3a] = {Id::kFig3a, fig3a_edges,
                   {Sep({"pi1"}, {"pi2"}, {}), Sep({"phi1"}, {"phi2"}, {}), Dep({"phi1"}, {"phi2"}, {"v"})}};
  auto fig3b_edges = fig3a_edges;
  fig3b_edges.insert(fig3b_edges.end(), {{"phi1", "delta1"}, {"v", "delta1"}, {"phi2", "delta2"}, {"v", "delta2"}});
  t[Id::kFig3b] = {Id::kFig3b, fig3b_edges,
                   {Sep({"phi1"}, {"phi2"}, {}), Dep({"delta1"}, {"delta2"}, {}),
                    Dep({"phi1"}, {"phi2"}, {"delta1", "delta2"})}};
  t[Id::kFig4a] = {Id::kFig4a, common, {Sep({"s1"}, {"s2"}, {"v"}), Dep({"s1"}, {"s2"}, {})}};
  t[Id::kFig4b] = {Id::kFig4b,
                   {{"s1", "v"}, {"s2", "v"}},
                   {Sep({"s1"}, {"s2"}, {}), Dep({"s1"}, {"s2"}, {"v"})}};
  t[Id::kFig5chance] = {Id::kFig5chance, fig1a_edges,
                        {Sep({"s1"}, {"s2"}, {"omega"}), Dep({"s1"}, {"s2"}, {}), Dep({"v1"}, {"s2"}, {})}};
  t[Id::kFig6chance] = {Id::kFig6chance,
                        {{"x1", "s1"}, {"x2", "s2"}, {"x1", "v"}, {"x2", "v"}},
                        {Sep({"s1"}, {"s2"}, {}), Dep({"s1"}, {"s2"}, {"v"}), Dep({"s1"}, {"v"}, {})}};
  t[Id::kAppendixA] = {Id::kAppendixA,
                       {{"s1", "v"}, {"s2", "v"}},
                       {Sep({"s1"}, {"s2"}, {}), Dep({"s1"}, {"s2"}, {"v"})}};
  return t;
}

}  // namespace

const StructureFingerprint& GoldenFingerprint(CanonicalId id) {
  static const std::map<CanonicalId, StructureFingerprint> table = MakeTable();
  return table.at(id);
}

bool FingerprintCheck::ok() const {
  if (!edges_match) return false;
  for (std::size_t k = 0; k < dsep_matches.size(); ++k) {
    if (!dsep_matches[k] || !numeric_matches[k]) return false;
  }
  return true;
}

FingerprintCheck check_fingerprint(CanonicalId id) {
  const StructureFingerprint& golden = GoldenFingerprint(id);
  BayesNet net = build_canonical(id);
  FingerprintCheck out;
  out.id = id;
  std::set<std::pair<std::string, std::string>> built, expected(golden.edges.begin(), golden.edges.end());
  for (const auto& [p, c] : net.edges()) built.emplace(net.variable(p).id, net.variable(c).id);
  out.edges_match = built == expected && expected.size() == golden.edges.size();
  for (const auto& s : golden.statements) {
    bool graph = d_separated(net, s.x, s.y, s.z);
    IndependenceResult numeric = check_independence(net, s.x, s.y, s.z);
    out.dsep_matches.push_back(graph == s.separated);
    out.numeric_matches.push_back(numeric.independent == s.separated);
    out.deviations.push_back(numeric.max_deviation);
  }
  return out;
}

}  // namespace sigstruct
