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

#include "sigstruct/structure_checks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sigstruct/error.hpp"

namespace sigstruct {

namespace {

constexpr double kLatticeTolerance = 1e-12;

}  // namespace

IndependenceResult check_independence(const BayesNet& net, const VariableSet& x, const VariableSet& y,
                                      const VariableSet& z) {
  for (const auto& id : x) {
    if (y.count(id) || z.count(id)) throw std::invalid_argument("independence sets must be disjoint ('" + id + "')");
  }
  for (const auto& id : y) {
    if (z.count(id)) throw std::invalid_argument("independence sets must be disjoint ('" + id + "')");
  }
  std::vector<std::string> order(x.begin(), x.end());
  order.insert(order.end(), y.begin(), y.end());
  order.insert(order.end(), z.begin(), z.end());
  Distribution joint = marginal(net, order);
  std::size_t nx = 1, ny = 1, nz = 1;
  for (std::size_t k = 0; k < order.size(); ++k) {
    std::size_t card = joint.labels[k].size();
    (k < x.size() ? nx : k < x.size() + y.size() ? ny : nz) *= card;
  }
  std::vector<double> pz(nz, 0.0), pxz(nx * nz, 0.0), pyz(ny * nz, 0.0);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      for (std::size_t k = 0; k < nz; ++k) {
        double p = joint.table[(i * ny + j) * nz + k];
        pz[k] += p;
        pxz[i * nz + k] += p;
        pyz[j * nz + k] += p;
      }
    }
  }
  IndependenceResult r;
  for (std::size_t k = 0; k < nz; ++k) {
    if (!(pz[k] > 0.0)) continue;
    for (std::size_t i = 0; i < nx; ++i) {
      for (std::size_t j = 0; j < ny; ++j) {
        double lhs = joint.table[(i * ny + j) * nz + k] / pz[k];
        double rhs = (pxz[i * nz + k] / pz[k]) * (pyz[j * nz + k] / pz[k]);
        r.max_deviation = std::max(r.max_deviation, std::abs(lhs - rhs));
      }
    }
  }
  r.independent = r.max_deviation <= kIndependenceTolerance;
  return r;
}

const char* AffiliationVerdictName(AffiliationVerdict v) {
  switch (v) {
    case AffiliationVerdict::kAffiliated: return "affiliated";
    case AffiliationVerdict::kViolated: return "violated";
    case AffiliationVerdict::kDegenerate: return "degenerate";
  }
  return "unknown";
}

AffiliationReport check_affiliation(const BayesNet& net, const std::vector<std::string>& variables,
                                    const Assignment& given) {
  if (variables.size() < 2) throw ParameterError("affiliation needs at least two variables");
  AffiliationReport report;
  report.variables = variables;
  report.given = given;
  for (const auto& id : variables) {
    const Variable& v = net.variable(id);
    if (!v.ordered) throw ParameterError("affiliation needs ordered states; '" + id + "' is unordered");
    if (v.cardinality() < 2) report.verdict = AffiliationVerdict::kDegenerate;
  }
  if (report.verdict == AffiliationVerdict::kDegenerate) return report;
  Distribution d;
  try {
    d = query(net, variables, given);
  } catch (const ZeroProbabilityError&) {
    report.verdict = AffiliationVerdict::kDegenerate;
    return report;
  }
  const std::size_t n = variables.size();
  std::vector<std::size_t> join(n), meet(n);
  double worst_violation = 0.0;
  double tightest = 0.0;
  bool any = false;
  for (std::size_t a = 0; a < d.size(); ++a) {
    const std::vector<std::size_t> x = d.decode(a);
    for (std::size_t b = 0; b < a; ++b) {
      const std::vector<std::size_t> y = d.decode(b);
      bool comparable_up = true, comparable_down = true;
      for (std::size_t k = 0; k < n; ++k) {
        join[k] = std::max(x[k], y[k]);
        meet[k] = std::min(x[k], y[k]);
        comparable_up = comparable_up && x[k] >= y[k];
        comparable_down = comparable_down && x[k] <= y[k];
      }
      ++report.instances_checked;
      if (comparable_up || comparable_down) continue;  // join and meet are x and y
      double lhs = d.at(join) * d.at(meet);
      double rhs = d.table[a] * d.table[b];
      LatticeInstance inst{x, y, join, meet, lhs, rhs};
      if (lhs < rhs - kLatticeTolerance) {
        if (report.verdict != AffiliationVerdict::kViolated || rhs - lhs > worst_violation) {
          worst_violation = rhs - lhs;
          report.verdict = AffiliationVerdict::kViolated;
          report.witness = inst;
        }
      } else if (report.verdict != AffiliationVerdict::kViolated && (!any || lhs - rhs < tightest)) {
        tightest = lhs - rhs;
        report.witness = inst;
        any = true;
      }
    }
  }
  return report;
}

const char* SignalPatternName(SignalPattern p) {
  return p == SignalPattern::kGenerated ? "generated" : "interpreted";
}

Classification classify(const BayesNet& net, const std::vector<std::string>& signals, const std::string& outcome) {
  Classification c;
  for (std::size_t i = 0; i < signals.size(); ++i) {
    for (std::size_t j = i + 1; j < signals.size(); ++j) {
      if (!d_separated(net, {signals[i]}, {signals[j]}, {outcome})) c.open_pairs.emplace_back(signals[i], signals[j]);
    }
  }
  c.pattern = c.open_pairs.empty() ? SignalPattern::kGenerated : SignalPattern::kInterpreted;
  return c;
}

std::string FormatStatement(const DsepStatement& s) {
  auto set = [](const VariableSet& v) {
    std::string out = "{";
    for (const auto& id : v) out += (out.size() > 1 ? "," : "") + id;
    return out + "}";
  };
  return set(s.x) + (s.separated ? " _||_ " : " not _||_ ") + set(s.y) + " | " + set(s.z);
}

}  // namespace sigstruct
