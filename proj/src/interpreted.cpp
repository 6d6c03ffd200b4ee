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

#include "sigstruct/interpreted.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "sigstruct/error.hpp"

namespace sigstruct {
namespace {

constexpr double kTieTolerance = 1e-12;

std::vector<double> Uniform(std::size_t n) { return std::vector<double>(n, 1.0 / static_cast<double>(n)); }

// Restricted growth strings of length n with at least two blocks.
const std::vector<std::vector<std::size_t>>& NontrivialPartitions(std::size_t n) {
  static std::vector<std::vector<std::vector<std::size_t>>> cache;
  if (cache.size() <= n) cache.resize(n + 1);
  auto& out = cache[n];
  if (!out.empty() || n < 2) return out;
  std::vector<std::size_t> rgs(n, 0);
  std::vector<std::size_t> max_prefix(n, 0);  // max block label among rgs[0..k]
  while (true) {
    if (max_prefix[n - 1] >= 1) out.push_back(rgs);
    std::size_t k = n - 1;
    while (k > 0 && rgs[k] > max_prefix[k - 1]) --k;
    if (k == 0) break;
    ++rgs[k];
    max_prefix[k] = std::max(max_prefix[k - 1], rgs[k]);
    for (std::size_t j = k + 1; j < n; ++j) {
      rgs[j] = 0;
      max_prefix[j] = max_prefix[k];
    }
  }
  return out;
}

// Integer partitions of n into at least two parts, laid out as contiguous
// blocks of nonincreasing size.
std::vector<std::vector<std::size_t>> ContiguousPartitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> parts;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t left, std::size_t cap) {
    if (left == 0) {
      if (parts.size() < 2) return;
      std::vector<std::size_t> labels;
      for (std::size_t b = 0; b < parts.size(); ++b) labels.insert(labels.end(), parts[b], b);
      out.push_back(labels);
      return;
    }
    for (std::size_t p = std::min(left, cap); p >= 1; --p) {
      parts.push_back(p);
      rec(left - p, p);
      parts.pop_back();
    }
  };
  rec(n, n);
  return out;
}

std::size_t BlockCount(const std::vector<std::size_t>& labels) {
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

// Exact integer test of joint = product of marginals for uniform states.
bool IndependentCounts(const std::vector<const std::vector<std::size_t>*>& parts, std::size_t n) {
  std::vector<std::size_t> cards;
  std::size_t cells = 1;
  for (const auto* p : parts) {
    cards.push_back(BlockCount(*p));
    cells *= cards.back();
  }
  std::vector<unsigned long long> joint(cells, 0);
  std::vector<std::vector<unsigned long long>> margin(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) margin[i].assign(cards[i], 0);
  for (std::size_t w = 0; w < n; ++w) {
    std::size_t flat = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      flat = flat * cards[i] + (*parts[i])[w];
      ++margin[i][(*parts[i])[w]];
    }
    ++joint[flat];
  }
  unsigned long long scale = 1;
  for (std::size_t i = 1; i < parts.size(); ++i) scale *= n;
  std::vector<std::size_t> idx(parts.size(), 0);
  for (std::size_t flat = 0; flat < cells; ++flat) {
    unsigned long long product = 1;
    for (std::size_t i = 0; i < parts.size(); ++i) product *= margin[i][idx[i]];
    if (joint[flat] * scale != product) return false;
    for (std::size_t i = parts.size(); i-- > 0;) {
      if (++idx[i] < cards[i]) break;
      idx[i] = 0;
    }
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// AttributeSpace

AttributeSpace AttributeSpace::Product(std::vector<Variable> attributes, std::vector<std::vector<double>> marginals) {
  AttributeSpace s;
  s.attributes_ = std::move(attributes);
  s.marginals_ = std::move(marginals);
  if (s.marginals_.size() != s.attributes_.size()) throw ParameterError("one marginal per attribute required");
  std::size_t size = 1;
  for (std::size_t k = 0; k < s.attributes_.size(); ++k) {
    if (s.marginals_[k].size() != s.attributes_[k].cardinality()) {
      throw ParameterError("marginal of '" + s.attributes_[k].id + "' has the wrong length");
    }
    size *= s.attributes_[k].cardinality();
  }
  s.prior_.assign(size, 1.0);
  s.check();
  for (std::size_t w = 0; w < size; ++w) {
    for (std::size_t k = 0; k < s.attributes_.size(); ++k) s.prior_[w] *= s.marginals_[k][s.attribute_state(w, k)];
  }
  return s;
}

AttributeSpace AttributeSpace::Uniform(std::vector<Variable> attributes) {
  std::vector<std::vector<double>> marginals;
  for (const auto& a : attributes) marginals.push_back(sigstruct::Uniform(a.cardinality()));
  return Product(std::move(attributes), std::move(marginals));
}

AttributeSpace AttributeSpace::Joint(std::vector<Variable> attributes, std::vector<double> joint) {
  AttributeSpace s;
  s.attributes_ = std::move(attributes);
  s.prior_ = std::move(joint);
  s.check();
  return s;
}

void AttributeSpace::check() {
  std::size_t size = 1;
  stride_.assign(attributes_.size(), 1);
  for (std::size_t k = attributes_.size(); k-- > 0;) {
    if (attributes_[k].cardinality() == 0) throw ParameterError("attribute '" + attributes_[k].id + "' has no states");
    stride_[k] = size;
    size *= attributes_[k].cardinality();
  }
  if (prior_.size() != size) throw ParameterError("prior does not cover every attribute tuple");
  double total = 0.0;
  for (double p : prior_) {
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("prior entry outside [0, 1]");
    total += p;
  }
  for (const auto& row : marginals_) {
    double sum = std::accumulate(row.begin(), row.end(), 0.0);
    if (std::abs(sum - 1.0) > kProbTolerance) throw ParameterError("attribute marginal does not sum to 1");
  }
  if (marginals_.empty() && std::abs(total - 1.0) > kProbTolerance) throw ParameterError("prior does not sum to 1");
}

std::size_t AttributeSpace::attribute_state(std::size_t omega, std::size_t attribute) const {
  return (omega / stride_[attribute]) % attributes_[attribute].cardinality();
}

std::vector<std::size_t> AttributeSpace::decode(std::size_t omega) const {
  std::vector<std::size_t> out(attributes_.size());
  for (std::size_t k = 0; k < attributes_.size(); ++k) out[k] = attribute_state(omega, k);
  return out;
}

// ---------------------------------------------------------------------------
// InterpretedModel

void InterpretedModel::check() const {
  if (outcome.cardinality() == 0) throw ParameterError("outcome has no states");
  if (outcome_of.size() != space.size()) throw ParameterError("outcome function does not cover Omega");
  for (std::size_t v : outcome_of) {
    if (v >= outcome.cardinality()) throw ParameterError("outcome function leaves the outcome domain");
  }
  for (const auto& a : agents) {
    for (std::size_t k = 0; k < a.observed.size(); ++k) {
      if (a.observed[k] >= space.attributes().size()) {
        throw ParameterError("agent '" + a.id + "' observes an unknown attribute");
      }
      if (k > 0 && a.observed[k] <= a.observed[k - 1]) {
        throw ParameterError("observed attributes of '" + a.id + "' must be ascending and distinct");
      }
    }
  }
}

std::size_t InterpretedModel::cell_count(std::size_t agent) const {
  std::size_t n = 1;
  for (std::size_t k : agents.at(agent).observed) n *= space.attributes()[k].cardinality();
  return n;
}

std::size_t InterpretedModel::interpretation(std::size_t agent, std::size_t omega) const {
  std::size_t cell = 0;
  for (std::size_t k : agents.at(agent).observed) {
    cell = cell * space.attributes()[k].cardinality() + space.attribute_state(omega, k);
  }
  return cell;
}

std::size_t InterpretedModel::cell_of(std::size_t agent, const std::vector<std::size_t>& observed_states) const {
  const auto& observed = agents.at(agent).observed;
  if (observed_states.size() != observed.size()) throw ParameterError("interpretation has the wrong arity");
  std::size_t cell = 0;
  for (std::size_t k = 0; k < observed.size(); ++k) {
    std::size_t card = space.attributes()[observed[k]].cardinality();
    if (observed_states[k] >= card) throw ParameterError("interpretation state out of range");
    cell = cell * card + observed_states[k];
  }
  return cell;
}

InterpretedModel AppendixAInterpreted() {
  std::vector<Variable> bits{{"x1", {"0", "1"}, true}, {"x2", {"0", "1"}, true}};
  return MakeInterpreted(
      AttributeSpace::Uniform(bits), Variable{"v", {"0", "1"}, true},
      [](const std::vector<std::size_t>& x) -> std::size_t { return x[0] + x[1] - x[0] * x[1]; },
      {AgentView{"s1", {0}}, AgentView{"s2", {1}}});
}

namespace {

// Pr(v, pi_i = cell) for every cell, outcome fastest.
std::vector<double> CellMass(const InterpretedModel& m, std::size_t agent) {
  const std::size_t nv = m.outcome.cardinality();
  std::vector<double> mass(m.cell_count(agent) * nv, 0.0);
  for (std::size_t w = 0; w < m.space.size(); ++w) {
    mass[m.interpretation(agent, w) * nv + m.outcome_of[w]] += m.space.prior(w);
  }
  return mass;
}

std::size_t Argmax(const double* mass, std::size_t n, TieBreak rule) {
  double best = *std::max_element(mass, mass + n);
  if (rule == TieBreak::kLowestOutcome) {
    for (std::size_t v = 0; v < n; ++v) {
      if (mass[v] >= best - kTieTolerance) return v;
    }
  } else {
    for (std::size_t v = n; v-- > 0;) {
      if (mass[v] >= best - kTieTolerance) return v;
    }
  }
  return 0;
}

}  // namespace

std::size_t predict(const InterpretedModel& m, std::size_t agent, std::size_t cell) {
  if (cell >= m.cell_count(agent)) throw ParameterError("interpretation cell out of range");
  const std::size_t nv = m.outcome.cardinality();
  std::vector<double> mass = CellMass(m, agent);
  const double* row = mass.data() + cell * nv;
  if (!(std::accumulate(row, row + nv, 0.0) > 0.0)) {
    throw ZeroProbabilityError("interpretation has zero prior probability");
  }
  return Argmax(row, nv, m.tie_break);
}

std::size_t predict(const InterpretedModel& m, std::size_t agent, const std::vector<std::size_t>& observed_states) {
  return predict(m, agent, m.cell_of(agent, observed_states));
}

Correctness correctness(const InterpretedModel& m, std::size_t agent) {
  const std::size_t nv = m.outcome.cardinality();
  std::vector<double> mass = CellMass(m, agent);
  std::vector<std::size_t> phi_of_cell(m.cell_count(agent));
  for (std::size_t c = 0; c < phi_of_cell.size(); ++c) phi_of_cell[c] = Argmax(mass.data() + c * nv, nv, m.tie_break);
  Correctness out;
  for (std::size_t w = 0; w < m.space.size(); ++w) {
    std::size_t phi = phi_of_cell[m.interpretation(agent, w)];
    out.prediction.push_back(phi);
    out.delta.push_back(phi == m.outcome_of[w] ? 1 : 0);
    if (out.delta.back() == 1) out.accuracy += m.space.prior(w);
  }
  return out;
}

CorrelationResult correctness_correlation(const InterpretedModel& m, std::size_t i, std::size_t j) {
  Correctness ci = correctness(m, i);
  Correctness cj = correctness(m, j);
  double both = 0.0;
  for (std::size_t w = 0; w < m.space.size(); ++w) {
    if (ci.delta[w] == 1 && cj.delta[w] == 1) both += m.space.prior(w);
  }
  CorrelationResult r;
  r.covariance = both - ci.accuracy * cj.accuracy;
  double var_i = ci.accuracy * (1.0 - ci.accuracy);
  double var_j = cj.accuracy * (1.0 - cj.accuracy);
  if (var_i > kTieTolerance && var_j > kTieTolerance) r.coefficient = r.covariance / std::sqrt(var_i * var_j);
  return r;
}

bool informative(const InterpretedModel& m, std::size_t agent) {
  std::vector<double> pv(m.outcome.cardinality(), 0.0);
  for (std::size_t w = 0; w < m.space.size(); ++w) pv[m.outcome_of[w]] += m.space.prior(w);
  double best_constant = *std::max_element(pv.begin(), pv.end());
  return correctness(m, agent).accuracy > best_constant + kTieTolerance;
}

bool nondegenerate(const InterpretedModel& m, std::size_t agent) {
  const std::size_t nv = m.outcome.cardinality();
  std::vector<double> mass = CellMass(m, agent);
  for (std::size_t v = 0; v < nv; ++v) {
    std::size_t cells = 0;
    for (std::size_t c = 0; c < m.cell_count(agent); ++c) {
      if (mass[c * nv + v] > 0.0) ++cells;
    }
    if (cells >= 2) return true;
  }
  return false;
}

BayesNet to_bayes_net(const InterpretedModel& m, bool with_correctness) {
  const auto& attrs = m.space.attributes();
  BayesNet::Builder b;
  std::vector<std::string> attr_ids;
  std::vector<std::size_t> attr_cards;
  for (std::size_t k = 0; k < attrs.size(); ++k) {
    if (m.space.is_product()) {
      b.node(attrs[k], {}, {m.space.marginals()[k]});
    } else {
      // Chain rule over the explicit joint: x_k | x_1..x_{k-1}.
      std::size_t prefix_states = 1;
      for (std::size_t c : attr_cards) prefix_states *= c;
      const std::size_t card = attrs[k].cardinality();
      std::vector<std::vector<double>> rows(prefix_states, std::vector<double>(card, 0.0));
      for (std::size_t w = 0; w < m.space.size(); ++w) {
        std::size_t prefix = 0;
        for (std::size_t j = 0; j < k; ++j) prefix = prefix * attr_cards[j] + m.space.attribute_state(w, j);
        rows[prefix][m.space.attribute_state(w, k)] += m.space.prior(w);
      }
      for (auto& row : rows) {
        double z = std::accumulate(row.begin(), row.end(), 0.0);
        for (double& p : row) p = z > 0.0 ? p / z : 1.0 / static_cast<double>(card);
      }
      b.node(attrs[k], attr_ids, rows);
    }
    attr_ids.push_back(attrs[k].id);
    attr_cards.push_back(attrs[k].cardinality());
  }
  const std::size_t nv = m.outcome.cardinality();
  {
    std::vector<std::vector<double>> rows;
    for (std::size_t w = 0; w < m.space.size(); ++w) {
      std::vector<double> row(nv, 0.0);
      row[m.outcome_of[w]] = 1.0;
      rows.push_back(row);
    }
    b.node(m.outcome, attr_ids, rows, true);
  }
  for (std::size_t i = 0; i < m.agents.size(); ++i) {
    const auto& view = m.agents[i];
    const std::string tag = std::to_string(i + 1);
    std::vector<std::string> parents;
    std::vector<std::size_t> cards;
    for (std::size_t k : view.observed) {
      parents.push_back(attrs[k].id);
      cards.push_back(attrs[k].cardinality());
    }
    const std::size_t cells = m.cell_count(i);
    Variable pi{"pi" + tag, {}, view.observed.size() == 1 && attrs[view.observed[0]].ordered};
    for (std::size_t c = 0; c < cells; ++c) {
      std::string label;
      std::size_t rest = c;
      std::vector<std::string> parts(view.observed.size());
      for (std::size_t k = view.observed.size(); k-- > 0;) {
        parts[k] = attrs[view.observed[k]].states[rest % cards[k]];
        rest /= cards[k];
      }
      for (std::size_t k = 0; k < parts.size(); ++k) label += (k ? "," : "") + parts[k];
      pi.states.push_back(view.observed.empty() ? "*" : label);
    }
    std::vector<std::vector<double>> pi_rows;
    for (std::size_t c = 0; c < cells; ++c) {
      std::vector<double> row(cells, 0.0);
      row[c] = 1.0;
      pi_rows.push_back(row);
    }
    b.node(pi, parents, pi_rows, true);

    std::vector<double> mass = CellMass(m, i);
    std::vector<std::vector<double>> phi_rows;
    for (std::size_t c = 0; c < cells; ++c) {
      std::vector<double> row(nv, 0.0);
      row[Argmax(mass.data() + c * nv, nv, m.tie_break)] = 1.0;
      phi_rows.push_back(row);
    }
    Variable phi{"phi" + tag, m.outcome.states, m.outcome.ordered};
    b.node(phi, {pi.id}, phi_rows, true);
    if (with_correctness) {
      std::vector<std::vector<double>> rows;
      for (std::size_t p = 0; p < nv; ++p) {
        for (std::size_t v = 0; v < nv; ++v) rows.push_back(p == v ? std::vector<double>{0, 1} : std::vector<double>{1, 0});
      }
      b.node(Variable{"delta" + tag, {"0", "1"}, true}, {phi.id, m.outcome.id}, rows, true);
    }
  }
  return b.build();
}

// ---------------------------------------------------------------------------
// Conditional-independence search

InterpretedModel CiConfiguration::model() const {
  std::vector<Variable> bits;
  for (unsigned k = 0; k < attributes; ++k) bits.push_back(Variable{"x" + std::to_string(k + 1), {"0", "1"}, true});
  std::vector<AgentView> views;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    AgentView view{"s" + std::to_string(i + 1), {}};
    for (unsigned k = 0; k < attributes; ++k) {
      if (masks[i] & (1U << (attributes - 1 - k))) view.observed.push_back(k);
    }
    views.push_back(view);
  }
  const unsigned long table = truth_table;
  return MakeInterpreted(
      AttributeSpace::Uniform(bits), Variable{"v", {"0", "1"}, true},
      [table](const std::vector<std::size_t>& x) -> std::size_t {
        unsigned long code = 0;
        for (std::size_t b : x) code = code * 2 + b;
        return (table >> code) & 1UL;
      },
      views);
}

CorrelationSweep sweep_correctness_correlation(unsigned max_attributes) {
  if (max_attributes < 1 || max_attributes > 4) throw ParameterError("correlation sweep supports 1..4 attributes");
  constexpr double kTol = 1e-12;
  CorrelationSweep out;
  for (unsigned k = 1; k <= max_attributes; ++k) {
    const unsigned states = 1U << k;
    for (unsigned long f = 0; f < (1UL << states); ++f) {
      for (unsigned m1 = 0; m1 < states; ++m1) {
        for (unsigned m2 = 0; m2 < states; ++m2) {
          ++out.models_checked;
          CiConfiguration config{k, f, {m1, m2}};
          InterpretedModel m = config.model();
          Correctness c[2] = {correctness(m, 0), correctness(m, 1)};
          // Uniform prior: pmf of (phi1, phi2) by counting.
          double pj[2][2] = {{0, 0}, {0, 0}}, p1[2] = {0, 0}, p2[2] = {0, 0};
          for (unsigned w = 0; w < states; ++w) {
            const double mass = m.space.prior()[w];
            pj[c[0].prediction[w]][c[1].prediction[w]] += mass;
            p1[c[0].prediction[w]] += mass;
            p2[c[1].prediction[w]] += mass;
          }
          bool ok = std::fabs(p1[1] - 0.5) <= kTol && std::fabs(p2[1] - 0.5) <= kTol;
          for (int a = 0; a < 2 && ok; ++a) {
            for (int b = 0; b < 2 && ok; ++b) ok = std::fabs(pj[a][b] - p1[a] * p2[b]) <= kTol;
          }
          ok = ok && c[0].accuracy > 0.5 + kTol && c[1].accuracy > 0.5 + kTol;
          if (!ok) continue;
          ++out.qualifying;
          CorrelationResult r = correctness_correlation(m, 0, 1);
          if (!r.coefficient) ++out.undefined;
          if (r.coefficient && (!out.max_coefficient || *r.coefficient > *out.max_coefficient)) {
            out.max_coefficient = r.coefficient;
          }
          if (!out.worst || r.covariance > out.max_covariance) {
            out.max_covariance = r.covariance;
            out.worst = config;
          }
        }
      }
    }
  }
  return out;
}

CiSearchResult search_ci_outcome_functions(unsigned attributes, unsigned agents) {
  if (attributes < 1 || attributes > 4) throw ParameterError("conditional-independence search supports 1..4 attributes");
  if (agents != 2) throw ParameterError("conditional-independence search supports exactly 2 agents");
  const unsigned states = 1U << attributes;
  const unsigned masks = states;
  const unsigned long functions = 1UL << states;
  CiSearchResult result;
  // Counting is exact: every state has mass 1/|Omega|.
  std::vector<int> value(states);
  std::vector<char> usable(masks);
  for (unsigned long f = 1; f + 1 < functions; ++f) {
    ++result.functions_checked;
    unsigned ones = 0;
    for (unsigned w = 0; w < states; ++w) {
      value[w] = static_cast<int>((f >> w) & 1UL);
      ones += static_cast<unsigned>(value[w]);
    }
    const unsigned count_v[2] = {states - ones, ones};
    // Per mask: informative and not a function of v.
    for (unsigned mask = 0; mask < masks; ++mask) {
      std::vector<unsigned> c(2 * states, 0);  // cell (w & mask), outcome fastest
      for (unsigned w = 0; w < states; ++w) ++c[2 * (w & mask) + static_cast<unsigned>(value[w])];
      unsigned correct = 0;
      unsigned cells_with[2] = {0, 0};
      for (unsigned cell = 0; cell < states; ++cell) {
        unsigned c0 = c[2 * cell], c1 = c[2 * cell + 1];
        correct += std::max(c0, c1);  // tie-break does not change the count
        cells_with[0] += c0 > 0;
        cells_with[1] += c1 > 0;
      }
      bool inform = correct > std::max(count_v[0], count_v[1]);
      bool nondeg = cells_with[0] >= 2 || cells_with[1] >= 2;
      usable[mask] = inform && nondeg;
    }
    for (unsigned m1 = 0; m1 < masks; ++m1) {
      if (!usable[m1]) continue;
      for (unsigned m2 = 0; m2 < masks; ++m2) {
        if (!usable[m2]) continue;
        ++result.configurations_checked;
        bool independent = true;
        for (int v = 0; v < 2 && independent; ++v) {
          if (count_v[v] == 0) continue;
          std::vector<unsigned> joint(states * states, 0), a(states, 0), b(states, 0);
          for (unsigned w = 0; w < states; ++w) {
            if (value[w] != v) continue;
            ++joint[(w & m1) * states + (w & m2)];
            ++a[w & m1];
            ++b[w & m2];
          }
          for (unsigned x = 0; x < states && independent; ++x) {
            if (a[x] == 0) continue;
            for (unsigned y = 0; y < states; ++y) {
              if (joint[x * states + y] * count_v[v] != a[x] * b[y]) {
                independent = false;
                break;
              }
            }
          }
        }
        if (independent) result.configurations.push_back(CiConfiguration{attributes, f, {m1, m2}});
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Interpretation-independence search

bool mutually_independent(const PartitionWitness& w) {
  std::vector<std::size_t> cards;
  std::size_t cells = 1;
  for (const auto& p : w.partitions) {
    cards.push_back(BlockCount(p));
    cells *= cards.back();
  }
  const double unit = 1.0 / static_cast<double>(w.states);
  std::vector<double> joint(cells, 0.0);
  std::vector<std::vector<double>> margin(w.partitions.size());
  for (std::size_t i = 0; i < cards.size(); ++i) margin[i].assign(cards[i], 0.0);
  for (std::size_t s = 0; s < w.states; ++s) {
    std::size_t flat = 0;
    for (std::size_t i = 0; i < cards.size(); ++i) {
      flat = flat * cards[i] + w.partitions[i][s];
      margin[i][w.partitions[i][s]] += unit;
    }
    joint[flat] += unit;
  }
  std::vector<std::size_t> idx(cards.size(), 0);
  for (std::size_t flat = 0; flat < cells; ++flat) {
    double product = 1.0;
    for (std::size_t i = 0; i < cards.size(); ++i) product *= margin[i][idx[i]];
    if (std::abs(joint[flat] - product) > kTieTolerance) return false;
    for (std::size_t i = cards.size(); i-- > 0;) {
      if (++idx[i] < cards[i]) break;
      idx[i] = 0;
    }
  }
  return true;
}

std::optional<PartitionWitness> find_independent_partitions(unsigned agents, std::size_t states) {
  if (agents < 1 || agents > 3) throw ParameterError("interpretation search supports 1..3 agents");
  if (states > 64) throw ParameterError("interpretation search supports at most 64 states");
  if (states < 2) return std::nullopt;
  // Relabeling states maps any witness to one whose first partition is
  // contiguous with nonincreasing block sizes, so only those are tried.
  const auto firsts = ContiguousPartitions(states);
  if (agents == 1) return PartitionWitness{states, {firsts.front()}};
  constexpr std::size_t kPartitionCap = 1u << 20;
  if (states > 12) {
    throw CapExceededError("set partitions of " + std::to_string(states) + " states exceed the cap of " +
                           std::to_string(kPartitionCap));
  }
  const auto& all = NontrivialPartitions(states);
  if (all.size() > kPartitionCap) {
    throw CapExceededError("set partitions of " + std::to_string(states) + " states exceed the cap");
  }
  for (const auto& first : firsts) {
    for (const auto& second : all) {
      if (!IndependentCounts({&first, &second}, states)) continue;
      if (agents == 2) return PartitionWitness{states, {first, second}};
      for (const auto& third : all) {
        if (IndependentCounts({&first, &second, &third}, states)) {
          return PartitionWitness{states, {first, second, third}};
        }
      }
    }
  }
  return std::nullopt;
}

InterpretationSearch search_independent_interpretations(unsigned agents, std::size_t max_states) {
  if (agents < 1 || agents > 3) throw ParameterError("interpretation search supports 1..3 agents");
  if (max_states > 64) throw ParameterError("interpretation search supports at most 64 states");
  InterpretationSearch out;
  for (std::size_t n = 1; n <= max_states; ++n) {
    auto w = find_independent_partitions(agents, n);
    if (w) {
      out.minimal_states = n;
      out.witness = std::move(w);
      return out;
    }
    out.exhausted.push_back(n);
  }
  return out;
}

}  // namespace sigstruct
