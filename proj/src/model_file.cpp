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

#include "sigstruct/model_file.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "sigstruct/error.hpp"

namespace sigstruct {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kRowTolerance = 1e-9;

const char* kKindNames[] = {"bayesnet", "interpreted", "qpn", "game", "msr"};

class Reader {
 public:
  explicit Reader(std::string base_dir) : base_dir_(std::move(base_dir)) {}

  void Error(const std::string& path, const std::string& message) { diags_.push_back({path, message}); }
  bool ok() const { return diags_.empty(); }
  std::size_t mark() const { return diags_.size(); }
  bool clean_since(std::size_t m) const { return diags_.size() == m; }
  const std::vector<Diagnostic>& diagnostics() const { return diags_; }
  const std::string& base_dir() const { return base_dir_; }

  // Reports fields outside `allowed`.
  void Fields(const Json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool known = false;
      for (const char* a : allowed) known = known || it.key() == a;
      if (!known) Error(Join(path, it.key()), "unknown field");
    }
  }

  const Json* Get(const Json& obj, const std::string& path, const char* key, bool required = true) {
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) Error(Join(path, key), "missing field");
      return nullptr;
    }
    return &*it;
  }

  std::optional<std::string> String(const Json* j, const std::string& path) {
    if (j == nullptr) return std::nullopt;
    if (!j->is_string()) {
      Error(path, "expected a string");
      return std::nullopt;
    }
    return j->get<std::string>();
  }

  std::optional<long long> Integer(const Json* j, const std::string& path) {
    if (j == nullptr) return std::nullopt;
    if (!j->is_number_integer()) {
      Error(path, "expected an integer");
      return std::nullopt;
    }
    return j->get<long long>();
  }

  std::optional<bool> Bool(const Json* j, const std::string& path) {
    if (j == nullptr) return std::nullopt;
    if (!j->is_boolean()) {
      Error(path, "expected true or false");
      return std::nullopt;
    }
    return j->get<bool>();
  }

  // Decimal string (numbers are accepted too).
  std::optional<double> Number(const Json* j, const std::string& path) {
    if (j == nullptr) return std::nullopt;
    if (j->is_number()) return j->get<double>();
    if (!j->is_string()) {
      Error(path, "expected a decimal string");
      return std::nullopt;
    }
    const std::string s = j->get<std::string>();
    double x = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(x)) {
      Error(path, "'" + s + "' is not a decimal number");
      return std::nullopt;
    }
    return x;
  }

  const Json* Array(const Json* j, const std::string& path) {
    if (j == nullptr) return nullptr;
    if (!j->is_array()) {
      Error(path, "expected an array");
      return nullptr;
    }
    return j;
  }

  const Json* Object(const Json* j, const std::string& path) {
    if (j == nullptr) return nullptr;
    if (!j->is_object()) {
      Error(path, "expected an object");
      return nullptr;
    }
    return j;
  }

  std::vector<std::string> Strings(const Json* j, const std::string& path) {
    std::vector<std::string> out;
    if (Array(j, path) == nullptr) return out;
    for (std::size_t k = 0; k < j->size(); ++k) {
      if (auto s = String(&(*j)[k], Index(path, k))) out.push_back(*s);
    }
    return out;
  }

  std::vector<double> Numbers(const Json* j, const std::string& path) {
    std::vector<double> out;
    if (Array(j, path) == nullptr) return out;
    for (std::size_t k = 0; k < j->size(); ++k) {
      if (auto x = Number(&(*j)[k], Index(path, k))) out.push_back(*x);
    }
    return out;
  }

  static std::string Join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
  static std::string Index(const std::string& path, std::size_t k) { return path + "[" + std::to_string(k) + "]"; }

 private:
  std::string base_dir_;
  std::vector<Diagnostic> diags_;
};

// ---------------------------------------------------------------------------
// Reading

std::optional<Variable> ReadVariable(Reader& r, const Json& j, const std::string& path) {
  if (r.Object(&j, path) == nullptr) return std::nullopt;
  r.Fields(j, path, {"id", "states", "ordered"});
  auto id = r.String(r.Get(j, path, "id"), Reader::Join(path, "id"));
  auto states = r.Strings(r.Get(j, path, "states"), Reader::Join(path, "states"));
  auto ordered = r.Bool(r.Get(j, path, "ordered", false), Reader::Join(path, "ordered"));
  if (!id) return std::nullopt;
  return Variable{*id, states, ordered.value_or(false)};
}

std::optional<BayesNet> ReadBayesNet(Reader& r, const Json& j, const std::string& path) {
  const std::size_t start = r.mark();
  r.Fields(j, path, {"format_version", "kind", "variables", "edges", "cpts"});
  BayesNet::Builder b;
  std::map<std::string, std::size_t> var_index;
  std::vector<Variable> vars;
  const std::string vpath = Reader::Join(path, "variables");
  if (const Json* vs = r.Array(r.Get(j, path, "variables"), vpath)) {
    for (std::size_t k = 0; k < vs->size(); ++k) {
      if (auto v = ReadVariable(r, (*vs)[k], Reader::Index(vpath, k))) {
        var_index.emplace(v->id, k);
        vars.push_back(*v);
        b.variable(*v);
      }
    }
  }
  const std::string epath = Reader::Join(path, "edges");
  if (const Json* es = r.Array(r.Get(j, path, "edges"), epath)) {
    for (std::size_t k = 0; k < es->size(); ++k) {
      const std::string p = Reader::Index(epath, k);
      auto pair = r.Strings(&(*es)[k], p);
      if (pair.size() != 2) {
        r.Error(p, "edge must be [parent, child]");
        continue;
      }
      for (const auto& end : pair) {
        if (!var_index.count(end)) r.Error(p, "edge references undeclared variable '" + end + "'");
      }
      b.edge(pair[0], pair[1]);
    }
  }
  std::map<std::string, std::size_t> cpt_index;
  std::set<std::string> row_flagged;
  const std::string cpath = Reader::Join(path, "cpts");
  if (const Json* cs = r.Array(r.Get(j, path, "cpts"), cpath)) {
    for (std::size_t k = 0; k < cs->size(); ++k) {
      const std::string p = Reader::Index(cpath, k);
      const Json& c = (*cs)[k];
      if (r.Object(&c, p) == nullptr) continue;
      r.Fields(c, p, {"child", "parents", "deterministic", "rows"});
      Cpt t;
      auto child = r.String(r.Get(c, p, "child"), Reader::Join(p, "child"));
      if (!child) continue;
      t.child = *child;
      cpt_index.emplace(t.child, k);
      if (!var_index.count(t.child)) r.Error(Reader::Join(p, "child"), "undeclared variable '" + t.child + "'");
      t.parents = r.Strings(r.Get(c, p, "parents"), Reader::Join(p, "parents"));
      for (std::size_t q = 0; q < t.parents.size(); ++q) {
        if (!var_index.count(t.parents[q])) {
          r.Error(Reader::Index(Reader::Join(p, "parents"), q), "undeclared variable '" + t.parents[q] + "'");
        }
      }
      t.deterministic = r.Bool(r.Get(c, p, "deterministic", false), Reader::Join(p, "deterministic")).value_or(false);
      const std::string rpath = Reader::Join(p, "rows");
      if (const Json* rows = r.Array(r.Get(c, p, "rows"), rpath)) {
        for (std::size_t q = 0; q < rows->size(); ++q) {
          const std::string rp = Reader::Index(rpath, q);
          std::vector<double> row = r.Numbers(&(*rows)[q], rp);
          double sum = 0.0;
          bool range = true;
          for (double x : row) {
            sum += x;
            range = range && x >= 0.0 && x <= 1.0;
          }
          if (!range) {
            r.Error(rp, "entry outside [0, 1]");
            row_flagged.insert(t.child);
          } else if (std::fabs(sum - 1.0) > kRowTolerance) {
            std::ostringstream msg;
            msg << "row sums to " << sum << ", not 1";
            r.Error(rp, msg.str());
            row_flagged.insert(t.child);
          }
          t.rows.push_back(std::move(row));
        }
      }
      b.cpt(std::move(t));
    }
  }
  if (!r.clean_since(start)) return std::nullopt;
  BayesNet net = b.build();
  for (const auto& v : net.validation().violations) {
    using K = Violation::Kind;
    std::string loc = path.empty() ? "model" : path;
    switch (v.kind) {
      case K::kRowSum:
      case K::kEntryRange:
        if (row_flagged.count(v.subject)) continue;
        [[fallthrough]];
      case K::kArityMismatch:
      case K::kNotDeterministic:
      case K::kParentMismatch:
      case K::kDuplicateCpt:
        if (cpt_index.count(v.subject)) loc = Reader::Index(cpath, cpt_index[v.subject]);
        break;
      case K::kMissingCpt:
      case K::kDuplicateVariable:
      case K::kDuplicateState:
      case K::kEmptyStates:
        if (var_index.count(v.subject)) loc = Reader::Index(vpath, var_index[v.subject]);
        break;
      default:
        loc = epath;
    }
    r.Error(loc, v.message);
  }
  if (!r.clean_since(start)) return std::nullopt;
  return net;
}

std::optional<InterpretedModel> ReadInterpreted(Reader& r, const Json& j) {
  const std::size_t start = r.mark();
  r.Fields(j, "", {"format_version", "kind", "attributes", "prior", "outcome", "outcome_of", "observers", "tie_break"});
  std::vector<Variable> attrs;
  if (const Json* as = r.Array(r.Get(j, "", "attributes"), "attributes")) {
    for (std::size_t k = 0; k < as->size(); ++k) {
      if (auto v = ReadVariable(r, (*as)[k], Reader::Index("attributes", k))) attrs.push_back(*v);
    }
  }
  std::optional<AttributeSpace> space;
  if (const Json* prior = r.Object(r.Get(j, "", "prior"), "prior")) {
    r.Fields(*prior, "prior", {"product", "joint"});
    try {
      if (const Json* product = r.Get(*prior, "prior", "product", false)) {
        std::vector<std::vector<double>> marginals;
        if (r.Array(product, "prior.product")) {
          for (std::size_t k = 0; k < product->size(); ++k) {
            marginals.push_back(r.Numbers(&(*product)[k], Reader::Index("prior.product", k)));
          }
        }
        if (r.clean_since(start)) space = AttributeSpace::Product(attrs, marginals);
      } else if (const Json* joint = r.Get(*prior, "prior", "joint", false)) {
        std::vector<double> table = r.Numbers(joint, "prior.joint");
        if (r.clean_since(start)) space = AttributeSpace::Joint(attrs, table);
      } else {
        r.Error("prior", "needs 'product' or 'joint'");
      }
    } catch (const Error& e) {
      r.Error("prior", e.what());
    }
  }
  std::optional<Variable> outcome;
  if (const Json* o = r.Get(j, "", "outcome")) outcome = ReadVariable(r, *o, "outcome");
  std::vector<std::string> labels = r.Strings(r.Get(j, "", "outcome_of"), "outcome_of");
  std::vector<AgentView> agents;
  if (const Json* os = r.Array(r.Get(j, "", "observers"), "observers")) {
    for (std::size_t k = 0; k < os->size(); ++k) {
      const std::string p = Reader::Index("observers", k);
      const Json& o = (*os)[k];
      if (!r.Object(&o, p)) continue;
      r.Fields(o, p, {"id", "observes"});
      AgentView a;
      a.id = r.String(r.Get(o, p, "id"), Reader::Join(p, "id")).value_or("");
      for (const auto& name : r.Strings(r.Get(o, p, "observes"), Reader::Join(p, "observes"))) {
        auto it = std::find_if(attrs.begin(), attrs.end(), [&](const Variable& v) { return v.id == name; });
        if (it == attrs.end()) {
          r.Error(Reader::Join(p, "observes"), "undeclared attribute '" + name + "'");
        } else {
          a.observed.push_back(static_cast<std::size_t>(it - attrs.begin()));
        }
      }
      agents.push_back(std::move(a));
    }
  }
  TieBreak tie = TieBreak::kLowestOutcome;
  if (auto t = r.String(r.Get(j, "", "tie_break", false), "tie_break")) {
    if (*t == "highest") {
      tie = TieBreak::kHighestOutcome;
    } else if (*t != "lowest") {
      r.Error("tie_break", "expected 'lowest' or 'highest'");
    }
  }
  if (!r.clean_since(start) || !space || !outcome) return std::nullopt;
  InterpretedModel m{*space, *outcome, {}, agents, tie};
  if (labels.size() != space->size()) {
    r.Error("outcome_of", "needs " + std::to_string(space->size()) + " entries, one per joint attribute state");
    return std::nullopt;
  }
  for (std::size_t k = 0; k < labels.size(); ++k) {
    auto s = outcome->state_index(labels[k]);
    if (!s) {
      r.Error(Reader::Index("outcome_of", k), "'" + labels[k] + "' is not an outcome state");
      continue;
    }
    m.outcome_of.push_back(*s);
  }
  if (!r.clean_since(start)) return std::nullopt;
  try {
    m.check();
  } catch (const Error& e) {
    r.Error("model", e.what());
    return std::nullopt;
  }
  return m;
}

std::optional<Qpn> ReadQpn(Reader& r, const Json& j) {
  const std::size_t start = r.mark();
  r.Fields(j, "", {"format_version", "kind", "nodes", "edges", "synergies"});
  std::vector<QpnNode> nodes;
  if (const Json* ns = r.Array(r.Get(j, "", "nodes"), "nodes")) {
    for (std::size_t k = 0; k < ns->size(); ++k) {
      const std::string p = Reader::Index("nodes", k);
      const Json& n = (*ns)[k];
      if (!r.Object(&n, p)) continue;
      r.Fields(n, p, {"id", "kind"});
      QpnNode node;
      node.id = r.String(r.Get(n, p, "id"), Reader::Join(p, "id")).value_or("");
      if (auto kind = r.String(r.Get(n, p, "kind"), Reader::Join(p, "kind"))) {
        if (auto parsed = ParseNodeKind(*kind)) {
          node.kind = *parsed;
        } else {
          r.Error(Reader::Join(p, "kind"), "expected chance, decision or value");
        }
      }
      nodes.push_back(node);
    }
  }
  auto read_sign = [&](const Json& obj, const std::string& p) {
    Sign s = Sign::kZero;
    if (auto text = r.String(r.Get(obj, p, "sign"), Reader::Join(p, "sign"))) {
      if (auto parsed = ParseSign(*text)) {
        s = *parsed;
      } else {
        r.Error(Reader::Join(p, "sign"), "expected +, -, 0 or ?");
      }
    }
    return s;
  };
  std::vector<QpnEdge> edges;
  if (const Json* es = r.Array(r.Get(j, "", "edges"), "edges")) {
    for (std::size_t k = 0; k < es->size(); ++k) {
      const std::string p = Reader::Index("edges", k);
      const Json& e = (*es)[k];
      if (!r.Object(&e, p)) continue;
      r.Fields(e, p, {"from", "to", "sign", "kind"});
      QpnEdge edge;
      edge.from = r.String(r.Get(e, p, "from"), Reader::Join(p, "from")).value_or("");
      edge.to = r.String(r.Get(e, p, "to"), Reader::Join(p, "to")).value_or("");
      const std::string kind = r.String(r.Get(e, p, "kind", false), Reader::Join(p, "kind")).value_or("influence");
      if (kind == "information") {
        edge.kind = EdgeKind::kInformation;
        if (e.contains("sign")) r.Error(Reader::Join(p, "sign"), "information edges carry no sign");
      } else if (kind == "influence") {
        edge.sign = read_sign(e, p);
      } else {
        r.Error(Reader::Join(p, "kind"), "expected influence or information");
      }
      edges.push_back(edge);
    }
  }
  std::vector<SynergyArc> syn;
  if (const Json* ss = r.Array(r.Get(j, "", "synergies", false), "synergies")) {
    for (std::size_t k = 0; k < ss->size(); ++k) {
      const std::string p = Reader::Index("synergies", k);
      const Json& s = (*ss)[k];
      if (!r.Object(&s, p)) continue;
      r.Fields(s, p, {"a", "b", "target", "sign"});
      SynergyArc arc;
      arc.a = r.String(r.Get(s, p, "a"), Reader::Join(p, "a")).value_or("");
      arc.b = r.String(r.Get(s, p, "b"), Reader::Join(p, "b")).value_or("");
      arc.target = r.String(r.Get(s, p, "target"), Reader::Join(p, "target")).value_or("");
      arc.sign = read_sign(s, p);
      syn.push_back(arc);
    }
  }
  if (!r.clean_since(start)) return std::nullopt;
  Qpn q(std::move(nodes), std::move(edges), std::move(syn));
  for (const auto& problem : q.problems()) r.Error("model", problem);
  if (!r.clean_since(start)) return std::nullopt;
  return q;
}

std::optional<WorldSpec> ReadWorld(Reader& r, const Json* j, const std::string& path) {
  if (!r.Object(j, path)) return std::nullopt;
  const std::size_t start = r.mark();
  WorldSpec w;
  if (j->contains("canonical")) {
    r.Fields(*j, path, {"canonical", "agents", "accuracy", "coupling"});
    auto name = r.String(r.Get(*j, path, "canonical"), Reader::Join(path, "canonical"));
    CanonicalModel m;
    if (name) {
      if (auto id = ParseCanonicalId(*name)) {
        m.id = *id;
      } else {
        r.Error(Reader::Join(path, "canonical"), "unknown canonical model '" + *name + "'");
      }
    }
    if (auto a = r.Integer(r.Get(*j, path, "agents", false), Reader::Join(path, "agents"))) m.params.agents = static_cast<int>(*a);
    if (auto a = r.Number(r.Get(*j, path, "accuracy", false), Reader::Join(path, "accuracy"))) m.params.accuracy = *a;
    if (auto c = r.Number(r.Get(*j, path, "coupling", false), Reader::Join(path, "coupling"))) m.params.coupling = *c;
    if (!r.clean_since(start)) return std::nullopt;
    try {
      w.net = build_canonical(m);
    } catch (const Error& e) {
      r.Error(path, e.what());
      return std::nullopt;
    }
    w.canonical = m;
    return w;
  }
  if (j->contains("file")) {
    r.Fields(*j, path, {"file"});
    auto file = r.String(r.Get(*j, path, "file"), Reader::Join(path, "file"));
    if (!file) return std::nullopt;
    const std::filesystem::path full = std::filesystem::path(r.base_dir()) / *file;
    if (!std::filesystem::is_regular_file(full)) {
      r.Error(Reader::Join(path, "file"), "cannot open '" + full.string() + "'");
      return std::nullopt;
    }
    try {
      ModelFile inner = load_model(full.string());
      if (inner.kind() != ModelKind::kBayesNet) {
        r.Error(Reader::Join(path, "file"), "world file must be a bayesnet");
        return std::nullopt;
      }
      w.net = std::get<BayesNet>(inner.body);
    } catch (const ModelError& e) {
      for (const auto& d : e.diagnostics()) r.Error(Reader::Join(path, "file") + " -> " + d.location, d.message);
      return std::nullopt;
    }
    w.file = *file;
    return w;
  }
  if (j->contains("bayesnet")) {
    r.Fields(*j, path, {"bayesnet"});
    const std::string p = Reader::Join(path, "bayesnet");
    const Json* body = r.Object(&(*j)["bayesnet"], p);
    if (!body) return std::nullopt;
    auto net = ReadBayesNet(r, *body, p);
    if (!net) return std::nullopt;
    w.net = *net;
    return w;
  }
  r.Error(path, "needs 'canonical', 'file' or 'bayesnet'");
  return std::nullopt;
}

std::optional<GameSpec> ReadGame(Reader& r, const Json& j) {
  const std::size_t start = r.mark();
  r.Fields(j, "", {"format_version", "kind", "world", "payoff", "signals", "values", "grids"});
  GameSpec g;
  auto world = ReadWorld(r, r.Get(j, "", "world"), "world");
  if (auto payoff = r.String(r.Get(j, "", "payoff"), "payoff")) {
    if (auto k = ParseAuctionKind(*payoff)) {
      g.payoff = *k;
    } else {
      r.Error("payoff", "expected FPSB or SPSB");
    }
  }
  g.signals = r.Strings(r.Get(j, "", "signals", false), "signals");
  g.values = r.Strings(r.Get(j, "", "values", false), "values");
  if (const Json* gs = r.Array(r.Get(j, "", "grids"), "grids")) {
    for (std::size_t k = 0; k < gs->size(); ++k) g.grids.push_back(r.Numbers(&(*gs)[k], Reader::Index("grids", k)));
  }
  if (!r.clean_since(start) || !world) return std::nullopt;
  g.world = *world;
  try {
    BayesianGame game = g.game();
    g.signals = game.signals;
    g.values = game.values;
  } catch (const Error& e) {
    r.Error("model", e.what());
    return std::nullopt;
  }
  return g;
}

std::optional<MsrSpec> ReadMsr(Reader& r, const Json& j) {
  const std::size_t start = r.mark();
  r.Fields(j, "", {"format_version", "kind", "world", "outcome", "signals", "stages", "grid_points", "probability_floor"});
  MsrSpec m;
  auto world = ReadWorld(r, r.Get(j, "", "world"), "world");
  if (auto o = r.String(r.Get(j, "", "outcome", false), "outcome")) m.game.outcome = *o;
  if (j.contains("signals")) {
    auto s = r.Strings(&j["signals"], "signals");
    if (s.size() == 2) {
      m.game.signals = {s[0], s[1]};
    } else {
      r.Error("signals", "expected two signal variables");
    }
  }
  if (const Json* st = r.Array(r.Get(j, "", "stages", false), "stages")) {
    m.game.stages.clear();
    for (std::size_t k = 0; k < st->size(); ++k) {
      auto a = r.Integer(&(*st)[k], Reader::Index("stages", k));
      if (!a) continue;
      if (*a != 1 && *a != 2) {
        r.Error(Reader::Index("stages", k), "agents are numbered 1 and 2");
        continue;
      }
      m.game.stages.push_back(static_cast<std::size_t>(*a - 1));
    }
  }
  if (auto g = r.Integer(r.Get(j, "", "grid_points", false), "grid_points")) {
    if (*g < 0) {
      r.Error("grid_points", "must be nonnegative");
    } else {
      m.game.grid_points = static_cast<std::size_t>(*g);
    }
  }
  if (auto f = r.Number(r.Get(j, "", "probability_floor", false), "probability_floor")) {
    if (!(*f > 0.0 && *f < 1.0)) {
      r.Error("probability_floor", "must lie in (0, 1)");
    } else {
      m.game.probability_floor = *f;
    }
  }
  if (!r.clean_since(start) || !world) return std::nullopt;
  m.world = *world;
  m.game.world = world->net;
  for (const auto& id : {m.game.outcome, m.game.signals[0], m.game.signals[1]}) {
    if (!m.game.world.contains(id)) r.Error("world", "no variable '" + id + "'");
  }
  if (!r.clean_since(start)) return std::nullopt;
  return m;
}

std::pair<int, int> LineColumn(std::string_view text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// ---------------------------------------------------------------------------
// Writing

Json WriteVariable(const Variable& v) {
  Json j;
  j["id"] = v.id;
  j["states"] = v.states;
  j["ordered"] = v.ordered;
  return j;
}

Json WriteRow(const std::vector<double>& row) {
  Json j = Json::array();
  for (double x : row) j.push_back(FormatProbability(x));
  return j;
}

void WriteBayesNet(Json& j, const BayesNet& net) {
  Json vars = Json::array();
  for (const auto& v : net.variables()) vars.push_back(WriteVariable(v));
  j["variables"] = vars;
  Json edges = Json::array();
  for (const auto& [p, c] : net.edges()) edges.push_back(Json::array({net.variable(p).id, net.variable(c).id}));
  j["edges"] = edges;
  Json cpts = Json::array();
  for (const auto& t : net.cpts()) {
    Json c;
    c["child"] = t.child;
    c["parents"] = t.parents;
    c["deterministic"] = t.deterministic;
    Json rows = Json::array();
    for (const auto& row : t.rows) rows.push_back(WriteRow(row));
    c["rows"] = rows;
    cpts.push_back(c);
  }
  j["cpts"] = cpts;
}

Json WriteWorld(const WorldSpec& w) {
  Json j;
  if (w.canonical) {
    j["canonical"] = std::string(CanonicalIdName(w.canonical->id));
    j["agents"] = w.canonical->params.agents;
    j["accuracy"] = FormatProbability(w.canonical->params.accuracy);
    j["coupling"] = FormatProbability(w.canonical->params.coupling);
  } else if (w.file) {
    j["file"] = *w.file;
  } else {
    Json body;
    WriteBayesNet(body, w.net);
    j["bayesnet"] = body;
  }
  return j;
}

}  // namespace

const char* ModelKindName(ModelKind k) { return kKindNames[static_cast<int>(k)]; }

BayesianGame GameSpec::game() const { return make_auction(payoff, world.net, grids, signals, values); }

std::optional<BayesNet> ModelFile::net() const {
  switch (kind()) {
    case ModelKind::kBayesNet: return std::get<BayesNet>(body);
    case ModelKind::kInterpreted: return to_bayes_net(std::get<InterpretedModel>(body), true);
    case ModelKind::kQpn: return std::nullopt;
    case ModelKind::kGame: return std::get<GameSpec>(body).world.net;
    case ModelKind::kMsr: return std::get<MsrSpec>(body).world.net;
  }
  return std::nullopt;
}

std::string CanonicalFixtureName(CanonicalId id) {
  std::string out;
  for (char c : CanonicalIdName(id)) {
    if (std::isupper(static_cast<unsigned char>(c))) {
      if (!out.empty()) out += '_';
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    out += c;
  }
  return out + ".json";
}

std::string FormatProbability(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

ModelFile parse_model(std::string_view text, const std::string& base_dir) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    auto [line, col] = LineColumn(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ModelError(std::vector<Diagnostic>{{"line " + std::to_string(line) + ", column " + std::to_string(col), "malformed JSON"}});
  }
  Reader r(base_dir);
  if (!j.is_object()) throw ModelError(std::vector<Diagnostic>{{"", "model file must be a JSON object"}});
  auto version = r.Integer(r.Get(j, "", "format_version"), "format_version");
  if (version && *version != kFormatVersion) r.Error("format_version", "unsupported version " + std::to_string(*version));
  auto kind = r.String(r.Get(j, "", "kind"), "kind");
  if (!r.ok()) throw ModelError(r.diagnostics());
  std::optional<ModelFile> out;
  if (*kind == "bayesnet") {
    if (auto n = ReadBayesNet(r, j, "")) out = ModelFile{*n};
  } else if (*kind == "interpreted") {
    if (auto m = ReadInterpreted(r, j)) out = ModelFile{*m};
  } else if (*kind == "qpn") {
    if (auto q = ReadQpn(r, j)) out = ModelFile{*q};
  } else if (*kind == "game") {
    if (auto g = ReadGame(r, j)) out = ModelFile{*g};
  } else if (*kind == "msr") {
    if (auto m = ReadMsr(r, j)) out = ModelFile{*m};
  } else {
    r.Error("kind", "unknown kind '" + *kind + "'");
  }
  if (!r.ok() || !out) {
    if (r.ok()) r.Error("", "model could not be read");
    throw ModelError(r.diagnostics());
  }
  return *out;
}

ModelFile load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError(std::vector<Diagnostic>{{path, "cannot open file"}});
  std::ostringstream text;
  text << in.rdbuf();
  std::string dir = std::filesystem::path(path).parent_path().string();
  return parse_model(text.str(), dir.empty() ? "." : dir);
}

std::string serialize_model(const ModelFile& model) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["kind"] = ModelKindName(model.kind());
  switch (model.kind()) {
    case ModelKind::kBayesNet:
      WriteBayesNet(j, std::get<BayesNet>(model.body));
      break;
    case ModelKind::kInterpreted: {
      const auto& m = std::get<InterpretedModel>(model.body);
      Json attrs = Json::array();
      for (const auto& a : m.space.attributes()) attrs.push_back(WriteVariable(a));
      j["attributes"] = attrs;
      Json prior;
      if (!m.space.marginals().empty()) {
        Json product = Json::array();
        for (const auto& row : m.space.marginals()) product.push_back(WriteRow(row));
        prior["product"] = product;
      } else {
        prior["joint"] = WriteRow(m.space.prior());
      }
      j["prior"] = prior;
      j["outcome"] = WriteVariable(m.outcome);
      Json labels = Json::array();
      for (std::size_t s : m.outcome_of) labels.push_back(m.outcome.states[s]);
      j["outcome_of"] = labels;
      Json obs = Json::array();
      for (const auto& a : m.agents) {
        Json o;
        o["id"] = a.id;
        Json names = Json::array();
        for (std::size_t k : a.observed) names.push_back(m.space.attributes()[k].id);
        o["observes"] = names;
        obs.push_back(o);
      }
      j["observers"] = obs;
      j["tie_break"] = m.tie_break == TieBreak::kLowestOutcome ? "lowest" : "highest";
      break;
    }
    case ModelKind::kQpn: {
      const auto& q = std::get<Qpn>(model.body);
      Json nodes = Json::array();
      for (const auto& n : q.nodes()) {
        Json o;
        o["id"] = n.id;
        o["kind"] = NodeKindName(n.kind);
        nodes.push_back(o);
      }
      j["nodes"] = nodes;
      Json edges = Json::array();
      for (const auto& e : q.edges()) {
        Json o;
        o["from"] = e.from;
        o["to"] = e.to;
        if (e.kind == EdgeKind::kInformation) {
          o["kind"] = "information";
        } else {
          o["sign"] = SignSymbol(e.sign);
        }
        edges.push_back(o);
      }
      j["edges"] = edges;
      Json syn = Json::array();
      for (const auto& s : q.synergies()) {
        Json o;
        o["a"] = s.a;
        o["b"] = s.b;
        o["target"] = s.target;
        o["sign"] = SignSymbol(s.sign);
        syn.push_back(o);
      }
      j["synergies"] = syn;
      break;
    }
    case ModelKind::kGame: {
      const auto& g = std::get<GameSpec>(model.body);
      j["world"] = WriteWorld(g.world);
      j["payoff"] = AuctionKindName(g.payoff);
      j["signals"] = g.signals;
      j["values"] = g.values;
      Json grids = Json::array();
      for (const auto& grid : g.grids) grids.push_back(WriteRow(grid));
      j["grids"] = grids;
      break;
    }
    case ModelKind::kMsr: {
      const auto& m = std::get<MsrSpec>(model.body);
      j["world"] = WriteWorld(m.world);
      j["outcome"] = m.game.outcome;
      j["signals"] = Json::array({m.game.signals[0], m.game.signals[1]});
      Json stages = Json::array();
      for (std::size_t s : m.game.stages) stages.push_back(s + 1);
      j["stages"] = stages;
      j["grid_points"] = m.game.grid_points;
      j["probability_floor"] = FormatProbability(m.game.probability_floor);
      break;
    }
  }
  return j.dump(2) + "\n";
}

void save_model(const ModelFile& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << serialize_model(model);
}

bool structurally_equal(const BayesNet& a, const BayesNet& b) {
  if (a.size() != b.size() || a.edges() != b.edges()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const Variable &x = a.variable(k), &y = b.variable(k);
    if (x.id != y.id || x.states != y.states || x.ordered != y.ordered) return false;
    const Cpt *p = a.cpt_for(k), *q = b.cpt_for(k);
    if ((p == nullptr) != (q == nullptr)) return false;
    if (p && (p->parents != q->parents || p->rows != q->rows || p->deterministic != q->deterministic)) return false;
  }
  return true;
}

}  // namespace sigstruct
