#include "grefute/semantics.hpp"

#include <algorithm>
#include <set>

#include "grefute/error.hpp"

namespace grefute {

Relation::Relation(std::size_t universe, std::size_t arity) : n_(universe), arity_(arity) {
  if (universe == 0) throw EvaluationError("empty universe");
  std::size_t cap = 1;
  for (std::size_t i = 0; i < arity; ++i) {
    if (cap > (std::size_t{1} << 26) / universe) throw BudgetExceeded("relation too large to tabulate");
    cap *= universe;
  }
  bits_.assign(cap, false);
}

std::size_t Relation::index(const Tuple& t) const {
  std::size_t i = 0;
  for (int x : t) i = i * n_ + static_cast<std::size_t>(x);
  return i;
}

Tuple Relation::tuple_at(std::size_t i) const {
  Tuple t(arity_);
  for (std::size_t k = arity_; k-- > 0;) {
    t[k] = static_cast<int>(i % n_);
    i /= n_;
  }
  return t;
}

std::size_t Relation::count() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true)); }

Relation Relation::complement() const {
  Relation r = *this;
  r.bits_.flip();
  return r;
}

void Relation::unite(const Relation& o) {
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (o.bits_[i]) bits_[i] = true;
}

std::vector<Tuple> Relation::tuples() const {
  std::vector<Tuple> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(tuple_at(i));
  return out;
}

int FiniteModel::element(const std::string& label) const {
  auto it = std::find(universe.begin(), universe.end(), label);
  return it == universe.end() ? -1 : static_cast<int>(it - universe.begin());
}

void FiniteModel::check() const {
  if (universe.empty()) throw EvaluationError("models need a nonempty universe");
  for (const auto& [p, r] : interp) {
    if (p.is_equality()) throw EvaluationError("equality has a fixed interpretation");
    if (r.arity() != p.arity || r.universe() != universe.size())
      throw EvaluationError("interpretation of " + pred_label(p) + " has the wrong shape");
  }
}

std::string pred_label(const PredSym& p) { return p.name + "/" + std::to_string(p.arity); }

Evaluator::Evaluator(const FiniteModel& m) : m_(m) {
  if (m_.universe.empty()) throw EvaluationError("models need a nonempty universe");
}

const Relation& Evaluator::eval(const Expression& e) {
  auto it = memo_.find(e.identity());
  if (it != memo_.end()) return it->second.second;
  Relation r = eval_uncached(e);
  return memo_.emplace(e.identity(), std::make_pair(e, std::move(r))).first->second.second;
}

Relation Evaluator::eval_uncached(const Expression& e) {
  const std::size_t n = m_.size();
  switch (e.kind()) {
    case Expression::Kind::Pred: {
      const PredSym& p = e.pred();
      if (p.is_equality()) {
        Relation r(n, 2);
        for (std::size_t a = 0; a < n; ++a) r.insert({static_cast<int>(a), static_cast<int>(a)});
        return r;
      }
      auto it = m_.interp.find(p);
      if (it == m_.interp.end()) throw EvaluationError("uninterpreted predicate " + pred_label(p));
      return it->second;
    }
    case Expression::Kind::Frm:
      return eval_formula(e.formula());
    case Expression::Kind::Sl:
      return eval(e.slice());
    case Expression::Kind::Gr:
      return eval(e.graph());
    case Expression::Kind::Cmpl:
      return eval(e.operand()).complement();
  }
  throw EvaluationError("unknown expression");
}

Relation Evaluator::eval(const Graph& g) {
  Relation r(m_.size(), g.arity());
  for (const Slice& s : g.slices()) r.unite(eval(s));
  return r;
}

Relation Evaluator::eval_formula(const Formula& f) {
  NameList args = f.args();
  Relation r(m_.size(), args.size());
  for (std::size_t i = 0; i < r.capacity(); ++i) {
    Tuple t = r.tuple_at(i);
    Assignment g;
    bool ok = true;
    for (std::size_t k = 0; k < args.size() && ok; ++k) {
      auto [it, fresh] = g.emplace(args[k], t[k]);
      if (!fresh && it->second != t[k]) ok = false;
    }
    if (ok && holds(f, g)) r.set_index(i, true);
  }
  return r;
}

namespace {

using VarEnv = std::vector<std::pair<const std::string*, int>>;

int lookup(const Term& t, const VarEnv& vars, const Assignment& g) {
  if (!t.is_name()) {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
      if (*it->first == t.text) return it->second;
    throw EvaluationError("unbound variable " + t.text);
  }
  auto it = g.find(Name(t.text));
  if (it == g.end()) throw EvaluationError("assignment misses name " + t.text);
  return it->second;
}

bool holds_env(const Formula& f, VarEnv& vars, const Assignment& g, const FiniteModel& m) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Atom: {
      Tuple t;
      for (const Term& x : f.terms()) t.push_back(lookup(x, vars, g));
      if (f.pred().is_equality()) return t[0] == t[1];
      auto it = m.interp.find(f.pred());
      if (it == m.interp.end()) throw EvaluationError("uninterpreted predicate " + pred_label(f.pred()));
      return it->second.contains(t);
    }
    case K::False:
      return false;
    case K::Not:
      return !holds_env(f.operand(), vars, g, m);
    case K::And:
      return holds_env(f.lhs(), vars, g, m) && holds_env(f.rhs(), vars, g, m);
    case K::Or:
      return holds_env(f.lhs(), vars, g, m) || holds_env(f.rhs(), vars, g, m);
    case K::Implies:
      return !holds_env(f.lhs(), vars, g, m) || holds_env(f.rhs(), vars, g, m);
    case K::Exists:
    case K::Forall: {
      bool ex = f.kind() == K::Exists;
      vars.emplace_back(&f.var(), 0);
      bool result = !ex;
      for (std::size_t a = 0; a < m.size(); ++a) {
        vars.back().second = static_cast<int>(a);
        bool b = holds_env(f.body(), vars, g, m);
        if (ex && b) {
          result = true;
          break;
        }
        if (!ex && !b) {
          result = false;
          break;
        }
      }
      vars.pop_back();
      return result;
    }
  }
  return false;
}

}  // namespace

bool Evaluator::holds(const Formula& f, const Assignment& g) {
  VarEnv vars;
  return holds_env(f, vars, g, m_);
}

bool Evaluator::satisfies(const Assignment& g, const Arc& a) {
  Tuple t;
  for (const Name& x : a.args) {
    auto it = g.find(x);
    if (it == g.end()) throw EvaluationError("assignment misses name " + x.text());
    t.push_back(it->second);
  }
  return eval(a.expr).contains(t);
}

namespace {

// Backtracking plan for "does some assignment of the free nodes satisfy every arc".
struct Plan {
  std::vector<std::size_t> order;                // free node indices, search order
  std::vector<std::vector<std::size_t>> ready;   // arcs completed at each depth
  std::vector<std::size_t> pre;                  // arcs decided by the fixed prefix
  std::vector<std::vector<std::size_t>> arg_idx;
  std::vector<const Relation*> rels;
};

Plan make_plan(const Draft& d, const std::vector<bool>& fixed, std::vector<const Relation*> rels) {
  Plan p;
  p.rels = std::move(rels);
  const NameList& nodes = d.nodes();
  std::vector<std::size_t> degree(nodes.size(), 0);
  for (const Arc& a : d.arcs()) {
    std::vector<std::size_t> idx;
    for (const Name& x : a.args) {
      std::size_t i = static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), x) - nodes.begin());
      idx.push_back(i);
      ++degree[i];
    }
    p.arg_idx.push_back(std::move(idx));
  }
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (!fixed[i]) p.order.push_back(i);
  std::stable_sort(p.order.begin(), p.order.end(),
                   [&](std::size_t a, std::size_t b) { return degree[a] > degree[b]; });
  std::vector<std::size_t> pos(nodes.size(), 0);
  for (std::size_t k = 0; k < p.order.size(); ++k) pos[p.order[k]] = k + 1;
  p.ready.assign(p.order.size(), {});
  for (std::size_t ai = 0; ai < p.arg_idx.size(); ++ai) {
    std::size_t last = 0;
    for (std::size_t i : p.arg_idx[ai]) last = std::max(last, pos[i]);
    if (last == 0)
      p.pre.push_back(ai);
    else
      p.ready[last - 1].push_back(ai);
  }
  return p;
}

bool arc_ok(const Plan& p, std::size_t ai, const std::vector<int>& values) {
  Tuple t;
  t.reserve(p.arg_idx[ai].size());
  for (std::size_t i : p.arg_idx[ai]) t.push_back(values[i]);
  return p.rels[ai]->contains(t);
}

bool extend(const Plan& p, std::vector<int>& values, std::size_t depth, std::size_t n) {
  if (depth == p.order.size()) return true;
  std::size_t v = p.order[depth];
  for (std::size_t a = 0; a < n; ++a) {
    values[v] = static_cast<int>(a);
    bool ok = true;
    for (std::size_t ai : p.ready[depth])
      if (!arc_ok(p, ai, values)) {
        ok = false;
        break;
      }
    if (ok && extend(p, values, depth + 1, n)) return true;
  }
  values[v] = -1;
  return false;
}

std::size_t node_index(const NameList& nodes, const Name& x) {
  return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), x) - nodes.begin());
}

}  // namespace

Relation Evaluator::eval(const Slice& s) {
  const NameList& nodes = s.nodes();
  std::vector<const Relation*> rels;
  for (const Arc& a : s.arcs()) rels.push_back(&eval(a.expr));
  std::vector<bool> fixed(nodes.size(), false);
  std::vector<std::size_t> dist_idx;
  for (const Name& d : s.dist()) {
    dist_idx.push_back(node_index(nodes, d));
    fixed[dist_idx.back()] = true;
  }
  Plan p = make_plan(s.under(), fixed, std::move(rels));
  Relation out(m_.size(), s.arity());
  std::vector<int> values(nodes.size(), -1);
  for (std::size_t i = 0; i < out.capacity(); ++i) {
    Tuple t = out.tuple_at(i);
    std::fill(values.begin(), values.end(), -1);
    bool ok = true;
    for (std::size_t k = 0; k < t.size() && ok; ++k) {
      int& slot = values[dist_idx[k]];
      if (slot >= 0 && slot != t[k]) ok = false;
      slot = t[k];
    }
    for (std::size_t k = 0; ok && k < p.pre.size(); ++k) ok = arc_ok(p, p.pre[k], values);
    if (ok && extend(p, values, 0, m_.size())) out.set_index(i, true);
  }
  return out;
}

bool Evaluator::satisfiable(const Draft& d, const Assignment& g) {
  const NameList& nodes = d.nodes();
  std::vector<const Relation*> rels;
  for (const Arc& a : d.arcs()) rels.push_back(&eval(a.expr));
  std::vector<bool> fixed(nodes.size(), false);
  std::vector<int> values(nodes.size(), -1);
  for (const auto& [x, v] : g) {
    if (!d.has_node(x)) continue;
    std::size_t i = node_index(nodes, x);
    fixed[i] = true;
    values[i] = v;
  }
  Plan p = make_plan(d, fixed, std::move(rels));
  for (std::size_t ai : p.pre)
    if (!arc_ok(p, ai, values)) return false;
  return extend(p, values, 0, m_.size());
}

Relation eval_expression(const Expression& e, const FiniteModel& m) {
  Evaluator ev(m);
  return ev.eval(e);
}

bool satisfies_arc(const Assignment& g, const Arc& a, const FiniteModel& m) {
  Evaluator ev(m);
  return ev.satisfies(g, a);
}

bool eval_formula(const Formula& f, const FiniteModel& m, const Assignment& g) {
  VarEnv vars;
  return holds_env(f, vars, g, m);
}

namespace {

void collect(const Expression& e, std::set<PredSym>& out);

void collect(const Slice& s, std::set<PredSym>& out) {
  for (const Arc& a : s.arcs()) collect(a.expr, out);
}

void collect(const Expression& e, std::set<PredSym>& out) {
  switch (e.kind()) {
    case Expression::Kind::Pred:
      if (!e.pred().is_equality()) out.insert(e.pred());
      return;
    case Expression::Kind::Frm:
      for (const PredSym& p : e.formula().predicates())
        if (!p.is_equality()) out.insert(p);
      return;
    case Expression::Kind::Sl:
      collect(e.slice(), out);
      return;
    case Expression::Kind::Gr:
      for (const Slice& s : e.graph().slices()) collect(s, out);
      return;
    case Expression::Kind::Cmpl:
      collect(e.operand(), out);
      return;
  }
}

}  // namespace

std::vector<PredSym> predicates_of(const Expression& e) {
  std::set<PredSym> s;
  collect(e, s);
  return {s.begin(), s.end()};
}

std::vector<PredSym> predicates_of(const Slice& sl) {
  std::set<PredSym> s;
  collect(sl, s);
  return {s.begin(), s.end()};
}

std::vector<PredSym> predicates_of(const Graph& g) {
  std::set<PredSym> s;
  for (const Slice& sl : g.slices()) collect(sl, s);
  return {s.begin(), s.end()};
}

EntailmentResult entails_bounded(const std::vector<Formula>& premises, const Formula& conclusion,
                                 std::size_t max_universe, std::uint64_t max_checks) {
  if (max_universe == 0) throw EvaluationError("bound must be at least 1");
  std::set<PredSym> preds;
  std::set<Name> names;
  auto absorb = [&](const Formula& f) {
    for (const PredSym& p : f.predicates())
      if (!p.is_equality()) preds.insert(p);
    for (const Name& n : f.free_names()) names.insert(n);
  };
  for (const Formula& f : premises) absorb(f);
  absorb(conclusion);
  std::vector<PredSym> ps(preds.begin(), preds.end());
  NameList ns(names.begin(), names.end());

  // Cost estimate before enumerating anything.
  long double work = 0;
  for (std::size_t n = 1; n <= max_universe; ++n) {
    long double bits = 0;
    for (const PredSym& p : ps) {
      long double c = 1;
      for (std::size_t i = 0; i < p.arity; ++i) c *= static_cast<long double>(n);
      bits += c;
    }
    long double models = bits > 62 ? 1e30L : static_cast<long double>(std::uint64_t{1} << static_cast<int>(bits));
    long double assigns = 1;
    for (std::size_t i = 0; i < ns.size(); ++i) assigns *= static_cast<long double>(n);
    work += models * assigns;
  }
  if (work > static_cast<long double>(max_checks))
    throw BudgetExceeded("bounded entailment check needs about " +
                         std::to_string(static_cast<double>(work)) + " model checks");

  EntailmentResult res;
  for (std::size_t n = 1; n <= max_universe; ++n) {
    bool found = false;
    for_each_model(ps, n, [&](const FiniteModel& m) {
      std::vector<int> vals(ns.size(), 0);
      for (;;) {
        Assignment g;
        for (std::size_t i = 0; i < ns.size(); ++i) g[ns[i]] = vals[i];
        bool prem = true;
        for (const Formula& f : premises)
          if (!eval_formula(f, m, g)) {
            prem = false;
            break;
          }
        if (prem && !eval_formula(conclusion, m, g)) {
          res.model = m;
          res.assignment = g;
          found = true;
          return false;
        }
        std::size_t i = 0;
        while (i < vals.size() && vals[i] == static_cast<int>(n) - 1) vals[i++] = 0;
        if (i == vals.size()) break;
        ++vals[i];
      }
      return true;
    });
    if (found) {
      res.holds = false;
      res.bound = n;
      return res;
    }
  }
  res.holds = true;
  res.bound = max_universe;
  return res;
}

Json to_json(const FiniteModel& m) {
  Json interp = Json::object();
  for (const auto& [p, r] : m.interp) {
    Json tuples = Json::array();
    for (const Tuple& t : r.tuples()) {
      Json row = Json::array();
      for (int x : t) row.push_back(m.universe[x]);
      tuples.push_back(row);
    }
    interp[pred_label(p)] = tuples;
  }
  return Json{{"universe", m.universe}, {"interp", interp}};
}

FiniteModel model_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("universe") || !j.at("universe").is_array())
    throw EvaluationError("model needs a \"universe\" array");
  FiniteModel m;
  for (const Json& x : j.at("universe")) {
    if (!x.is_string()) throw EvaluationError("universe elements must be strings");
    m.universe.push_back(x.get<std::string>());
  }
  if (m.universe.empty()) throw EvaluationError("models need a nonempty universe");
  if (j.contains("interp")) {
    const Json& in = j.at("interp");
    if (!in.is_object()) throw EvaluationError("\"interp\" must be an object");
    for (const auto& [label, tuples] : in.items()) {
      auto slash = label.rfind('/');
      if (slash == std::string::npos) throw EvaluationError("predicate key must look like name/arity");
      PredSym p{label.substr(0, slash), static_cast<std::size_t>(std::stoul(label.substr(slash + 1)))};
      Relation r(m.size(), p.arity);
      for (const Json& row : tuples) {
        if (!row.is_array() || row.size() != p.arity) throw EvaluationError("tuple width mismatch for " + label);
        Tuple t;
        for (const Json& x : row) {
          int e = x.is_string() ? m.element(x.get<std::string>()) : -1;
          if (e < 0) throw EvaluationError("tuple element outside the universe");
          t.push_back(e);
        }
        r.insert(t);
      }
      m.interp.emplace(p, std::move(r));
    }
  }
  m.check();
  return m;
}

Json to_json(const Assignment& g, const FiniteModel& m) {
  Json out = Json::object();
  for (const auto& [n, v] : g) out[n.text()] = m.universe.at(v);
  return out;
}

}  // namespace grefute
