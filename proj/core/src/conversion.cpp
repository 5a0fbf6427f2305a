#include "grefute/conversion.hpp"

#include <functional>

#include "grefute/error.hpp"
#include "grefute/graph_ops.hpp"

namespace grefute {

const std::vector<Rule>& all_rules() {
  static const std::vector<Rule> rules{
      Rule::At,        Rule::Bot,     Rule::Neg,         Rule::And,         Rule::Or,
      Rule::Cond,      Rule::Ex,      Rule::All,         Rule::Eq,          Rule::CmplGraph,
      Rule::DblCmpl,   Rule::StrGraphArc, Rule::StrSliceArc, Rule::Lift,    Rule::D_GlueGraph,
      Rule::D_CmplGraphArc, Rule::D_EqRename};
  return rules;
}

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::At: return "At";
    case Rule::Bot: return "Bot";
    case Rule::Neg: return "Neg";
    case Rule::And: return "And";
    case Rule::Or: return "Or";
    case Rule::Cond: return "Cond";
    case Rule::Ex: return "Ex";
    case Rule::All: return "All";
    case Rule::Eq: return "Eq";
    case Rule::CmplGraph: return "CmplGraph";
    case Rule::DblCmpl: return "DblCmpl";
    case Rule::StrGraphArc: return "StrGraphArc";
    case Rule::StrSliceArc: return "StrSliceArc";
    case Rule::Lift: return "Lift";
    case Rule::D_GlueGraph: return "D_GlueGraph";
    case Rule::D_CmplGraphArc: return "D_CmplGraphArc";
    case Rule::D_EqRename: return "D_EqRename";
  }
  return "?";
}

std::optional<Rule> rule_from_name(const std::string& s) {
  for (Rule r : all_rules())
    if (rule_name(r) == s) return r;
  return std::nullopt;
}

NameSupply conversion_supply() { return NameSupply("n", 1); }

Arc formula_arc(const Formula& f) { return Arc(Expression::formula(f), f.args()); }

std::string expression_digest(const Expression& e) { return digest(to_json(e)); }

namespace {

std::string locus_text(const Locus& l) {
  std::string s = "[";
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(l[i]);
  }
  return s + "]";
}

[[noreturn]] void inapplicable(Rule r, const Locus& l, const std::string& why) {
  throw RuleInapplicable(rule_name(r) + " at " + locus_text(l) + ": " + why, l);
}

Slice with_arc_label(const Slice& s, std::size_t j, Expression label) {
  std::vector<Arc> arcs = s.arcs();
  arcs[j] = Arc(std::move(label), arcs[j].args);
  return Slice(s.nodes(), std::move(arcs), s.dist());
}

Slice without_arc(const Slice& s, std::size_t j) {
  std::vector<Arc> arcs = s.arcs();
  arcs.erase(arcs.begin() + static_cast<std::ptrdiff_t>(j));
  return Slice(s.nodes(), std::move(arcs), s.dist());
}

using ExprFn = std::function<Expression(const Expression&)>;
using SliceFn = std::function<Expression(const Slice&)>;

// Splices a rewritten graph member back: a slice replaces it, a graph is flattened in.
Graph replace_member(const Graph& g, std::size_t i, const Expression& repl) {
  std::vector<Slice> slices;
  for (std::size_t k = 0; k < g.slices().size(); ++k) {
    if (k != i) {
      slices.push_back(g.slices()[k]);
      continue;
    }
    if (repl.kind() == Expression::Kind::Sl)
      slices.push_back(repl.slice());
    else if (repl.kind() == Expression::Kind::Gr)
      slices.insert(slices.end(), repl.graph().slices().begin(), repl.graph().slices().end());
    else
      throw StructuralError("graph member rewritten to a non-slice");
  }
  return Graph(g.arity(), std::move(slices));
}

struct Walker {
  Rule rule;
  const Locus& locus;

  [[noreturn]] void bad(const std::string& why) const { inapplicable(rule, locus, why); }

  const Slice& member(const Graph& g, std::size_t i) const {
    if (i >= g.slices().size()) bad("slice index out of range");
    return g.slices()[i];
  }

  std::size_t arc_index(const Slice& s, std::size_t j) const {
    if (j >= s.arcs().size()) bad("arc index out of range");
    return j;
  }

  Expression at_expr(const Expression& e, std::size_t k, const ExprFn& f) const {
    if (k == locus.size()) return f(e);
    switch (e.kind()) {
      case Expression::Kind::Sl: {
        const Slice& s = e.slice();
        std::size_t j = arc_index(s, locus[k]);
        return Expression::slice(with_arc_label(s, j, at_expr(s.arcs()[j].expr, k + 1, f)));
      }
      case Expression::Kind::Gr: {
        const Graph& g = e.graph();
        const Slice& s = member(g, locus[k]);
        if (k + 1 == locus.size()) bad("locus names a graph member, not an expression");
        std::size_t j = arc_index(s, locus[k + 1]);
        Slice ns = with_arc_label(s, j, at_expr(s.arcs()[j].expr, k + 2, f));
        return Expression::graph(replace_member(g, locus[k], Expression::slice(std::move(ns))));
      }
      case Expression::Kind::Cmpl:
        if (locus[k] != 0) bad("a complement has a single operand");
        return Expression::complement(at_expr(e.operand(), k + 1, f));
      default:
        bad("locus descends below a leaf");
    }
  }

  // `end` is the length of the locus prefix naming the slice.
  Expression at_slice(const Expression& e, std::size_t k, std::size_t end, const SliceFn& g) const {
    if (k == end) {
      if (e.kind() != Expression::Kind::Sl) bad("locus does not name a slice");
      return g(e.slice());
    }
    switch (e.kind()) {
      case Expression::Kind::Sl: {
        const Slice& s = e.slice();
        std::size_t j = arc_index(s, locus[k]);
        return Expression::slice(with_arc_label(s, j, at_slice(s.arcs()[j].expr, k + 1, end, g)));
      }
      case Expression::Kind::Gr: {
        const Graph& gr = e.graph();
        const Slice& s = member(gr, locus[k]);
        if (k + 1 == end) return Expression::graph(replace_member(gr, locus[k], g(s)));
        std::size_t j = arc_index(s, locus[k + 1]);
        Slice ns = with_arc_label(s, j, at_slice(s.arcs()[j].expr, k + 2, end, g));
        return Expression::graph(replace_member(gr, locus[k], Expression::slice(std::move(ns))));
      }
      case Expression::Kind::Cmpl:
        if (locus[k] != 0) bad("a complement has a single operand");
        return Expression::complement(at_slice(e.operand(), k + 1, end, g));
      default:
        bad("locus descends below a leaf");
    }
  }
};

NameList sorted_names(const NameList& a, const NameList& b) {
  NameList all = a;
  all.insert(all.end(), b.begin(), b.end());
  return sorted_unique(std::move(all));
}

Name instance_name(const Formula& q, NameSupply& supply) {
  NameSet avoid = components(q.free_names());
  for (const std::string& v : q.body().bound_variables()) avoid.insert(Name(v));
  return supply.fresh(avoid, q.var());
}

Expression formula_rule(Rule rule, const Formula& f, NameSupply& supply, const Walker& w) {
  using K = Formula::Kind;
  auto need = [&](K k) {
    if (f.kind() != k) w.bad("formula has the wrong shape");
  };
  switch (rule) {
    case Rule::At: {
      need(K::Atom);
      NameList args = f.args();
      return Expression::slice(Slice(args, {Arc(Expression::pred(f.pred()), args)}, args));
    }
    case Rule::Bot:
      need(K::False);
      return Expression::graph(Graph(0));
    case Rule::Neg: {
      need(K::Not);
      const Formula& g = f.operand();
      NameList names = g.free_names();
      if (g.args() == names) return Expression::complement(Expression::formula(g));
      return Expression::slice(
          Slice(names, {Arc(Expression::complement(Expression::formula(g)), g.args())}, names));
    }
    case Rule::And:
    case Rule::Or:
    case Rule::Cond: {
      need(rule == Rule::And ? K::And : rule == Rule::Or ? K::Or : K::Implies);
      NameList w_names = f.free_names();
      Arc left = formula_arc(f.lhs());
      Arc right = formula_arc(f.rhs());
      if (rule == Rule::And) return Expression::slice(Slice(w_names, {left, right}, w_names));
      if (rule == Rule::Cond) left = Arc(Expression::complement(left.expr), left.args);
      return Expression::graph(Graph(w_names.size(), {Slice(w_names, {left}, w_names),
                                                      Slice(w_names, {right}, w_names)}));
    }
    case Rule::Ex:
    case Rule::All: {
      need(rule == Rule::Ex ? K::Exists : K::Forall);
      Formula body = f.instantiate_body(instance_name(f, supply));
      NameList outer = f.free_names();
      NameList nodes = sorted_names(body.free_names(), outer);
      Expression label = Expression::formula(body);
      if (rule == Rule::All) label = Expression::complement(label);
      Slice s(nodes, {Arc(label, body.args())}, outer);
      Expression e = Expression::slice(std::move(s));
      return rule == Rule::All ? Expression::complement(e) : e;
    }
    default:
      w.bad("not a formula rule");
  }
}

Expression expression_rule(Rule rule, const Expression& e, NameSupply& supply, const Walker& w) {
  switch (rule) {
    case Rule::At:
    case Rule::Bot:
    case Rule::Neg:
    case Rule::And:
    case Rule::Or:
    case Rule::Cond:
    case Rule::Ex:
    case Rule::All:
      if (e.kind() != Expression::Kind::Frm) w.bad("expected a formula");
      return formula_rule(rule, e.formula(), supply, w);
    case Rule::Eq: {
      if (!e.is_equality()) w.bad("expected the equality symbol");
      Name u("u");
      return Expression::slice(Slice({u}, {}, {u, u}));
    }
    case Rule::CmplGraph: {
      if (!e.is_cmpl() || e.operand().kind() != Expression::Kind::Gr) w.bad("expected a complemented graph");
      const Graph& h = e.operand().graph();
      NameList ws = supply.fresh_list(h.arity(), {});
      std::vector<Arc> arcs;
      for (const Slice& t : h.slices()) arcs.emplace_back(Expression::complement(Expression::slice(t)), ws);
      return Expression::slice(Slice(ws, std::move(arcs), ws));
    }
    case Rule::DblCmpl:
      if (!e.is_cmpl() || !e.operand().is_cmpl()) w.bad("expected a double complement");
      return e.operand().operand();
    case Rule::Lift: {
      NameList ws = supply.fresh_list(e.arity(), {});
      return Expression::slice(Slice(ws, {Arc(e, ws)}, ws));
    }
    default:
      w.bad("not an expression rule");
  }
}

Expression arc_rule(Rule rule, const Slice& s, std::size_t j, NameSupply& supply, const Walker& w) {
  const Arc& a = s.arcs()[j];
  switch (rule) {
    case Rule::StrGraphArc: {
      if (a.expr.kind() != Expression::Kind::Gr) w.bad("expected a graph arc");
      Slice rest = without_arc(s, j);
      std::vector<Slice> out;
      for (const Slice& t : a.expr.graph().slices())
        out.push_back(add_arc(rest, Arc(Expression::slice(t), a.args)));
      return Expression::graph(Graph(s.arity(), std::move(out)));
    }
    case Rule::StrSliceArc:
      if (a.expr.kind() != Expression::Kind::Sl) w.bad("expected a slice arc");
      return Expression::slice(glue_slice(without_arc(s, j), a.args, a.expr.slice(), &supply).glued);
    case Rule::D_GlueGraph:
      if (a.expr.kind() != Expression::Kind::Gr) w.bad("expected a graph arc");
      return Expression::graph(glue_slice(without_arc(s, j), a.args, a.expr.graph(), &supply));
    case Rule::D_CmplGraphArc: {
      if (!a.expr.is_cmpl() || a.expr.operand().kind() != Expression::Kind::Gr)
        w.bad("expected a complemented-graph arc");
      std::vector<Arc> arcs = s.arcs();
      arcs.erase(arcs.begin() + static_cast<std::ptrdiff_t>(j));
      for (const Slice& t : a.expr.operand().graph().slices())
        arcs.emplace_back(Expression::complement(Expression::slice(t)), a.args);
      return Expression::slice(Slice(s.nodes(), std::move(arcs), s.dist()));
    }
    case Rule::D_EqRename: {
      if (!a.expr.is_equality()) w.bad("expected an equality arc");
      Slice rest = without_arc(s, j);
      const Name& x = a.args[0];
      const Name& y = a.args[1];
      if (x == y) return Expression::slice(rest);
      return Expression::slice(rename_node(rest, std::max(x, y), std::min(x, y)));
    }
    default:
      w.bad("not an arc rule");
  }
}

bool is_arc_rule(Rule r) {
  return r == Rule::StrGraphArc || r == Rule::StrSliceArc || r == Rule::D_GlueGraph ||
         r == Rule::D_CmplGraphArc || r == Rule::D_EqRename;
}

}  // namespace

Expression convert_step(const Expression& e, Rule rule, const Locus& locus, NameSupply& supply) {
  Walker w{rule, locus};
  if (is_arc_rule(rule)) {
    if (locus.empty()) w.bad("an arc rule needs the locus of an arc");
    return w.at_slice(e, 0, locus.size() - 1, [&](const Slice& s) {
      return arc_rule(rule, s, w.arc_index(s, locus.back()), supply, w);
    });
  }
  return w.at_expr(e, 0, [&](const Expression& x) { return expression_rule(rule, x, supply, w); });
}

// ---------------------------------------------------------------------------
// Basic objects.

bool is_basic(const Slice& s) {
  for (const Arc& a : s.arcs()) {
    if (a.expr.is_pred()) {
      if (a.expr.is_equality()) return false;
      continue;
    }
    if (a.expr.is_cmpl_slice() && is_basic(a.expr.operand().slice())) continue;
    return false;
  }
  return true;
}

bool is_basic(const Graph& g) {
  for (const Slice& s : g.slices())
    if (!is_basic(s)) return false;
  return true;
}

bool is_basic(const Expression& e) {
  switch (e.kind()) {
    case Expression::Kind::Pred: return !e.is_equality();
    case Expression::Kind::Frm: return false;
    case Expression::Kind::Sl: return is_basic(e.slice());
    case Expression::Kind::Gr: return is_basic(e.graph());
    case Expression::Kind::Cmpl: return e.is_cmpl_slice() && is_basic(e.operand().slice());
  }
  return false;
}

// ---------------------------------------------------------------------------
// Redex selection.

namespace {

using Redex = std::pair<Rule, Locus>;

std::optional<Redex> find_expr(const Expression& e, Locus& path, bool arc_pos);

Rule formula_rule_for(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom: return Rule::At;
    case Formula::Kind::False: return Rule::Bot;
    case Formula::Kind::Not: return Rule::Neg;
    case Formula::Kind::And: return Rule::And;
    case Formula::Kind::Or: return Rule::Or;
    case Formula::Kind::Implies: return Rule::Cond;
    case Formula::Kind::Exists: return Rule::Ex;
    case Formula::Kind::Forall: return Rule::All;
  }
  return Rule::At;
}

bool flat(const Slice& s) {
  for (const Arc& a : s.arcs())
    if (!a.expr.is_pred()) return false;
  return true;
}

Locus child(const Locus& p, std::size_t j) {
  Locus l = p;
  l.push_back(j);
  return l;
}

// `path` names the slice: an Sl expression, or a graph member.
std::optional<Redex> find_slice(const Slice& s, Locus& path) {
  const auto& arcs = s.arcs();
  for (std::size_t j = 0; j < arcs.size(); ++j) {
    const Expression& x = arcs[j].expr;
    if (x.kind() == Expression::Kind::Frm && x.formula().is_atom()) return Redex{Rule::At, child(path, j)};
    if (x.kind() == Expression::Kind::Sl && flat(x.slice())) return Redex{Rule::StrSliceArc, child(path, j)};
    if (x.is_equality()) return Redex{Rule::D_EqRename, child(path, j)};
  }
  for (std::size_t j = 0; j < arcs.size(); ++j) {
    path.push_back(j);
    auto r = find_expr(arcs[j].expr, path, true);
    path.pop_back();
    if (r) return r;
  }
  for (std::size_t j = 0; j < arcs.size(); ++j) {
    const Expression& x = arcs[j].expr;
    if (x.kind() == Expression::Kind::Sl) return Redex{Rule::StrSliceArc, child(path, j)};
    if (x.kind() == Expression::Kind::Gr) return Redex{Rule::D_GlueGraph, child(path, j)};
    if (x.is_cmpl() && x.operand().kind() == Expression::Kind::Gr)
      return Redex{Rule::D_CmplGraphArc, child(path, j)};
  }
  return std::nullopt;
}

std::optional<Redex> find_expr(const Expression& e, Locus& path, bool arc_pos) {
  switch (e.kind()) {
    case Expression::Kind::Frm:
      return Redex{formula_rule_for(e.formula()), path};
    case Expression::Kind::Pred:
      if (e.is_equality() && !arc_pos) return Redex{Rule::Eq, path};
      if (path.empty()) return Redex{Rule::Lift, path};
      return std::nullopt;
    case Expression::Kind::Sl:
      return find_slice(e.slice(), path);
    case Expression::Kind::Gr: {
      const Graph& g = e.graph();
      for (std::size_t i = 0; i < g.slices().size(); ++i) {
        path.push_back(i);
        auto r = find_slice(g.slices()[i], path);
        path.pop_back();
        if (r) return r;
      }
      return std::nullopt;
    }
    case Expression::Kind::Cmpl: {
      const Expression& x = e.operand();
      switch (x.kind()) {
        case Expression::Kind::Cmpl:
          return Redex{Rule::DblCmpl, path};
        case Expression::Kind::Frm: {
          path.push_back(0);
          auto r = find_expr(x, path, false);
          path.pop_back();
          return r;
        }
        case Expression::Kind::Pred:
          return Redex{x.is_equality() ? Rule::Eq : Rule::Lift, child(path, 0)};
        case Expression::Kind::Sl: {
          path.push_back(0);
          auto r = find_slice(x.slice(), path);
          path.pop_back();
          if (r) return r;
          if (path.empty()) return Redex{Rule::Lift, path};
          return std::nullopt;
        }
        case Expression::Kind::Gr: {
          path.push_back(0);
          auto r = find_expr(x, path, false);
          path.pop_back();
          if (r) return r;
          if (arc_pos) return std::nullopt;  // the container splits it into slice arcs
          return Redex{Rule::CmplGraph, path};
        }
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::pair<Rule, Locus>> next_redex(const Expression& e) {
  Locus path;
  return find_expr(e, path, false);
}

BasicForm to_basic(const Expression& e) {
  NameSupply supply = conversion_supply();
  std::vector<ConversionStep> trace;
  Expression cur = e;
  const std::size_t budget = 64 * e.size() + 256;
  std::string before = expression_digest(cur);
  while (auto r = next_redex(cur)) {
    if (trace.size() >= budget)
      throw StructuralError("conversion did not reach a basic form within " + std::to_string(budget) + " steps");
    cur = convert_step(cur, r->first, r->second, supply);
    std::string after = expression_digest(cur);
    trace.push_back(ConversionStep{r->first, r->second, before, after});
    before = std::move(after);
  }
  Graph g = cur.kind() == Expression::Kind::Sl ? Graph::singleton(cur.slice()) : cur.graph();
  return BasicForm{std::move(g), std::move(trace)};
}

Graph replay_conversion(const Expression& source, const std::vector<ConversionStep>& steps) {
  NameSupply supply = conversion_supply();
  Expression cur = source;
  for (const ConversionStep& s : steps) {
    if (expression_digest(cur) != s.digest_before)
      throw StructuralError("replay diverged before " + rule_name(s.rule) + " at " + locus_text(s.locus));
    cur = convert_step(cur, s.rule, s.locus, supply);
    if (expression_digest(cur) != s.digest_after)
      throw StructuralError("replay diverged after " + rule_name(s.rule) + " at " + locus_text(s.locus));
  }
  if (cur.kind() == Expression::Kind::Sl) return Graph::singleton(cur.slice());
  if (cur.kind() == Expression::Kind::Gr) return cur.graph();
  throw StructuralError("replayed trace does not end in a slice or graph");
}

Json to_json(const Locus& l) {
  Json j = Json::array();
  for (std::size_t i : l) j.push_back(i);
  return j;
}

Json to_json(const ConversionStep& s) {
  return Json{{"rule", rule_name(s.rule)},
              {"locus", to_json(s.locus)},
              {"digestBefore", s.digest_before},
              {"digestAfter", s.digest_after}};
}

ConversionStep step_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rule") || !j.at("rule").is_string())
    throw StructuralError("conversion step needs a rule");
  auto r = rule_from_name(j.at("rule").get<std::string>());
  if (!r) throw StructuralError("unknown rule " + j.at("rule").get<std::string>());
  ConversionStep s{*r, {}, j.value("digestBefore", ""), j.value("digestAfter", "")};
  for (const Json& x : j.at("locus")) s.locus.push_back(x.get<std::size_t>());
  return s;
}

}  // namespace grefute
