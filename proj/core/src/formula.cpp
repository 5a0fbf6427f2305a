#include "grefute/formula.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "grefute/error.hpp"

namespace grefute {

struct Formula::Node {
  Kind kind;
  PredSym pred;
  std::vector<Term> terms;
  std::vector<Formula> kids;
  std::string var;
};

Formula Formula::atom(PredSym pred, std::vector<Term> terms) {
  if (terms.size() != pred.arity)
    throw StructuralError("atom " + pred.name + " expects " + std::to_string(pred.arity) +
                          " arguments, got " + std::to_string(terms.size()));
  auto n = std::make_shared<Node>(Node{Kind::Atom, std::move(pred), std::move(terms), {}, {}});
  return Formula(std::move(n));
}

Formula Formula::falsum() { return Formula(std::make_shared<Node>(Node{Kind::False, {}, {}, {}, {}})); }

Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<Node>(Node{Kind::Not, {}, {}, {std::move(f)}, {}}));
}
Formula Formula::conjunction(Formula a, Formula b) {
  return Formula(std::make_shared<Node>(Node{Kind::And, {}, {}, {std::move(a), std::move(b)}, {}}));
}
Formula Formula::disjunction(Formula a, Formula b) {
  return Formula(std::make_shared<Node>(Node{Kind::Or, {}, {}, {std::move(a), std::move(b)}, {}}));
}
Formula Formula::conditional(Formula a, Formula b) {
  return Formula(
      std::make_shared<Node>(Node{Kind::Implies, {}, {}, {std::move(a), std::move(b)}, {}}));
}
Formula Formula::exists(std::string var, Formula body) {
  return Formula(
      std::make_shared<Node>(Node{Kind::Exists, {}, {}, {std::move(body)}, std::move(var)}));
}
Formula Formula::forall(std::string var, Formula body) {
  return Formula(
      std::make_shared<Node>(Node{Kind::Forall, {}, {}, {std::move(body)}, std::move(var)}));
}

Formula::Kind Formula::kind() const noexcept { return node_->kind; }

const PredSym& Formula::pred() const {
  if (kind() != Kind::Atom) throw StructuralError("not an atom");
  return node_->pred;
}
const std::vector<Term>& Formula::terms() const {
  if (kind() != Kind::Atom) throw StructuralError("not an atom");
  return node_->terms;
}
const Formula& Formula::operand() const {
  if (kind() != Kind::Not) throw StructuralError("not a negation");
  return node_->kids[0];
}
const Formula& Formula::lhs() const {
  if (!is_binary()) throw StructuralError("not a binary connective");
  return node_->kids[0];
}
const Formula& Formula::rhs() const {
  if (!is_binary()) throw StructuralError("not a binary connective");
  return node_->kids[1];
}
const std::string& Formula::var() const {
  if (!is_quantifier()) throw StructuralError("not a quantifier");
  return node_->var;
}
const Formula& Formula::body() const {
  if (!is_quantifier()) throw StructuralError("not a quantifier");
  return node_->kids[0];
}

namespace {

void collect_names(const Formula& f, std::set<Name>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      for (const Term& t : f.terms())
        if (t.is_name()) out.insert(Name(t.text));
      return;
    case Formula::Kind::False:
      return;
    case Formula::Kind::Not:
      collect_names(f.operand(), out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      collect_names(f.lhs(), out);
      collect_names(f.rhs(), out);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      collect_names(f.body(), out);
      return;
  }
}

Formula substitute(const Formula& f, const std::string& var, const Name& name) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      std::vector<Term> ts = f.terms();
      bool changed = false;
      for (Term& t : ts)
        if (!t.is_name() && t.text == var) {
          t = Term::name(name.text());
          changed = true;
        }
      return changed ? Formula::atom(f.pred(), std::move(ts)) : f;
    }
    case Formula::Kind::False:
      return f;
    case Formula::Kind::Not:
      return Formula::negation(substitute(f.operand(), var, name));
    case Formula::Kind::And:
      return Formula::conjunction(substitute(f.lhs(), var, name), substitute(f.rhs(), var, name));
    case Formula::Kind::Or:
      return Formula::disjunction(substitute(f.lhs(), var, name), substitute(f.rhs(), var, name));
    case Formula::Kind::Implies:
      return Formula::conditional(substitute(f.lhs(), var, name), substitute(f.rhs(), var, name));
    case Formula::Kind::Exists:
      if (f.var() == var) return f;  // shadowed
      return Formula::exists(f.var(), substitute(f.body(), var, name));
    case Formula::Kind::Forall:
      if (f.var() == var) return f;
      return Formula::forall(f.var(), substitute(f.body(), var, name));
  }
  return f;
}

void collect_preds(const Formula& f, std::set<PredSym>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      out.insert(f.pred());
      return;
    case Formula::Kind::False:
      return;
    case Formula::Kind::Not:
      collect_preds(f.operand(), out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      collect_preds(f.lhs(), out);
      collect_preds(f.rhs(), out);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      collect_preds(f.body(), out);
      return;
  }
}

bool alpha_eq(const Formula& a, const Formula& b, std::map<std::string, std::string>& ab,
              std::map<std::string, std::string>& ba) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::Atom: {
      if (a.pred() != b.pred()) return false;
      const auto& ta = a.terms();
      const auto& tb = b.terms();
      for (std::size_t i = 0; i < ta.size(); ++i) {
        if (ta[i].kind != tb[i].kind) return false;
        if (ta[i].is_name()) {
          if (ta[i].text != tb[i].text) return false;
        } else {
          auto ia = ab.find(ta[i].text);
          auto ib = ba.find(tb[i].text);
          if (ia == ab.end() || ib == ba.end()) return false;
          if (ia->second != tb[i].text || ib->second != ta[i].text) return false;
        }
      }
      return true;
    }
    case Formula::Kind::False:
      return true;
    case Formula::Kind::Not:
      return alpha_eq(a.operand(), b.operand(), ab, ba);
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return alpha_eq(a.lhs(), b.lhs(), ab, ba) && alpha_eq(a.rhs(), b.rhs(), ab, ba);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      auto saved_ab = ab;
      auto saved_ba = ba;
      ab[a.var()] = b.var();
      ba[b.var()] = a.var();
      bool ok = alpha_eq(a.body(), b.body(), ab, ba);
      ab = std::move(saved_ab);
      ba = std::move(saved_ba);
      return ok;
    }
  }
  return false;
}

}  // namespace

NameList Formula::free_names() const {
  std::set<Name> names;
  collect_names(*this, names);
  return NameList(names.begin(), names.end());
}

NameList Formula::args() const {
  if (kind() == Kind::Atom) {
    NameList out;
    for (const Term& t : terms()) {
      if (!t.is_name())
        throw StructuralError("atom " + pred().name + " has unbound variable " + t.text);
      out.emplace_back(t.text);
    }
    return out;
  }
  return free_names();
}

namespace {
void collect_bound(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::False:
      return;
    case Formula::Kind::Not:
      collect_bound(f.operand(), out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      collect_bound(f.lhs(), out);
      collect_bound(f.rhs(), out);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      out.insert(f.var());
      collect_bound(f.body(), out);
      return;
  }
}
}  // namespace

std::vector<std::string> Formula::bound_variables() const {
  std::set<std::string> s;
  collect_bound(*this, s);
  return {s.begin(), s.end()};
}

Formula Formula::instantiate_body(const Name& name) const {
  return substitute(body(), var(), name);
}

std::vector<PredSym> Formula::predicates() const {
  std::set<PredSym> s;
  collect_preds(*this, s);
  return {s.begin(), s.end()};
}

std::size_t Formula::size() const {
  switch (kind()) {
    case Kind::Atom:
    case Kind::False:
      return 1;
    case Kind::Not:
      return 1 + operand().size();
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
      return 1 + lhs().size() + rhs().size();
    case Kind::Exists:
    case Kind::Forall:
      return 1 + body().size();
  }
  return 1;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::Atom:
      return a.pred() == b.pred() && a.terms() == b.terms();
    case Formula::Kind::False:
      return true;
    case Formula::Kind::Not:
      return a.operand() == b.operand();
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      return a.var() == b.var() && a.body() == b.body();
  }
  return false;
}

bool alpha_equal(const Formula& a, const Formula& b) {
  std::map<std::string, std::string> ab, ba;
  return alpha_eq(a, b, ab, ba);
}

}  // namespace grefute
