#include "grefute/expression.hpp"

#include <algorithm>
#include <mutex>
#include <variant>

#include "grefute/canonical.hpp"
#include "grefute/error.hpp"
#include "grefute/syntax.hpp"

namespace grefute {

struct Expression::Node {
  Kind kind;
  std::size_t arity;
  std::variant<PredSym, Formula, Slice, Graph, Expression> payload;
  std::string key;
  std::size_t size;
  mutable std::once_flag canon_once;
  mutable std::string canon;

  template <class T>
  Node(Kind k, std::size_t a, T&& p, std::string kk, std::size_t sz)
      : kind(k), arity(a), payload(std::forward<T>(p)), key(std::move(kk)), size(sz) {}
};

namespace {

std::string names_key(const NameList& ns) { return join(ns, ","); }

std::size_t slice_size(const Slice& s) {
  std::size_t n = 1;
  for (const Arc& a : s.arcs()) n += a.expr.size();
  return n;
}

}  // namespace

Expression Expression::pred(PredSym p) {
  std::string k = "P:" + p.name + "/" + std::to_string(p.arity);
  std::size_t a = p.arity;
  return Expression(std::make_shared<Node>(Kind::Pred, a, std::move(p), std::move(k), 1));
}

Expression Expression::formula(Formula f) {
  std::size_t a = f.arity();
  std::string k = "F:" + render_formula(f);
  std::size_t sz = f.size();
  return Expression(std::make_shared<Node>(Kind::Frm, a, std::move(f), std::move(k), sz));
}

Expression Expression::slice(Slice s) {
  std::size_t a = s.arity();
  std::string k = s.key();
  std::size_t sz = slice_size(s);
  return Expression(std::make_shared<Node>(Kind::Sl, a, std::move(s), std::move(k), sz));
}

Expression Expression::graph(Graph g) {
  std::size_t a = g.arity();
  std::string k = g.key();
  std::size_t sz = 1;
  for (const Slice& s : g.slices()) sz += slice_size(s);
  return Expression(std::make_shared<Node>(Kind::Gr, a, std::move(g), std::move(k), sz));
}

Expression Expression::complement(Expression e) {
  std::size_t a = e.arity();
  std::string k = "C(" + e.key() + ")";
  std::size_t sz = e.size() + 1;
  return Expression(std::make_shared<Node>(Kind::Cmpl, a, std::move(e), std::move(k), sz));
}

Expression::Kind Expression::kind() const noexcept { return node_->kind; }
std::size_t Expression::arity() const noexcept { return node_->arity; }
std::size_t Expression::size() const noexcept { return node_->size; }
const std::string& Expression::key() const noexcept { return node_->key; }

const PredSym& Expression::pred() const {
  if (kind() != Kind::Pred) throw StructuralError("expression is not a predicate");
  return std::get<PredSym>(node_->payload);
}
const Formula& Expression::formula() const {
  if (kind() != Kind::Frm) throw StructuralError("expression is not a formula");
  return std::get<Formula>(node_->payload);
}
const Slice& Expression::slice() const {
  if (kind() != Kind::Sl) throw StructuralError("expression is not a slice");
  return std::get<Slice>(node_->payload);
}
const Graph& Expression::graph() const {
  if (kind() != Kind::Gr) throw StructuralError("expression is not a graph");
  return std::get<Graph>(node_->payload);
}
const Expression& Expression::operand() const {
  if (kind() != Kind::Cmpl) throw StructuralError("expression is not a complement");
  return std::get<Expression>(node_->payload);
}

bool Expression::is_equality() const noexcept {
  return kind() == Kind::Pred && std::get<PredSym>(node_->payload).is_equality();
}

bool Expression::is_cmpl_slice() const noexcept {
  return kind() == Kind::Cmpl && operand().kind() == Kind::Sl;
}

const std::string& Expression::canonical_key() const {
  std::call_once(node_->canon_once, [this] { node_->canon = compute_canonical_key(*this); });
  return node_->canon;
}

Arc::Arc(Expression e, NameList a) : expr(std::move(e)), args(std::move(a)) {
  if (args.size() != expr.arity())
    throw StructuralError("arc over " + expr.key() + " needs " + std::to_string(expr.arity()) +
                          " arguments, got " + std::to_string(args.size()));
}

bool operator<(const Arc& a, const Arc& b) {
  if (a.expr.key() != b.expr.key()) return a.expr.key() < b.expr.key();
  return a.args < b.args;
}

std::string arc_key(const Arc& a) { return a.expr.key() + "@" + names_key(a.args); }

Draft::Draft(NameList nodes, std::vector<Arc> arcs)
    : nodes_(sorted_unique(std::move(nodes))), arcs_(std::move(arcs)) {
  if (!std::is_sorted(arcs_.begin(), arcs_.end())) std::sort(arcs_.begin(), arcs_.end());
  arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());
  for (const Arc& a : arcs_)
    for (const Name& n : a.args)
      if (!contains(nodes_, n))
        throw StructuralError("arc argument " + n.text() + " is not a node of the draft");
}

bool Draft::has_arc(const Arc& a) const { return std::binary_search(arcs_.begin(), arcs_.end(), a); }

std::string Draft::key() const {
  std::string k = names_key(nodes_) + ";";
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    if (i) k += "|";
    k += arc_key(arcs_[i]);
  }
  return k;
}

Slice::Slice(Draft under, NameList dist) : under_(std::move(under)), dist_(std::move(dist)) {
  for (const Name& n : dist_)
    if (!under_.has_node(n))
      throw StructuralError("distinguished name " + n.text() + " is not a node of the slice");
}

std::string Slice::key() const { return "S{" + under_.key() + ";" + names_key(dist_) + "}"; }

Graph::Graph(std::size_t arity, std::vector<Slice> slices) : arity_(arity) {
  for (const Slice& s : slices)
    if (s.arity() != arity)
      throw StructuralError("graph of arity " + std::to_string(arity) + " got a slice of arity " +
                            std::to_string(s.arity()));
  std::vector<std::pair<std::string, Slice>> keyed;
  keyed.reserve(slices.size());
  for (Slice& s : slices) {
    std::string k = s.key();
    keyed.emplace_back(std::move(k), std::move(s));
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  keyed.erase(std::unique(keyed.begin(), keyed.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              keyed.end());
  for (auto& [k, s] : keyed) slices_.push_back(std::move(s));
}

Graph Graph::singleton(Slice s) {
  std::size_t a = s.arity();
  return Graph(a, {std::move(s)});
}

std::string Graph::key() const {
  std::string k = "G" + std::to_string(arity_) + "{";
  for (std::size_t i = 0; i < slices_.size(); ++i) {
    if (i) k += "|";
    k += slices_[i].key();
  }
  return k + "}";
}

void audit(const Slice& s) {
  for (const Name& n : s.dist())
    if (!s.under().has_node(n)) throw StructuralError("audit: dist name outside node set");
  for (const Arc& a : s.arcs()) {
    if (a.args.size() != a.expr.arity()) throw StructuralError("audit: arc arity mismatch");
    for (const Name& n : a.args)
      if (!s.under().has_node(n)) throw StructuralError("audit: arc argument outside node set");
    audit(a.expr);
  }
}

void audit(const Graph& g) {
  for (const Slice& s : g.slices()) {
    if (s.arity() != g.arity()) throw StructuralError("audit: mixed-arity graph");
    audit(s);
  }
}

void audit(const Expression& e) {
  switch (e.kind()) {
    case Expression::Kind::Pred:
    case Expression::Kind::Frm:
      return;
    case Expression::Kind::Sl:
      audit(e.slice());
      return;
    case Expression::Kind::Gr:
      audit(e.graph());
      return;
    case Expression::Kind::Cmpl:
      if (e.operand().arity() != e.arity()) throw StructuralError("audit: complement arity");
      audit(e.operand());
      return;
  }
}

}  // namespace grefute
