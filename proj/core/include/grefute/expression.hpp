#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "grefute/formula.hpp"
#include "grefute/name.hpp"

namespace grefute {

class Slice;
class Graph;

/// Arc label: predicate symbol, formula, slice, graph or complement of one of these.
/// Immutable handle; copies share the node.
class Expression {
 public:
  enum class Kind { Pred, Frm, Sl, Gr, Cmpl };

  static Expression pred(PredSym p);
  static Expression formula(Formula f);
  static Expression slice(Slice s);
  static Expression graph(Graph g);
  static Expression complement(Expression e);

  Kind kind() const noexcept;
  std::size_t arity() const noexcept;

  const PredSym& pred() const;
  const Formula& formula() const;
  const Slice& slice() const;
  const Graph& graph() const;
  const Expression& operand() const;  // Cmpl

  bool is_pred() const noexcept { return kind() == Kind::Pred; }
  bool is_equality() const noexcept;
  bool is_cmpl() const noexcept { return kind() == Kind::Cmpl; }
  bool is_cmpl_slice() const noexcept;

  /// Exact structural encoding (node names included). Drives arc order and ==.
  const std::string& key() const noexcept;
  /// Encoding invariant under renaming of names local to embedded slices.
  const std::string& canonical_key() const;

  std::size_t size() const noexcept;
  const void* identity() const noexcept { return node_.get(); }

  friend bool operator==(const Expression& a, const Expression& b) {
    return a.node_ == b.node_ || a.key() == b.key();
  }
  friend bool operator<(const Expression& a, const Expression& b) { return a.key() < b.key(); }

  Expression() = delete;

  struct Node;

 private:
  explicit Expression(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Arc {
  Expression expr;
  NameList args;

  Arc(Expression e, NameList a);

  friend bool operator==(const Arc& a, const Arc& b) { return a.args == b.args && a.expr == b.expr; }
  friend bool operator<(const Arc& a, const Arc& b);
};

std::string arc_key(const Arc& a);

/// Finite name set plus finite arc set. Arcs kept sorted and duplicate-free.
class Draft {
 public:
  Draft() = default;
  Draft(NameList nodes, std::vector<Arc> arcs);

  const NameList& nodes() const noexcept { return nodes_; }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }
  bool has_node(const Name& n) const { return contains(nodes_, n); }
  bool has_arc(const Arc& a) const;

  std::string key() const;

 private:
  NameList nodes_;
  std::vector<Arc> arcs_;
};

class Slice {
 public:
  Slice() = default;
  Slice(Draft under, NameList dist);
  Slice(NameList nodes, std::vector<Arc> arcs, NameList dist)
      : Slice(Draft(std::move(nodes), std::move(arcs)), std::move(dist)) {}

  const Draft& under() const noexcept { return under_; }
  const NameList& nodes() const noexcept { return under_.nodes(); }
  const std::vector<Arc>& arcs() const noexcept { return under_.arcs(); }
  const NameList& dist() const noexcept { return dist_; }
  std::size_t arity() const noexcept { return dist_.size(); }

  std::string key() const;
  friend bool operator==(const Slice& a, const Slice& b) {
    return a.dist_ == b.dist_ && a.under_.nodes() == b.under_.nodes() &&
           a.under_.arcs() == b.under_.arcs();
  }

 private:
  Draft under_;
  NameList dist_;
};

/// Same-arity set of slices, sorted by structural key, duplicate-free.
class Graph {
 public:
  explicit Graph(std::size_t arity) : arity_(arity) {}
  Graph(std::size_t arity, std::vector<Slice> slices);

  static Graph singleton(Slice s);

  std::size_t arity() const noexcept { return arity_; }
  const std::vector<Slice>& slices() const noexcept { return slices_; }
  bool empty() const noexcept { return slices_.empty(); }

  std::string key() const;
  friend bool operator==(const Graph& a, const Graph& b) {
    return a.arity_ == b.arity_ && a.slices_ == b.slices_;
  }

 private:
  std::size_t arity_ = 0;
  std::vector<Slice> slices_;
};

/// Throws StructuralError if any slice reachable from the value breaks an invariant.
void audit(const Slice& s);
void audit(const Graph& g);
void audit(const Expression& e);

}  // namespace grefute
