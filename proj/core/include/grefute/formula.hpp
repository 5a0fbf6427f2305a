#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "grefute/name.hpp"

namespace grefute {

struct PredSym {
  std::string name;
  std::size_t arity = 0;

  static PredSym equality() { return {"=", 2}; }
  bool is_equality() const noexcept { return name == "=" && arity == 2; }

  friend bool operator==(const PredSym&, const PredSym&) = default;
  friend auto operator<=>(const PredSym&, const PredSym&) = default;
};

/// Argument of an atom: either a free name or a bound variable.
struct Term {
  enum class Kind { Name, Var };
  Kind kind = Kind::Name;
  std::string text;

  static Term name(std::string t) { return {Kind::Name, std::move(t)}; }
  static Term var(std::string t) { return {Kind::Var, std::move(t)}; }
  bool is_name() const noexcept { return kind == Kind::Name; }

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

/// First-order formula without function symbols. Immutable; copies share structure.
class Formula {
 public:
  enum class Kind { Atom, False, Not, And, Or, Implies, Exists, Forall };

  static Formula atom(PredSym pred, std::vector<Term> terms);
  static Formula falsum();
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula conditional(Formula a, Formula b);
  static Formula exists(std::string var, Formula body);
  static Formula forall(std::string var, Formula body);

  Kind kind() const noexcept;
  bool is_atom() const noexcept { return kind() == Kind::Atom; }
  bool is_quantifier() const noexcept { return kind() == Kind::Exists || kind() == Kind::Forall; }
  bool is_binary() const noexcept {
    return kind() == Kind::And || kind() == Kind::Or || kind() == Kind::Implies;
  }

  const PredSym& pred() const;            // Atom
  const std::vector<Term>& terms() const; // Atom
  const Formula& operand() const;         // Not
  const Formula& lhs() const;             // And, Or, Implies
  const Formula& rhs() const;
  const std::string& var() const;         // Exists, Forall
  const Formula& body() const;

  /// Names occurring free, sorted and duplicate-free.
  NameList free_names() const;
  /// The argument list the formula is read over as an expression: the argument list
  /// itself for atoms (repeats and order kept), the sorted name list otherwise.
  NameList args() const;
  std::size_t arity() const { return args().size(); }

  /// Variables bound anywhere in the formula, sorted.
  std::vector<std::string> bound_variables() const;

  /// Body of a quantifier with its variable replaced by the given name.
  Formula instantiate_body(const Name& name) const;

  /// Predicate symbols occurring anywhere (equality included).
  std::vector<PredSym> predicates() const;
  std::size_t size() const;

  friend bool operator==(const Formula& a, const Formula& b);
  /// Equal up to consistent renaming of bound variables.
  friend bool alpha_equal(const Formula& a, const Formula& b);

  Formula() = delete;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace grefute
