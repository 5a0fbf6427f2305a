#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "grefute/expression.hpp"
#include "grefute/json_codec.hpp"

namespace grefute {

using Tuple = std::vector<int>;

/// Relation over {0..n-1}^arity stored as a bitmap indexed in base n.
class Relation {
 public:
  Relation() = default;
  Relation(std::size_t universe, std::size_t arity);

  std::size_t universe() const noexcept { return n_; }
  std::size_t arity() const noexcept { return arity_; }
  std::size_t capacity() const noexcept { return bits_.size(); }

  bool contains(const Tuple& t) const { return bits_[index(t)]; }
  bool contains_index(std::size_t i) const { return bits_[i]; }
  void insert(const Tuple& t) { bits_[index(t)] = true; }
  void set_index(std::size_t i, bool v) { bits_[i] = v; }

  std::size_t count() const;
  bool empty() const { return count() == 0; }
  Relation complement() const;
  void unite(const Relation& o);
  std::vector<Tuple> tuples() const;
  Tuple tuple_at(std::size_t i) const;
  std::size_t index(const Tuple& t) const;

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  std::size_t n_ = 1;
  std::size_t arity_ = 0;
  std::vector<bool> bits_ = std::vector<bool>(1, false);
};

/// Nonempty finite universe with interpretations for the non-equality predicates.
struct FiniteModel {
  std::vector<std::string> universe;
  std::map<PredSym, Relation> interp;

  std::size_t size() const noexcept { return universe.size(); }
  int element(const std::string& label) const;  // -1 if absent
  void check() const;                            // throws EvaluationError
};

using Assignment = std::map<Name, int>;

class Evaluator {
 public:
  explicit Evaluator(const FiniteModel& m);

  const Relation& eval(const Expression& e);
  Relation eval(const Slice& s);
  Relation eval(const Graph& g);
  bool satisfies(const Assignment& g, const Arc& a);
  /// Some extension of g (over the draft's other nodes) satisfies every arc.
  bool satisfiable(const Draft& d, const Assignment& g);
  bool holds(const Formula& f, const Assignment& g);

 private:
  const FiniteModel& m_;
  std::unordered_map<const void*, std::pair<Expression, Relation>> memo_;

  Relation eval_uncached(const Expression& e);
  Relation eval_formula(const Formula& f);
  bool search(const Draft& d, std::vector<int>& values, const std::vector<std::size_t>& order,
              std::size_t depth, const std::vector<std::vector<std::size_t>>& ready,
              const std::vector<const Relation*>& rels,
              const std::vector<std::vector<std::size_t>>& arg_idx);
};

Relation eval_expression(const Expression& e, const FiniteModel& m);
bool satisfies_arc(const Assignment& g, const Arc& a, const FiniteModel& m);
bool eval_formula(const Formula& f, const FiniteModel& m, const Assignment& g);

/// Predicate symbols (other than equality) occurring anywhere in the value.
std::vector<PredSym> predicates_of(const Expression& e);
std::vector<PredSym> predicates_of(const Slice& s);
std::vector<PredSym> predicates_of(const Graph& g);

struct EntailmentResult {
  bool holds = false;
  std::size_t bound = 0;
  std::optional<FiniteModel> model;
  Assignment assignment;
};

/// Exhaustive search over all models with 1..max_universe elements. Throws BudgetExceeded when
/// the number of (model, assignment) checks would pass max_checks.
EntailmentResult entails_bounded(const std::vector<Formula>& premises, const Formula& conclusion,
                                 std::size_t max_universe, std::uint64_t max_checks = 50'000'000);

/// Calls visit for every model over the given symbols with exactly n elements, in bitmap order.
/// Stops early when visit returns false.
template <class Visit>
void for_each_model(const std::vector<PredSym>& preds, std::size_t n, Visit&& visit);

Json to_json(const FiniteModel& m);
FiniteModel model_from_json(const Json& j);
Json to_json(const Assignment& g, const FiniteModel& m);

std::string pred_label(const PredSym& p);

// ---------------------------------------------------------------------------

template <class Visit>
void for_each_model(const std::vector<PredSym>& preds, std::size_t n, Visit&& visit) {
  FiniteModel m;
  for (std::size_t i = 0; i < n; ++i) m.universe.push_back("e" + std::to_string(i));
  std::vector<std::pair<PredSym, std::size_t>> slots;
  std::size_t total = 0;
  for (const PredSym& p : preds) {
    if (p.is_equality()) continue;
    Relation r(n, p.arity);
    total += r.capacity();
    slots.emplace_back(p, r.capacity());
    m.interp.emplace(p, std::move(r));
  }
  std::vector<bool> bits(total, false);
  for (;;) {
    std::size_t off = 0;
    for (auto& [p, cap] : slots) {
      Relation& r = m.interp.at(p);
      for (std::size_t i = 0; i < cap; ++i) r.set_index(i, bits[off + i]);
      off += cap;
    }
    if (!visit(static_cast<const FiniteModel&>(m))) return;
    std::size_t i = 0;
    while (i < total && bits[i]) bits[i++] = false;
    if (i == total) return;
    bits[i] = true;
  }
}

}  // namespace grefute
