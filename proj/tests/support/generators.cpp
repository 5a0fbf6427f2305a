#include "generators.hpp"

#include <string>

using namespace grefute;

namespace gt {

namespace {

const char* kNames[] = {"u", "v", "w", "s"};

int pick(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Term random_term(Rng& rng, const FormulaShape& shape, const std::vector<std::string>& vars) {
  // bound variables are preferred when in scope, so quantifiers are rarely vacuous
  if (!vars.empty() && pick(rng, 0, 2) > 0) return Term::var(vars[pick(rng, 0, static_cast<int>(vars.size()) - 1)]);
  return Term::name(kNames[pick(rng, 0, shape.names - 1)]);
}

Formula atom(Rng& rng, const FormulaShape& shape, const std::vector<std::string>& vars) {
  int k = pick(rng, 0, shape.equality ? 3 : 2);
  switch (k) {
    case 0: return Formula::atom({"p", 1}, {random_term(rng, shape, vars)});
    case 1: return Formula::atom({"q", 1}, {random_term(rng, shape, vars)});
    case 2: return Formula::atom({"r", 2}, {random_term(rng, shape, vars), random_term(rng, shape, vars)});
    default: return Formula::atom(PredSym::equality(), {random_term(rng, shape, vars), random_term(rng, shape, vars)});
  }
}

Formula gen(Rng& rng, const FormulaShape& shape, int depth, std::vector<std::string>& vars) {
  if (depth <= 0 || pick(rng, 0, 5) == 0) {
    if (pick(rng, 0, 15) == 0) return Formula::falsum();
    return atom(rng, shape, vars);
  }
  int k = pick(rng, 0, shape.quantifiers ? 6 : 4);
  switch (k) {
    case 0: return Formula::negation(gen(rng, shape, depth - 1, vars));
    case 1: return Formula::conjunction(gen(rng, shape, depth - 1, vars), gen(rng, shape, depth - 1, vars));
    case 2: return Formula::disjunction(gen(rng, shape, depth - 1, vars), gen(rng, shape, depth - 1, vars));
    case 3: return Formula::conditional(gen(rng, shape, depth - 1, vars), gen(rng, shape, depth - 1, vars));
    case 4: return atom(rng, shape, vars);
    default: {
      std::string x = "x" + std::to_string(vars.size());
      vars.push_back(x);
      Formula body = gen(rng, shape, depth - 1, vars);
      vars.pop_back();
      return k == 5 ? Formula::exists(x, body) : Formula::forall(x, body);
    }
  }
}

Slice gen_slice(Rng& rng, const SliceShape& shape, int depth, int arity) {
  const int n = std::max(1, pick(rng, 1, shape.nodes));
  NameList nodes;
  for (int i = 0; i < n; ++i) nodes.push_back(Name("n" + std::to_string(i)));
  auto node = [&] { return nodes[pick(rng, 0, n - 1)]; };
  std::vector<Arc> arcs;
  const int m = pick(rng, 0, shape.arcs);
  for (int i = 0; i < m; ++i) {
    int k = pick(rng, 0, depth > 0 ? 3 : 2);
    if (k == 0) arcs.emplace_back(Expression::pred({"p", 1}), NameList{node()});
    else if (k == 1) arcs.emplace_back(Expression::pred({"q", 1}), NameList{node()});
    else if (k == 2) arcs.emplace_back(Expression::pred({"r", 2}), NameList{node(), node()});
    else {
      const int a = pick(rng, 0, 2);
      SliceShape inner = shape;
      inner.nodes = std::max(1, shape.nodes - 1);
      inner.arcs = std::max(1, shape.arcs - 1);
      Slice t = gen_slice(rng, inner, depth - 1, a);
      NameList args;
      for (int j = 0; j < a; ++j) args.push_back(node());
      arcs.emplace_back(Expression::complement(Expression::slice(t)), args);
    }
  }
  NameList dist;
  for (int i = 0; i < arity; ++i) dist.push_back(node());
  return Slice(nodes, arcs, dist);
}

}  // namespace

std::vector<PredSym> generator_symbols() { return {{"p", 1}, {"q", 1}, {"r", 2}}; }

Formula random_formula(Rng& rng, const FormulaShape& shape) {
  std::vector<std::string> vars;
  return gen(rng, shape, shape.depth, vars);
}

Slice random_basic_slice(Rng& rng, const SliceShape& shape) {
  int arity = shape.arity >= 0 ? shape.arity : pick(rng, 0, 2);
  return gen_slice(rng, shape, shape.nested, arity);
}

FiniteModel random_model(Rng& rng, const std::vector<PredSym>& preds, int size) {
  FiniteModel m;
  for (int i = 0; i < size; ++i) m.universe.push_back("e" + std::to_string(i));
  for (const PredSym& p : preds) {
    if (p.is_equality()) continue;
    Relation r(static_cast<std::size_t>(size), p.arity);
    for (std::size_t i = 0; i < r.capacity(); ++i) r.set_index(i, pick(rng, 0, 1) == 1);
    m.interp.emplace(p, std::move(r));
  }
  return m;
}

Assignment random_assignment(Rng& rng, const NameList& names, int n) {
  Assignment g;
  for (const Name& x : names) g[x] = pick(rng, 0, n - 1);
  return g;
}

}  // namespace gt
