#include "grefute/canonical.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "grefute/syntax.hpp"

namespace grefute {

namespace {

std::string padded(char prefix, std::size_t i) {
  std::string d = std::to_string(i);
  if (d.size() < 4) d.insert(0, 4 - d.size(), '0');
  return prefix + d;
}

Formula rename_formula(const Formula& f, const std::map<std::string, std::string>& free,
                       std::map<std::string, std::string>& bound, std::size_t depth) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Atom: {
      std::vector<Term> ts;
      for (const Term& t : f.terms()) {
        if (t.is_name())
          ts.push_back(Term::name(free.at(t.text)));
        else
          ts.push_back(Term::var(bound.at(t.text)));
      }
      return Formula::atom(f.pred(), std::move(ts));
    }
    case K::False:
      return f;
    case K::Not:
      return Formula::negation(rename_formula(f.operand(), free, bound, depth));
    case K::And:
      return Formula::conjunction(rename_formula(f.lhs(), free, bound, depth),
                                  rename_formula(f.rhs(), free, bound, depth));
    case K::Or:
      return Formula::disjunction(rename_formula(f.lhs(), free, bound, depth),
                                  rename_formula(f.rhs(), free, bound, depth));
    case K::Implies:
      return Formula::conditional(rename_formula(f.lhs(), free, bound, depth),
                                  rename_formula(f.rhs(), free, bound, depth));
    case K::Exists:
    case K::Forall: {
      std::optional<std::string> saved;
      if (auto it = bound.find(f.var()); it != bound.end()) saved = it->second;
      std::string nv = padded('b', depth);
      bound[f.var()] = nv;
      Formula body = rename_formula(f.body(), free, bound, depth + 1);
      if (saved)
        bound[f.var()] = *saved;
      else
        bound.erase(f.var());
      return f.kind() == K::Exists ? Formula::exists(nv, std::move(body))
                                   : Formula::forall(nv, std::move(body));
    }
  }
  return f;
}

struct Structure {
  std::size_t n = 0;
  std::vector<int> dist;
  std::vector<std::string> labels;  // sorted, distinct
  std::vector<std::pair<int, std::vector<int>>> arcs;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> incid;  // node -> (arc, pos)
  std::vector<std::pair<int, std::vector<int>>> sorted_arcs;
};

Structure build(const Slice& s) {
  Structure st;
  const NameList& nodes = s.nodes();
  st.n = nodes.size();
  auto idx = [&](const Name& x) {
    return static_cast<int>(std::lower_bound(nodes.begin(), nodes.end(), x) - nodes.begin());
  };
  for (const Name& d : s.dist()) st.dist.push_back(idx(d));
  for (const Arc& a : s.arcs()) st.labels.push_back(a.expr.canonical_key());
  std::sort(st.labels.begin(), st.labels.end());
  st.labels.erase(std::unique(st.labels.begin(), st.labels.end()), st.labels.end());
  st.incid.resize(st.n);
  for (const Arc& a : s.arcs()) {
    int lab = static_cast<int>(
        std::lower_bound(st.labels.begin(), st.labels.end(), a.expr.canonical_key()) -
        st.labels.begin());
    std::vector<int> args;
    for (const Name& x : a.args) args.push_back(idx(x));
    st.arcs.emplace_back(lab, std::move(args));
  }
  // Structurally equal labels under different keys can collapse two arcs into one.
  std::sort(st.arcs.begin(), st.arcs.end());
  st.arcs.erase(std::unique(st.arcs.begin(), st.arcs.end()), st.arcs.end());
  for (std::size_t i = 0; i < st.arcs.size(); ++i)
    for (std::size_t p = 0; p < st.arcs[i].second.size(); ++p)
      st.incid[st.arcs[i].second[p]].emplace_back(i, p);
  st.sorted_arcs = st.arcs;
  return st;
}

using Colors = std::vector<int>;

template <class Sig>
Colors rank(const std::vector<Sig>& sigs) {
  std::vector<Sig> sorted = sigs;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Colors c(sigs.size());
  for (std::size_t i = 0; i < sigs.size(); ++i)
    c[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sigs[i]) - sorted.begin());
  return c;
}

std::size_t count_colors(const Colors& c) {
  if (c.empty()) return 0;
  return static_cast<std::size_t>(*std::max_element(c.begin(), c.end())) + 1;
}

Colors refine(const Structure& st, Colors c) {
  std::size_t classes = count_colors(c);
  while (true) {
    std::vector<std::vector<int>> sigs(st.n);
    for (std::size_t v = 0; v < st.n; ++v) {
      std::vector<std::vector<int>> inc;
      for (auto [ai, pos] : st.incid[v]) {
        const auto& arc = st.arcs[ai];
        std::vector<int> t{arc.first, static_cast<int>(pos)};
        for (int x : arc.second) t.push_back(c[x]);
        inc.push_back(std::move(t));
      }
      std::sort(inc.begin(), inc.end());
      std::vector<int>& sig = sigs[v];
      sig.push_back(c[v]);
      for (auto& t : inc) {
        sig.push_back(-1);
        sig.insert(sig.end(), t.begin(), t.end());
      }
    }
    Colors next = rank(sigs);
    std::size_t k = count_colors(next);
    c = std::move(next);
    if (k == classes) return c;
    classes = k;
  }
}

std::vector<int> encode(const Structure& st, const Colors& perm) {
  std::vector<int> out{static_cast<int>(st.n)};
  for (int d : st.dist) out.push_back(perm[d]);
  out.push_back(-1);
  std::vector<std::vector<int>> arcs;
  for (const auto& [lab, args] : st.arcs) {
    std::vector<int> t{lab};
    for (int x : args) t.push_back(perm[x]);
    arcs.push_back(std::move(t));
  }
  std::sort(arcs.begin(), arcs.end());
  for (auto& t : arcs) {
    out.insert(out.end(), t.begin(), t.end());
    out.push_back(-2);
  }
  return out;
}

bool transposition_is_automorphism(const Structure& st, int u, int v) {
  auto sw = [&](int x) { return x == u ? v : x == v ? u : x; };
  for (int d : st.dist)
    if (sw(d) != d) return false;
  for (auto [ai, pos] : st.incid[u]) {
    (void)pos;
    auto image = st.arcs[ai];
    for (int& x : image.second) x = sw(x);
    if (!std::binary_search(st.sorted_arcs.begin(), st.sorted_arcs.end(), image)) return false;
  }
  for (auto [ai, pos] : st.incid[v]) {
    (void)pos;
    auto image = st.arcs[ai];
    for (int& x : image.second) x = sw(x);
    if (!std::binary_search(st.sorted_arcs.begin(), st.sorted_arcs.end(), image)) return false;
  }
  return true;
}

struct Search {
  const Structure& st;
  std::optional<std::vector<int>> best;
  Colors best_perm;

  void run(const Colors& c) {
    if (count_colors(c) == st.n) {
      std::vector<int> e = encode(st, c);
      if (!best || e < *best) {
        best = std::move(e);
        best_perm = c;
      }
      return;
    }
    std::vector<std::size_t> sizes(count_colors(c), 0);
    for (int x : c) ++sizes[x];
    int cell = -1;
    for (std::size_t i = 0; i < sizes.size(); ++i)
      if (sizes[i] > 1) {
        cell = static_cast<int>(i);
        break;
      }
    std::vector<int> tried;
    for (std::size_t v = 0; v < st.n; ++v) {
      if (c[v] != cell) continue;
      bool redundant = false;
      for (int u : tried)
        if (transposition_is_automorphism(st, u, static_cast<int>(v))) {
          redundant = true;
          break;
        }
      if (redundant) continue;
      tried.push_back(static_cast<int>(v));
      std::vector<std::pair<int, int>> sigs(st.n);
      for (std::size_t x = 0; x < st.n; ++x) sigs[x] = {c[x], x == v ? 0 : 1};
      run(refine(st, rank(sigs)));
    }
  }
};

struct CanonResult {
  Structure st;
  Colors perm;
};

CanonResult canon(const Slice& s) {
  CanonResult r{build(s), {}};
  std::vector<std::vector<int>> init(r.st.n);
  for (std::size_t i = 0; i < r.st.dist.size(); ++i) init[r.st.dist[i]].push_back(static_cast<int>(i));
  Search search{r.st, std::nullopt, {}};
  search.run(refine(r.st, rank(init)));
  r.perm = std::move(search.best_perm);
  return r;
}

}  // namespace

Formula canonical_formula(const Formula& f) {
  std::map<std::string, std::string> free;
  std::size_t i = 0;
  for (const Name& n : f.args())
    if (!free.count(n.text())) free[n.text()] = padded('f', i++);
  std::map<std::string, std::string> bound;
  return rename_formula(f, free, bound, 0);
}

std::vector<std::size_t> canonical_order(const Slice& s) {
  CanonResult r = canon(s);
  return {r.perm.begin(), r.perm.end()};
}

std::string canonical_key(const Slice& s) {
  CanonResult r = canon(s);
  const Structure& st = r.st;
  std::string k = "K" + std::to_string(st.n) + "[";
  for (std::size_t i = 0; i < st.dist.size(); ++i) {
    if (i) k += ",";
    k += std::to_string(r.perm[st.dist[i]]);
  }
  k += "]{";
  std::vector<std::pair<std::string, std::vector<int>>> arcs;
  for (const auto& [lab, args] : st.arcs) {
    std::vector<int> mapped;
    for (int x : args) mapped.push_back(r.perm[x]);
    arcs.emplace_back(st.labels[lab], std::move(mapped));
  }
  std::sort(arcs.begin(), arcs.end());
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (i) k += "|";
    k += arcs[i].first + "@";
    for (std::size_t j = 0; j < arcs[i].second.size(); ++j) {
      if (j) k += ",";
      k += std::to_string(arcs[i].second[j]);
    }
  }
  return k + "}";
}

std::string canonical_key(const Graph& g) {
  std::vector<std::string> ks;
  for (const Slice& s : g.slices()) ks.push_back(canonical_key(s));
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  std::string k = "G" + std::to_string(g.arity()) + "{";
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (i) k += "|";
    k += ks[i];
  }
  return k + "}";
}

std::string compute_canonical_key(const Expression& e) {
  switch (e.kind()) {
    case Expression::Kind::Pred:
      return e.key();
    case Expression::Kind::Frm:
      return "F:" + render_formula(canonical_formula(e.formula()));
    case Expression::Kind::Sl:
      return canonical_key(e.slice());
    case Expression::Kind::Gr:
      return canonical_key(e.graph());
    case Expression::Kind::Cmpl:
      return "C(" + e.operand().canonical_key() + ")";
  }
  return e.key();
}

Slice canonicalize(const Slice& s) {
  CanonResult r = canon(s);
  const NameList& nodes = s.nodes();
  auto idx = [&](const Name& x) {
    return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), x) - nodes.begin());
  };
  auto rn = [&](const Name& x) { return Name("n" + std::to_string(r.perm[idx(x)])); };
  NameList ns;
  for (const Name& x : nodes) ns.push_back(rn(x));
  std::vector<Arc> arcs;
  for (const Arc& a : s.arcs()) {
    NameList args;
    for (const Name& x : a.args) args.push_back(rn(x));
    arcs.emplace_back(canonicalize(a.expr), std::move(args));
  }
  NameList dist;
  for (const Name& x : s.dist()) dist.push_back(rn(x));
  return Slice(std::move(ns), std::move(arcs), std::move(dist));
}

Graph canonicalize(const Graph& g) {
  std::vector<Slice> out;
  for (const Slice& s : g.slices()) out.push_back(canonicalize(s));
  return Graph(g.arity(), std::move(out));
}

Expression canonicalize(const Expression& e) {
  switch (e.kind()) {
    case Expression::Kind::Pred:
      return e;
    case Expression::Kind::Frm:
      return Expression::formula(canonical_formula(e.formula()));
    case Expression::Kind::Sl:
      return Expression::slice(canonicalize(e.slice()));
    case Expression::Kind::Gr:
      return Expression::graph(canonicalize(e.graph()));
    case Expression::Kind::Cmpl:
      return Expression::complement(canonicalize(e.operand()));
  }
  return e;
}

bool iso_equal(const Slice& a, const Slice& b) {
  if (a.arity() != b.arity() || a.nodes().size() != b.nodes().size()) return false;
  return canonical_key(a) == canonical_key(b);
}

bool iso_equal(const Graph& a, const Graph& b) {
  if (a.arity() != b.arity()) return false;
  return canonical_key(a) == canonical_key(b);
}

}  // namespace grefute
