#include "grefute/graph_ops.hpp"

#include <algorithm>

#include <numeric>

#include "grefute/error.hpp"

namespace grefute {

Draft add_arc(const Draft& d, const Arc& a) {
  NameList nodes = d.nodes();
  nodes.insert(nodes.end(), a.args.begin(), a.args.end());
  std::vector<Arc> arcs = d.arcs();
  auto at = std::lower_bound(arcs.begin(), arcs.end(), a);
  if (at == arcs.end() || !(*at == a)) arcs.insert(at, a);
  return Draft(std::move(nodes), std::move(arcs));
}

Slice add_arc(const Slice& s, const Arc& a) { return Slice(add_arc(s.under(), a), s.dist()); }

Graph add_arc(const Graph& g, const Arc& a) {
  std::vector<Slice> out;
  for (const Slice& s : g.slices()) out.push_back(add_arc(s, a));
  return Graph(g.arity(), std::move(out));
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

Slice rename_in(const Slice& s, const NameMap& m) {
  auto rn = [&](const Name& x) {
    auto it = m.find(x);
    return it == m.end() ? x : it->second;
  };
  NameList nodes;
  for (const Name& x : s.nodes()) nodes.push_back(rn(x));
  std::vector<Arc> arcs;
  for (const Arc& a : s.arcs()) {
    NameList args;
    for (const Name& x : a.args) args.push_back(rn(x));
    arcs.emplace_back(a.expr, std::move(args));
  }
  NameList dist;
  for (const Name& x : s.dist()) dist.push_back(rn(x));
  return Slice(std::move(nodes), std::move(arcs), std::move(dist));
}

}  // namespace

DraftGlue glue_draft(const Draft& d, const NameList& w, const Slice& t, NameSupply* supply) {
  if (w.size() != t.arity())
    throw StructuralError("gluing a " + std::to_string(t.arity()) + "-ary slice along " +
                          std::to_string(w.size()) + " names");
  NameSupply local;
  NameSupply& ns = supply ? *supply : local;

  // Left side: d's nodes plus the components of w, listed in name order.
  NameList left = d.nodes();
  left.insert(left.end(), w.begin(), w.end());
  left = sorted_unique(std::move(left));
  NameSet taken(left.begin(), left.end());
  for (const Name& x : t.nodes()) taken.insert(x);

  // Right side: t's nodes, renamed apart from the left side.
  NameMap apart;
  for (const Name& x : t.nodes()) {
    if (!contains(left, x)) {
      apart[x] = x;
      continue;
    }
    Name f = ns.fresh(taken, x.text());
    taken.insert(f);
    apart[x] = f;
  }

  // Universe: left names then renamed right names; both sorted, so index order is stable.
  std::vector<Name> all = left;
  for (const Name& x : t.nodes()) all.push_back(apart[x]);
  std::map<Name, std::size_t> index;
  for (std::size_t i = 0; i < all.size(); ++i) index[all[i]] = i;

  UnionFind uf(all.size());
  for (std::size_t i = 0; i < w.size(); ++i) uf.unite(index.at(w[i]), index.at(apart.at(t.dist()[i])));

  // Representative: a left name when the class has one (smallest index), else the smallest
  // renamed right name.
  std::vector<std::size_t> best(all.size(), SIZE_MAX);
  for (std::size_t i = 0; i < all.size(); ++i) {
    std::size_t r = uf.find(i);
    std::size_t& b = best[r];
    if (b == SIZE_MAX) {
      b = i;
      continue;
    }
    bool i_left = i < left.size();
    bool b_left = b < left.size();
    if (i_left != b_left) {
      if (i_left) b = i;
    } else if (all[i] < all[b]) {
      b = i;
    }
  }
  auto rep = [&](const Name& x) { return all[best[uf.find(index.at(x))]]; };

  DraftGlue out;
  for (const Name& x : left) out.embed_left[x] = rep(x);
  for (const Name& x : t.nodes()) out.embed_right[x] = rep(apart.at(x));

  NameList nodes;
  std::vector<Arc> arcs;
  for (const Name& x : left) nodes.push_back(out.embed_left[x]);
  for (const Name& x : t.nodes()) nodes.push_back(out.embed_right[x]);
  for (const Arc& a : d.arcs()) {
    NameList args;
    for (const Name& x : a.args) args.push_back(out.embed_left.at(x));
    arcs.emplace_back(a.expr, std::move(args));
  }
  for (const Arc& a : t.arcs()) {
    NameList args;
    for (const Name& x : a.args) args.push_back(out.embed_right.at(x));
    arcs.emplace_back(a.expr, std::move(args));
  }
  out.glued = Draft(std::move(nodes), std::move(arcs));
  return out;
}

SliceGlue glue_slice(const Slice& s, const NameList& w, const Slice& t, NameSupply* supply) {
  DraftGlue g = glue_draft(s.under(), w, t, supply);
  NameList dist;
  for (const Name& x : s.dist()) dist.push_back(g.embed_left.at(x));
  return SliceGlue{Slice(std::move(g.glued), std::move(dist)), std::move(g.embed_left),
                   std::move(g.embed_right)};
}

Graph glue_slice(const Slice& s, const NameList& w, const Graph& h, NameSupply* supply) {
  if (w.size() != h.arity())
    throw StructuralError("gluing a " + std::to_string(h.arity()) + "-ary graph along " +
                          std::to_string(w.size()) + " names");
  std::vector<Slice> out;
  for (const Slice& t : h.slices()) out.push_back(glue_slice(s, w, t, supply).glued);
  return Graph(s.arity(), std::move(out));
}

Graph glue_graph(const Graph& g, const NameList& w, const Graph& h, NameSupply* supply) {
  std::vector<Slice> out;
  for (const Slice& s : g.slices()) {
    Graph part = glue_slice(s, w, h, supply);
    out.insert(out.end(), part.slices().begin(), part.slices().end());
  }
  return Graph(g.arity(), std::move(out));
}

NameSet all_nodes(const std::vector<Arc>& arcs) {
  NameSet out;
  for (const Arc& a : arcs) out.insert(a.args.begin(), a.args.end());
  return out;
}

Slice difference_slice(const std::vector<Arc>& arcs, const Arc& a) {
  NameSet names = all_nodes(arcs);
  names.insert(a.args.begin(), a.args.end());
  std::vector<Arc> all = arcs;
  all.emplace_back(Expression::complement(a.expr), a.args);
  return Slice(NameList(names.begin(), names.end()), std::move(all), {});
}

Slice rename_node(const Slice& s, const Name& from, const Name& to) {
  if (!s.under().has_node(from) || !s.under().has_node(to))
    throw StructuralError("rename needs two nodes of the slice");
  if (from == to) return s;
  return rename_in(s, NameMap{{from, to}});
}

Slice rename_nodes(const Slice& s, const NameMap& m) { return rename_in(s, m); }

}  // namespace grefute
