#include "grefute/prover.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <set>

#include "grefute/error.hpp"
#include "grefute/graph_ops.hpp"

namespace grefute {

namespace {

using Clock = std::chrono::steady_clock;

void collect_complemented(const Expression& e, std::map<std::string, Slice>& out);

void collect_complemented(const Slice& s, std::map<std::string, Slice>& out) {
  for (const Arc& a : s.arcs()) collect_complemented(a.expr, out);
}

void collect_complemented(const Expression& e, std::map<std::string, Slice>& out) {
  switch (e.kind()) {
    case Expression::Kind::Pred:
    case Expression::Kind::Frm:
      return;
    case Expression::Kind::Sl:
      collect_complemented(e.slice(), out);
      return;
    case Expression::Kind::Gr:
      for (const Slice& s : e.graph().slices()) collect_complemented(s, out);
      return;
    case Expression::Kind::Cmpl:
      if (e.operand().kind() == Expression::Kind::Sl) {
        const std::string& k = e.operand().canonical_key();
        if (!out.count(k)) {
          out.emplace(k, e.operand().slice());
          collect_complemented(e.operand().slice(), out);
        }
        return;
      }
      collect_complemented(e.operand(), out);
      return;
  }
}

std::string tuple_key(const NameList& v) {
  std::string k;
  for (const Name& n : v) {
    k += n.text();
    k += '\x1f';
  }
  return k;
}

// (canonical key of T, args) for every complemented-slice arc of s
std::set<std::pair<std::string, std::string>> complement_arcs(const Slice& s) {
  std::set<std::pair<std::string, std::string>> out;
  for (const Arc& a : s.arcs())
    if (a.expr.is_cmpl_slice()) out.emplace(a.expr.operand().canonical_key(), tuple_key(a.args));
  return out;
}

bool decided_with(const TargetIndex& s, const Slice& t, const std::string& tkey, const NameList& v,
                  const std::set<std::pair<std::string, std::string>>& carcs) {
  if (carcs.count({tkey, tuple_key(v)})) return true;
  return s.find_dist(t, v).has_value();
}

std::string cand_key(std::size_t t, const NameList& v) { return std::to_string(t) + ':' + tuple_key(v); }

Slice with_node(const Slice& s, const Name& n) {
  NameList nodes = s.nodes();
  nodes.push_back(n);
  return Slice(sorted_unique(std::move(nodes)), s.arcs(), s.dist());
}

Name pad_name(const Slice& s) {
  NameSupply supply;
  return supply.fresh(components(s.nodes()), "n");
}

// Visits candidate tuples level by level: a tuple's level is the newest generation among its
// components. Within a level, slices in canonical order, tuples lexicographically.
template <class Visit>
bool for_each_tuple(const Slice& s, const std::map<Name, int>& gen, const std::vector<Slice>& ts,
                    Visit&& visit) {
  std::set<int> levels;
  for (const Name& n : s.nodes()) {
    auto it = gen.find(n);
    levels.insert(it == gen.end() ? 0 : it->second);
  }
  if (levels.empty()) levels.insert(0);
  auto gen_of = [&](const Name& n) {
    auto it = gen.find(n);
    return it == gen.end() ? 0 : it->second;
  };
  for (int level : levels) {
    NameList pool;
    for (const Name& n : s.nodes())
      if (gen_of(n) <= level) pool.push_back(n);
    for (std::size_t ti = 0; ti < ts.size(); ++ti) {
      const std::size_t r = ts[ti].arity();
      if (r == 0) {
        if (level != *levels.begin()) continue;
        if (!visit(ti, NameList{})) return false;
        continue;
      }
      if (pool.empty()) continue;
      std::vector<std::size_t> idx(r, 0);
      for (;;) {
        NameList v(r);
        int top = -1;
        for (std::size_t i = 0; i < r; ++i) {
          v[i] = pool[idx[i]];
          top = std::max(top, gen_of(v[i]));
        }
        if (top == level && !visit(ti, v)) return false;
        std::size_t i = r;
        while (i > 0) {
          --i;
          if (++idx[i] < pool.size()) break;
          idx[i] = 0;
          if (i == 0) goto next_slice;
        }
      }
    next_slice:;
    }
  }
  return true;
}

enum class Outcome { Closed, Open, Unknown };

struct Branch {
  Slice s;
  std::map<Name, int> gen;
  std::set<std::string> done;  // candidates known decided
  int depth = 0;
};

class Search {
 public:
  Search(const Budget& b, Verdict& out) : budget_(b), out_(out), start_(Clock::now()) {}

  Outcome refute(const Slice& root, const std::string& id) {
    std::map<std::string, Slice> found;
    collect_complemented(root, found);
    ts_.clear();
    tkeys_.clear();
    for (auto& [k, t] : found) {
      ts_.push_back(t);
      tkeys_.push_back(k);
    }
    Slice s = root;
    if (auto w = is_zero_slice(s)) {
      erase(id, *w);
      return Outcome::Closed;
    }
    if (s.nodes().empty()) {
      Name p = pad_name(s);
      DerivationEvent e{DerivationEvent::Kind::Pad, id, {}, {}, {}, {}, p};
      out_.trace.events.push_back(std::move(e));
      s = with_node(s, p);
    }
    Branch b{s, {}, {}, 0};
    for (const Name& n : s.nodes()) b.gen[n] = 0;

    // shallow proofs first, so small refutations come out minimal
    const std::size_t share = std::min<std::size_t>(budget_.max_expansions / 4, 2000);
    for (int depth = 1; depth <= 2; ++depth) {
      std::vector<DerivationEvent> local;
      phase1_left_ = share;
      if (closes(b.s, b.gen, id, depth, local)) {
        for (auto& e : local) out_.trace.events.push_back(std::move(e));
        return Outcome::Closed;
      }
      if (phase1_left_ == 0 || out_of_budget()) break;
    }
    return explore(std::move(b), id);
  }

  std::size_t frontier = 0;
  std::string stop_reason;

 private:
  const Budget& budget_;
  Verdict& out_;
  Clock::time_point start_;
  std::vector<Slice> ts_;
  std::vector<std::string> tkeys_;
  std::size_t phase1_left_ = 0;

  bool out_of_budget() {
    if (out_.stats.expansions >= budget_.max_expansions) {
      if (stop_reason.empty()) stop_reason = "expansion budget exhausted";
      return true;
    }
    std::chrono::duration<double> el = Clock::now() - start_;
    if (el.count() >= budget_.max_wall_time) {
      if (stop_reason.empty()) stop_reason = "time budget exhausted";
      return true;
    }
    return false;
  }

  void erase(const std::string& id, const ZeroWitness& w) {
    DerivationEvent e{DerivationEvent::Kind::Erase, id, {}, {}, {}, w, {}};
    out_.trace.events.push_back(std::move(e));
  }

  // First undecided candidate in fairness order; decided ones found on the way are cached.
  // Sets interrupted when the budget runs out mid-scan.
  std::optional<Candidate> next(Branch& b, bool& interrupted) {
    auto carcs = complement_arcs(b.s);
    TargetIndex idx(b.s.under());
    std::optional<Candidate> pick;
    std::size_t visited = 0;
    interrupted = false;
    for_each_tuple(b.s, b.gen, ts_, [&](std::size_t ti, const NameList& v) {
      if (++visited % 512 == 0 && out_of_budget()) {
        interrupted = true;
        return false;
      }
      std::string k = cand_key(ti, v);
      if (b.done.count(k)) return true;
      if (decided_with(idx, ts_[ti], tkeys_[ti], v, carcs)) {
        b.done.insert(k);
        return true;
      }
      pick = Candidate{ti, v};
      return false;
    });
    return pick;
  }

  std::vector<Candidate> undecided(const Slice& s, const std::map<Name, int>& gen, std::size_t limit) {
    auto carcs = complement_arcs(s);
    TargetIndex idx(s.under());
    std::vector<Candidate> out;
    std::size_t visited = 0;
    for_each_tuple(s, gen, ts_, [&](std::size_t ti, const NameList& v) {
      if (++visited % 512 == 0 && out_of_budget()) return false;
      if (!decided_with(idx, ts_[ti], tkeys_[ti], v, carcs)) out.push_back({ti, v});
      return out.size() < limit;
    });
    return out;
  }

  std::map<Name, int> child_gen(const std::map<Name, int>& gen, const Slice& child,
                                const NameMap& embed_left, int level) {
    std::map<Name, int> g;
    for (const auto& [n, k] : gen) {
      auto it = embed_left.find(n);
      Name m = it == embed_left.end() ? n : it->second;
      auto [pos, fresh] = g.emplace(m, k);
      if (!fresh) pos->second = std::min(pos->second, k);
    }
    for (const Name& n : child.nodes())
      if (!g.count(n)) g[n] = level;
    return g;
  }

  bool closes(const Slice& s, const std::map<Name, int>& gen, const std::string& id, int depth,
              std::vector<DerivationEvent>& ev) {
    if (auto w = is_zero_slice(s)) {
      ev.push_back({DerivationEvent::Kind::Erase, id, {}, {}, {}, *w, {}});
      return true;
    }
    if (depth == 0 || s.nodes().size() > budget_.max_slice_nodes) return false;
    for (const Candidate& c : undecided(s, gen, 256)) {
      if (phase1_left_ == 0 || out_of_budget()) return false;
      --phase1_left_;
      ++out_.stats.expansions;
      const Slice& t = ts_[c.t_index];
      SliceGlue sg = glue_slice(s, c.v, t);
      Slice right = add_arc(s, Arc(Expression::complement(Expression::slice(t)), c.v));
      out_.stats.max_nodes = std::max(out_.stats.max_nodes, sg.glued.nodes().size());
      std::vector<DerivationEvent> sub;
      const std::string lid = id + ".0", rid = id + ".1";
      if (!closes(right, gen, rid, depth - 1, sub)) continue;
      auto lgen = child_gen(gen, sg.glued, sg.embed_left, static_cast<int>(id.size()));
      if (!closes(sg.glued, lgen, lid, depth - 1, sub)) continue;
      ev.push_back({DerivationEvent::Kind::Expand, id, t, c.v, {lid, rid}, {}, {}});
      for (auto& e : sub) ev.push_back(std::move(e));
      return true;
    }
    return false;
  }

  Outcome explore(Branch b, const std::string& id) {
    // budget first: unwinding after a stop must not pay for a zero check per pending branch
    if (out_of_budget()) {
      ++frontier;
      return Outcome::Unknown;
    }
    if (auto w = is_zero_slice(b.s)) {
      erase(id, *w);
      return Outcome::Closed;
    }
    bool interrupted = false;
    std::optional<Candidate> c = next(b, interrupted);
    if (interrupted) {
      ++frontier;
      return Outcome::Unknown;
    }
    if (!c) {
      std::optional<FiniteModel> m = extract_countermodel(b.s);
      if (!m) {
        // the oracle disagrees with the saturation argument; never claim a model then
        stop_reason = "saturated slice " + id + " failed the model check";
        ++frontier;
        return Outcome::Unknown;
      }
      out_.trace.events.push_back({DerivationEvent::Kind::Saturate, id, {}, {}, {}, {}, {}});
      out_.model = std::move(m);
      out_.open_slice = b.s;
      out_.open_slice_id = id;
      return Outcome::Open;
    }
    if (b.s.nodes().size() >= budget_.max_slice_nodes) {
      if (stop_reason.empty()) stop_reason = "slice node limit reached";
      ++frontier;
      return Outcome::Unknown;
    }
    const Slice& t = ts_[c->t_index];
    ++out_.stats.expansions;
    SliceGlue sg = glue_slice(b.s, c->v, t);
    out_.stats.max_nodes = std::max(out_.stats.max_nodes, sg.glued.nodes().size());
    const std::string lid = id + ".0", rid = id + ".1";
    out_.trace.events.push_back({DerivationEvent::Kind::Expand, id, t, c->v, {lid, rid}, {}, {}});

    const std::string ck = cand_key(c->t_index, c->v);
    Branch right{add_arc(b.s, Arc(Expression::complement(Expression::slice(t)), c->v)), b.gen, b.done,
                 b.depth + 1};
    right.done.insert(ck);

    Branch left{sg.glued, child_gen(b.gen, sg.glued, sg.embed_left, b.depth + 1), {}, b.depth + 1};
    for (const std::string& k : b.done) {
      // keys are "t:v"; decided candidates stay decided under the embedding
      auto colon = k.find(':');
      std::size_t ti = std::stoul(k.substr(0, colon));
      NameList v;
      std::string rest = k.substr(colon + 1), cur;
      for (char ch : rest) {
        if (ch == '\x1f') {
          auto it = sg.embed_left.find(Name(cur));
          v.push_back(it == sg.embed_left.end() ? Name(cur) : it->second);
          cur.clear();
        } else {
          cur += ch;
        }
      }
      left.done.insert(cand_key(ti, v));
    }
    {
      NameList v;
      for (const Name& n : c->v) {
        auto it = sg.embed_left.find(n);
        v.push_back(it == sg.embed_left.end() ? n : it->second);
      }
      left.done.insert(cand_key(c->t_index, v));
    }
    b = Branch{};  // release before recursing

    Outcome r = explore(std::move(right), rid);
    if (r == Outcome::Open) return r;
    Outcome l = explore(std::move(left), lid);
    if (l == Outcome::Open) return l;
    return (r == Outcome::Closed && l == Outcome::Closed) ? Outcome::Closed : Outcome::Unknown;
  }
};

}  // namespace

std::vector<Slice> complemented_slices(const Slice& s) {
  std::map<std::string, Slice> found;
  collect_complemented(s, found);
  std::vector<Slice> out;
  for (auto& [k, t] : found) out.push_back(t);
  return out;
}

bool decided(const Slice& s, const Slice& t, const NameList& v) {
  return decided_with(TargetIndex(s.under()), t, Expression::slice(t).canonical_key(), v, complement_arcs(s));
}

std::vector<Candidate> undecided_candidates(const Slice& s, const std::vector<Slice>& ts,
                                            std::size_t limit) {
  std::map<Name, int> gen;
  auto carcs = complement_arcs(s);
  TargetIndex idx(s.under());
  std::vector<std::string> keys;
  for (const Slice& t : ts) keys.push_back(Expression::slice(t).canonical_key());
  std::vector<Candidate> out;
  if (limit == 0) return out;
  for_each_tuple(s, gen, ts, [&](std::size_t ti, const NameList& v) {
    if (!decided_with(idx, ts[ti], keys[ti], v, carcs)) out.push_back({ti, v});
    return out.size() < limit;
  });
  return out;
}

bool saturated(const Slice& s) { return undecided_candidates(s, complemented_slices(s), 1).empty(); }

Expansion expand(const Slice& s, const Slice& t, const NameList& v) {
  if (v.size() != t.arity()) throw StructuralError("expansion tuple does not match the slice arity");
  for (const Name& n : v)
    if (!s.under().has_node(n)) throw StructuralError("expansion tuple names " + n.text() + ", not a node");
  SliceGlue sg = glue_slice(s, v, t);
  return {sg.glued, add_arc(s, Arc(Expression::complement(Expression::slice(t)), v))};
}

FiniteModel natural_model(const Slice& s) {
  FiniteModel m;
  for (const Name& n : s.nodes()) m.universe.push_back(n.text());
  const std::size_t size = m.universe.size();
  for (const PredSym& p : predicates_of(s)) m.interp.emplace(p, Relation(size, p.arity));
  for (const Arc& a : s.arcs()) {
    if (!a.expr.is_pred() || a.expr.is_equality()) continue;
    Tuple t;
    for (const Name& n : a.args) t.push_back(m.element(n.text()));
    m.interp.at(a.expr.pred()).insert(t);
  }
  return m;
}

Assignment identity_assignment(const Slice& s, const FiniteModel& m) {
  Assignment g;
  for (const Name& n : s.nodes()) g[n] = m.element(n.text());
  return g;
}

std::optional<FiniteModel> extract_countermodel(const Slice& s) {
  if (s.nodes().empty() || is_zero_slice(s) || !saturated(s)) return std::nullopt;
  FiniteModel m = natural_model(s);
  Evaluator ev(m);
  Assignment id = identity_assignment(s, m);
  for (const Arc& a : s.arcs())
    if (!ev.satisfies(id, a)) return std::nullopt;
  return m;
}

std::string verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::Null: return "NULL";
    case VerdictKind::NotNull: return "NOT_NULL";
    case VerdictKind::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

std::size_t Verdict::expansion_count() const {
  return static_cast<std::size_t>(std::count_if(trace.events.begin(), trace.events.end(), [](const auto& e) {
    return e.kind == DerivationEvent::Kind::Expand;
  }));
}

LabelledSlices label_slices(const Graph& g) {
  LabelledSlices out;
  for (std::size_t i = 0; i < g.slices().size(); ++i) out.emplace_back(std::to_string(i), g.slices()[i]);
  return out;
}

Verdict prove_slices(const LabelledSlices& slices, const Budget& budget) {
  auto t0 = Clock::now();
  Verdict out;
  Search search(budget, out);
  bool unknown = false;
  for (const auto& [id, slice] : slices) {
    Outcome r = search.refute(slice, id);
    if (r == Outcome::Open) {
      out.kind = VerdictKind::NotNull;
      const FiniteModel& m = *out.model;
      Assignment id = identity_assignment(*out.open_slice, m);
      for (const Name& n : out.open_slice->dist()) out.witness.push_back(id.at(n));
      out.assignment = std::move(id);
      break;
    }
    if (r == Outcome::Unknown) unknown = true;
  }
  if (out.kind != VerdictKind::NotNull) {
    out.kind = unknown ? VerdictKind::Unknown : VerdictKind::Null;
    if (unknown) out.reason = search.stop_reason.empty() ? "search incomplete" : search.stop_reason;
  }
  out.stats.frontier = search.frontier;
  out.stats.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return out;
}

Slice consequence_slice(const std::vector<Formula>& premises, const Formula& conclusion) {
  std::vector<Arc> arcs;
  for (const Formula& p : premises) arcs.push_back(formula_arc(p));
  return difference_slice(arcs, formula_arc(conclusion));
}

Verdict check_consequence(const std::vector<Formula>& premises, const Formula& conclusion,
                          const Budget& budget) {
  BasicForm bf = to_basic(Expression::slice(consequence_slice(premises, conclusion)));
  Verdict v = prove_null(bf.graph, budget);
  v.trace.conversion = std::move(bf.trace);
  if (v.kind != VerdictKind::NotNull) return v;

  // Read the free names of the problem back into the model and confirm the counterexample.
  FiniteModel m = *v.model;
  std::set<Name> names;
  auto absorb = [&](const Formula& f) {
    for (const PredSym& p : f.predicates())
      if (!p.is_equality() && !m.interp.count(p)) m.interp.emplace(p, Relation(m.size(), p.arity));
    for (const Name& n : f.free_names()) names.insert(n);
  };
  for (const Formula& p : premises) absorb(p);
  absorb(conclusion);

  auto refutes = [&](const Assignment& g) {
    for (const Formula& p : premises)
      if (!eval_formula(p, m, g)) return false;
    return !eval_formula(conclusion, m, g);
  };
  NameList free(names.begin(), names.end());
  Assignment g;
  bool found = false;
  // names that survived normalization usually sit on their own node
  for (const Name& n : free) g[n] = std::max(0, m.element(n.text()));
  if (refutes(g)) {
    found = true;
  } else {
    std::vector<int> vals(free.size(), 0);
    const int n = static_cast<int>(m.size());
    for (;;) {
      for (std::size_t i = 0; i < free.size(); ++i) g[free[i]] = vals[i];
      if (refutes(g)) {
        found = true;
        break;
      }
      std::size_t i = 0;
      while (i < vals.size() && ++vals[i] == n) vals[i++] = 0;
      if (i == vals.size()) break;
    }
  }
  if (!found) {
    v.kind = VerdictKind::Unknown;
    v.reason = "countermodel does not falsify the consequence";
    v.model.reset();
    return v;
  }
  v.model = std::move(m);
  v.assignment = std::move(g);
  return v;
}

LabelledSlices replay_derivation(LabelledSlices slices, const std::vector<DerivationEvent>& events) {
  std::map<std::string, Slice> live;
  for (auto& [id, s] : slices)
    if (!live.emplace(id, std::move(s)).second) throw StructuralError("duplicate slice id " + id);
  auto get = [&](const std::string& id) -> std::map<std::string, Slice>::iterator {
    auto it = live.find(id);
    if (it == live.end()) throw StructuralError("derivation refers to unknown slice " + id);
    return it;
  };
  for (const DerivationEvent& e : events) {
    auto it = get(e.slice);
    switch (e.kind) {
      case DerivationEvent::Kind::Erase:
        if (!e.witness || !verify_witness(it->second.under(), *e.witness))
          throw StructuralError("erasure of " + e.slice + " is not justified");
        live.erase(it);
        break;
      case DerivationEvent::Kind::Pad:
        if (!e.pad || it->second.under().has_node(*e.pad))
          throw StructuralError("bad pad node for " + e.slice);
        it->second = with_node(it->second, *e.pad);
        break;
      case DerivationEvent::Kind::Expand: {
        if (!e.t || e.children.size() != 2) throw StructuralError("malformed expansion");
        Expansion x = expand(it->second, *e.t, e.v);
        live.erase(it);
        if (!live.emplace(e.children[0], x.glued).second || !live.emplace(e.children[1], x.complemented).second)
          throw StructuralError("expansion reuses a slice id");
        break;
      }
      case DerivationEvent::Kind::Saturate:
        if (!saturated(it->second)) throw StructuralError("slice " + e.slice + " is not saturated");
        break;
    }
  }
  return {live.begin(), live.end()};
}

namespace {
const char* kind_name(DerivationEvent::Kind k) {
  switch (k) {
    case DerivationEvent::Kind::Erase: return "erase";
    case DerivationEvent::Kind::Pad: return "pad";
    case DerivationEvent::Kind::Expand: return "expand";
    case DerivationEvent::Kind::Saturate: return "saturate";
  }
  return "?";
}
}  // namespace

Json to_json(const DerivationEvent& e) {
  Json body{{"slice", e.slice}};
  if (e.kind == DerivationEvent::Kind::Expand) {
    body["t"] = to_json(*e.t);
    body["v"] = to_json(e.v);
    body["children"] = e.children;
  }
  if (e.witness) body["witness"] = to_json(*e.witness);
  if (e.pad) body["node"] = e.pad->text();
  return Json{{kind_name(e.kind), body}};
}

DerivationEvent event_from_json(const Json& j) {
  if (!j.is_object() || j.size() != 1) throw StructuralError("derivation event must be a one-key object");
  const std::string k = j.begin().key();
  const Json& b = j.begin().value();
  if (!b.is_object() || !b.contains("slice") || !b.at("slice").is_string())
    throw StructuralError("derivation event needs a \"slice\" id");
  DerivationEvent e{};
  e.slice = b.at("slice").get<std::string>();
  if (k == "erase") {
    e.kind = DerivationEvent::Kind::Erase;
    e.witness = witness_from_json(b.at("witness"));
  } else if (k == "pad") {
    e.kind = DerivationEvent::Kind::Pad;
    e.pad = Name(b.at("node").get<std::string>());
  } else if (k == "expand") {
    e.kind = DerivationEvent::Kind::Expand;
    e.t = slice_from_json(b.at("t"));
    e.v = names_from_json(b.at("v"));
    e.children = b.at("children").get<std::vector<std::string>>();
  } else if (k == "saturate") {
    e.kind = DerivationEvent::Kind::Saturate;
  } else {
    throw StructuralError("unknown derivation event " + k);
  }
  return e;
}

bool is_event_json(const Json& j) {
  if (!j.is_object() || j.size() != 1) return false;
  const std::string& k = j.begin().key();
  return k == "erase" || k == "pad" || k == "expand" || k == "saturate";
}

Json to_json(const DerivationTrace& t) {
  Json out = Json::array();
  for (const ConversionStep& s : t.conversion) out.push_back(to_json(s));
  for (const DerivationEvent& e : t.events) out.push_back(to_json(e));
  return out;
}

DerivationTrace trace_from_json(const Json& j) {
  if (!j.is_array()) throw StructuralError("trace must be an array");
  DerivationTrace t;
  for (const Json& x : j) {
    if (is_event_json(x)) {
      t.events.push_back(event_from_json(x));
    } else {
      if (!t.events.empty()) throw StructuralError("conversion step after a derivation event");
      t.conversion.push_back(step_from_json(x));
    }
  }
  return t;
}

Json to_json(const ProofStats& s) {
  return Json{{"expansions", s.expansions}, {"frontier", s.frontier}, {"maxNodes", s.max_nodes},
              {"seconds", s.seconds}};
}

Json to_json(const Verdict& v) {
  Json j{{"verdict", verdict_name(v.kind)}, {"trace", to_json(v.trace)}, {"stats", to_json(v.stats)}};
  if (v.model) {
    j["model"] = to_json(*v.model);
    j["assignment"] = to_json(v.assignment, *v.model);
    j["witness"] = v.witness;
  }
  if (v.open_slice) {
    j["openSlice"] = to_json(*v.open_slice);
    j["openSliceId"] = v.open_slice_id;
  }
  if (!v.reason.empty()) j["reason"] = v.reason;
  return j;
}

}  // namespace grefute
