#include "grefute/matching.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "grefute/error.hpp"

namespace grefute {

bool is_morphism(const Draft& src, const Draft& dst, const NameMap& m) {
  for (const Name& x : src.nodes()) {
    auto it = m.find(x);
    if (it == m.end() || !dst.has_node(it->second)) return false;
  }
  std::set<std::pair<std::string, NameList>> target;
  for (const Arc& a : dst.arcs()) target.emplace(a.expr.canonical_key(), a.args);
  for (const Arc& a : src.arcs()) {
    NameList img;
    for (const Name& x : a.args) img.push_back(m.at(x));
    if (!target.count({a.expr.canonical_key(), img})) return false;
  }
  return true;
}

using Idx = std::vector<std::size_t>;

struct TargetIndex::Impl {
  const Draft* dst = nullptr;
  Draft owned;
  std::map<std::string, int> label_id;
  std::set<std::pair<int, Idx>> arc_set;
  // occupies[label][pos][y]: some arc with that label has node y at position pos
  std::vector<std::vector<std::vector<bool>>> occupies;

  std::size_t index(const Name& x) const {
    const NameList& dn = dst->nodes();
    return static_cast<std::size_t>(std::lower_bound(dn.begin(), dn.end(), x) - dn.begin());
  }
};

TargetIndex::TargetIndex(Draft dst) {
  auto built = std::make_shared<Impl>();
  Impl& m = *built;
  m.owned = std::move(dst);
  m.dst = &m.owned;
  const std::size_t n = m.dst->nodes().size();
  for (const Arc& a : m.dst->arcs()) {
    int id = m.label_id.emplace(a.expr.canonical_key(), static_cast<int>(m.label_id.size())).first->second;
    if (static_cast<std::size_t>(id) == m.occupies.size())
      m.occupies.emplace_back(a.args.size(), std::vector<bool>(n, false));
    Idx t;
    for (std::size_t p = 0; p < a.args.size(); ++p) {
      t.push_back(m.index(a.args[p]));
      m.occupies[id][p][t.back()] = true;
    }
    m.arc_set.emplace(id, std::move(t));
  }
  impl_ = std::move(built);
}

const Draft& TargetIndex::draft() const { return *impl_->dst; }

namespace {

class Matcher {
 public:
  Matcher(const Draft& src, const TargetIndex::Impl& dst) : src_(src), dst_(dst) {
    const NameList& sn = src.nodes();
    const std::size_t dn = dst.dst->nodes().size();
    degree_.assign(sn.size(), 0);
    for (const Arc& a : src.arcs()) {
      auto it = dst.label_id.find(a.expr.canonical_key());
      int id = it == dst.label_id.end() ? -1 : it->second;
      if (id < 0) impossible_ = true;
      Idx t;
      for (const Name& x : a.args) {
        t.push_back(src_index(x));
        ++degree_[t.back()];
      }
      src_arcs_.emplace_back(id, std::move(t));
    }
    if (impossible_) return;

    // Unary domains: positions a node occupies must be occupiable by its image.
    std::vector<char> ok(sn.size() * dn, 1);
    for (const auto& [id, args] : src_arcs_)
      for (std::size_t p = 0; p < args.size(); ++p) {
        const std::vector<bool>& occ = dst.occupies[id][p];
        char* row = ok.data() + args[p] * dn;
        for (std::size_t y = 0; y < dn; ++y) row[y] = row[y] && occ[y];
      }
    domain_.assign(sn.size(), {});
    for (std::size_t v = 0; v < sn.size(); ++v) {
      domain_[v].reserve(dn);
      for (std::size_t y = 0; y < dn; ++y)
        if (ok[v * dn + y]) domain_[v].push_back(y);
    }
  }

  // fixed: src index -> dst index
  template <class Emit>
  void run(const std::map<std::size_t, std::size_t>& fixed, Emit&& emit) {
    if (impossible_) return;
    const std::size_t n = src_.nodes().size();
    image_.assign(n, SIZE_MAX);
    for (auto [v, y] : fixed) {
      if (!std::binary_search(domain_[v].begin(), domain_[v].end(), y)) return;
      image_[v] = y;
    }
    order_.clear();
    for (std::size_t v = 0; v < n; ++v)
      if (!fixed.count(v)) order_.push_back(v);
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      if (degree_[a] != degree_[b]) return degree_[a] > degree_[b];
      return domain_[a].size() < domain_[b].size();
    });
    std::vector<std::size_t> pos(n, 0);
    for (std::size_t k = 0; k < order_.size(); ++k) pos[order_[k]] = k + 1;
    ready_.assign(order_.size() + 1, {});
    for (std::size_t ai = 0; ai < src_arcs_.size(); ++ai) {
      std::size_t last = 0;
      for (std::size_t v : src_arcs_[ai].second) last = std::max(last, pos[v]);
      ready_[last].push_back(ai);
    }
    for (std::size_t ai : ready_[0])
      if (!arc_ok(ai)) return;
    stop_ = false;
    search(0, emit);
  }

  std::size_t src_index(const Name& x) const {
    const NameList& sn = src_.nodes();
    return static_cast<std::size_t>(std::lower_bound(sn.begin(), sn.end(), x) - sn.begin());
  }
  NameMap current() const {
    NameMap m;
    for (std::size_t v = 0; v < image_.size(); ++v) m[src_.nodes()[v]] = dst_.dst->nodes()[image_[v]];
    return m;
  }

 private:
  const Draft& src_;
  const TargetIndex::Impl& dst_;
  std::vector<std::pair<int, Idx>> src_arcs_;
  std::vector<std::size_t> degree_;
  std::vector<std::vector<std::size_t>> domain_;
  std::vector<std::size_t> image_;
  std::vector<std::size_t> order_;
  std::vector<std::vector<std::size_t>> ready_;
  Idx scratch_;
  bool impossible_ = false;
  bool stop_ = false;

  bool arc_ok(std::size_t ai) {
    const auto& [id, args] = src_arcs_[ai];
    scratch_.clear();
    for (std::size_t v : args) scratch_.push_back(image_[v]);
    // the pair copy is cheap next to a tree lookup; keeps arc_set a plain std::set
    return dst_.arc_set.count({id, scratch_}) > 0;
  }

  template <class Emit>
  void search(std::size_t depth, Emit& emit) {
    if (stop_) return;
    if (depth == order_.size()) {
      if (!emit(*this)) stop_ = true;
      return;
    }
    std::size_t v = order_[depth];
    for (std::size_t y : domain_[v]) {
      image_[v] = y;
      bool ok = true;
      for (std::size_t ai : ready_[depth + 1])
        if (!arc_ok(ai)) {
          ok = false;
          break;
        }
      if (ok) search(depth + 1, emit);
      if (stop_) return;
    }
    image_[v] = SIZE_MAX;
  }
};

}  // namespace

std::optional<NameMap> TargetIndex::find(const Draft& src, const NameMap& fixed) const {
  Matcher m(src, *impl_);
  std::map<std::size_t, std::size_t> fx;
  for (const auto& [a, b] : fixed) {
    if (!src.has_node(a) || !impl_->dst->has_node(b)) return std::nullopt;
    fx[m.src_index(a)] = impl_->index(b);
  }
  std::optional<NameMap> found;
  m.run(fx, [&](const Matcher& mm) {
    found = mm.current();
    return false;
  });
  return found;
}

std::optional<NameMap> TargetIndex::find_dist(const Slice& t, const NameList& v) const {
  if (v.size() != t.arity()) return std::nullopt;
  NameMap fixed;
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto [it, fresh] = fixed.emplace(t.dist()[i], v[i]);
    if (!fresh && it->second != v[i]) return std::nullopt;
  }
  return find(t.under(), fixed);
}

std::vector<NameMap> TargetIndex::enumerate(const Draft& src, std::size_t limit) const {
  std::vector<NameMap> out;
  if (limit == 0) return out;
  Matcher m(src, *impl_);
  m.run({}, [&](const Matcher& mm) {
    out.push_back(mm.current());
    return out.size() < limit;
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NameMap> enumerate_morphisms(const Draft& src, const Draft& dst, std::size_t limit) {
  return TargetIndex(dst).enumerate(src, limit);
}

std::optional<NameMap> find_morphism(const Draft& src, const Draft& dst, const NameMap& fixed) {
  return TargetIndex(dst).find(src, fixed);
}

std::optional<NameMap> find_dist_morphism(const Slice& t, const Draft& dst, const NameList& v) {
  return TargetIndex(dst).find_dist(t, v);
}

std::optional<ZeroWitness> zero_witness(const Draft& d) {
  std::optional<TargetIndex> idx;
  for (const Arc& a : d.arcs()) {
    if (!a.expr.is_cmpl_slice()) continue;
    if (!idx) idx.emplace(d);
    if (auto h = idx->find_dist(a.expr.operand().slice(), a.args))
      return ZeroWitness{a, std::move(*h)};
  }
  return std::nullopt;
}

GraphZero is_zero_graph(const Graph& g) {
  GraphZero out;
  for (const Slice& s : g.slices()) {
    out.witnesses.push_back(is_zero_slice(s));
    if (!out.witnesses.back()) out.zero = false;
  }
  return out;
}

bool verify_witness(const Draft& d, const ZeroWitness& w) {
  if (!w.arc.expr.is_cmpl_slice()) return false;
  bool present = false;
  for (const Arc& a : d.arcs())
    if (a.args == w.arc.args && a.expr.canonical_key() == w.arc.expr.canonical_key()) present = true;
  if (!present) return false;
  const Slice& t = w.arc.expr.operand().slice();
  if (!is_morphism(t.under(), d, w.morphism)) return false;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    auto it = w.morphism.find(t.dist()[i]);
    if (it == w.morphism.end() || it->second != w.arc.args[i]) return false;
  }
  return true;
}

Json to_json(const NameMap& m) {
  Json j = Json::object();
  for (const auto& [a, b] : m) j[a.text()] = b.text();
  return j;
}

Json to_json(const ZeroWitness& w) { return Json{{"arc", to_json(w.arc)}, {"morphism", to_json(w.morphism)}}; }

ZeroWitness witness_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("arc") || !j.contains("morphism"))
    throw StructuralError("witness needs \"arc\" and \"morphism\"");
  NameMap m;
  for (const auto& [k, v] : j.at("morphism").items()) {
    if (!v.is_string()) throw StructuralError("morphism values must be names");
    m[Name(k)] = Name(v.get<std::string>());
  }
  return ZeroWitness{arc_from_json(j.at("arc")), std::move(m)};
}

}  // namespace grefute
