#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "grefute/graph_ops.hpp"
#include "grefute/json_codec.hpp"

namespace grefute {

/// Arc-preserving name map; labels are compared by canonical key.
bool is_morphism(const Draft& src, const Draft& dst, const NameMap& m);

/// Preprocessed morphism target, for many queries against one draft.
class TargetIndex {
 public:
  explicit TargetIndex(Draft dst);
  const Draft& draft() const;
  std::optional<NameMap> find(const Draft& src, const NameMap& fixed = {}) const;
  std::optional<NameMap> find_dist(const Slice& t, const NameList& v) const;
  std::vector<NameMap> enumerate(const Draft& src, std::size_t limit = static_cast<std::size_t>(-1)) const;

  struct Impl;

 private:
  std::shared_ptr<const Impl> impl_;
};

/// All morphisms src -> dst, sorted lexicographically in source-node order.
std::vector<NameMap> enumerate_morphisms(const Draft& src, const Draft& dst,
                                         std::size_t limit = static_cast<std::size_t>(-1));

/// First morphism extending the partial map `fixed`, if any.
std::optional<NameMap> find_morphism(const Draft& src, const Draft& dst, const NameMap& fixed = {});

/// Morphism from t's draft into dst sending dist(t) onto v componentwise.
std::optional<NameMap> find_dist_morphism(const Slice& t, const Draft& dst, const NameList& v);

struct ZeroWitness {
  Arc arc;          // <T-bar, w> in the zero draft
  NameMap morphism; // from T's draft, with dist(T) sent to w
};

std::optional<ZeroWitness> zero_witness(const Draft& d);
inline std::optional<ZeroWitness> is_zero_slice(const Slice& s) { return zero_witness(s.under()); }

struct GraphZero {
  bool zero = true;
  std::vector<std::optional<ZeroWitness>> witnesses;  // parallel to g.slices()
};
GraphZero is_zero_graph(const Graph& g);

/// Re-checks a witness from scratch: the arc is present and complements a slice, the map is a
/// morphism into d and sends the slice's dist onto the arc's arguments.
bool verify_witness(const Draft& d, const ZeroWitness& w);

Json to_json(const NameMap& m);
Json to_json(const ZeroWitness& w);
ZeroWitness witness_from_json(const Json& j);

}  // namespace grefute
