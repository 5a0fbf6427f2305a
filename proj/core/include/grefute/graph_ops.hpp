#pragma once

#include <map>
#include <vector>

#include "grefute/expression.hpp"

namespace grefute {

using NameMap = std::map<Name, Name>;

Draft add_arc(const Draft& d, const Arc& a);
Slice add_arc(const Slice& s, const Arc& a);
Graph add_arc(const Graph& g, const Arc& a);

struct DraftGlue {
  Draft glued;
  NameMap embed_left;   // nodes of d plus components of w
  NameMap embed_right;  // nodes of t
};

struct SliceGlue {
  Slice glued;
  NameMap embed_left;
  NameMap embed_right;
};

/// Pushout of d + C(w) and the draft of t along w_i ~ dist(t)_i. Nodes of t that clash with
/// the left side are renamed through supply (a private one when null). Each identified class
/// is named after a left-side member when it has one, otherwise after its smallest member.
DraftGlue glue_draft(const Draft& d, const NameList& w, const Slice& t, NameSupply* supply = nullptr);
SliceGlue glue_slice(const Slice& s, const NameList& w, const Slice& t, NameSupply* supply = nullptr);
Graph glue_slice(const Slice& s, const NameList& w, const Graph& h, NameSupply* supply = nullptr);
Graph glue_graph(const Graph& g, const NameList& w, const Graph& h, NameSupply* supply = nullptr);

/// 0-ary slice over the names of arcs and a, with arcs plus the complemented a.
Slice difference_slice(const std::vector<Arc>& arcs, const Arc& a);

/// Replaces from by to in nodes, arc arguments and dist. Embedded slices are left alone.
Slice rename_node(const Slice& s, const Name& from, const Name& to);

/// Renames every node through m (identity where m has no entry).
Slice rename_nodes(const Slice& s, const NameMap& m);

NameSet all_nodes(const std::vector<Arc>& arcs);

}  // namespace grefute
