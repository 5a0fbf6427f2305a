#pragma once

#include <string>

#include "grefute/expression.hpp"

namespace grefute {

/// Graphviz text. Slices are solid clusters, graphs dashed clusters, complemented labels get a
/// "¬" cluster label. Names are circles; a distinguished name carries its dist positions, so
/// dist [u,v,u] reads u^{1,3} and v^{2}. Each arc is a box (or an anchor point inside the
/// cluster of its label) with one edge per argument, numbered when the arity exceeds one.
std::string render_dot(const Draft& d);
std::string render_dot(const Slice& s);
std::string render_dot(const Graph& g);
std::string render_dot(const Expression& e);

}  // namespace grefute
