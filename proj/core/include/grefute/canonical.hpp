#pragma once

#include <string>
#include <vector>

#include "grefute/expression.hpp"

namespace grefute {

/// Free names renamed by their position in args(), bound variables by nesting depth.
Formula canonical_formula(const Formula& f);

std::string canonical_key(const Slice& s);
std::string canonical_key(const Graph& g);
std::string compute_canonical_key(const Expression& e);

/// Node names replaced by n0, n1, ... in canonical order; embedded labels canonicalized too.
Slice canonicalize(const Slice& s);
Graph canonicalize(const Graph& g);
Expression canonicalize(const Expression& e);

bool iso_equal(const Slice& a, const Slice& b);
bool iso_equal(const Graph& a, const Graph& b);

/// Canonical position of each node of s (indexed like s.nodes()).
std::vector<std::size_t> canonical_order(const Slice& s);

}  // namespace grefute
