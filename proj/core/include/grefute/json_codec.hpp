#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "grefute/expression.hpp"

namespace grefute {

using Json = nlohmann::json;

Json to_json(const Expression& e);
Json to_json(const Slice& s);
Json to_json(const Graph& g);
Json to_json(const Arc& a);
Json to_json(const NameList& ns);

/// Throws StructuralError (or ParseError for formula text) on malformed input.
Expression expression_from_json(const Json& j);
Slice slice_from_json(const Json& j);
Graph graph_from_json(const Json& j);
Arc arc_from_json(const Json& j);
NameList names_from_json(const Json& j);

/// Accepts a graph, a slice (as singleton graph) or any expression that is one of these.
Graph graph_or_slice_from_json(const Json& j);

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);
/// Digest of the compact JSON encoding.
std::string digest(const Json& j);

}  // namespace grefute
