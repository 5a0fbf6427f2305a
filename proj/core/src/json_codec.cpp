#include "grefute/json_codec.hpp"

#include <cstdio>

#include "grefute/error.hpp"
#include "grefute/syntax.hpp"

namespace grefute {

Json to_json(const NameList& ns) {
  Json a = Json::array();
  for (const Name& n : ns) a.push_back(n.text());
  return a;
}

Json to_json(const Arc& a) { return Json{{"expr", to_json(a.expr)}, {"args", to_json(a.args)}}; }

Json to_json(const Slice& s) {
  Json arcs = Json::array();
  for (const Arc& a : s.arcs()) arcs.push_back(to_json(a));
  return Json{{"kind", "slice"}, {"nodes", to_json(s.nodes())}, {"arcs", arcs}, {"dist", to_json(s.dist())}};
}

Json to_json(const Graph& g) {
  Json slices = Json::array();
  for (const Slice& s : g.slices()) slices.push_back(to_json(s));
  return Json{{"kind", "graph"}, {"arity", g.arity()}, {"slices", slices}};
}

Json to_json(const Expression& e) {
  switch (e.kind()) {
    case Expression::Kind::Pred:
      return Json{{"kind", "pred"}, {"name", e.pred().name}, {"arity", e.pred().arity}};
    case Expression::Kind::Frm:
      return Json{{"kind", "formula"}, {"text", render_formula(e.formula())}};
    case Expression::Kind::Sl:
      return to_json(e.slice());
    case Expression::Kind::Gr:
      return to_json(e.graph());
    case Expression::Kind::Cmpl:
      return Json{{"kind", "cmpl"}, {"of", to_json(e.operand())}};
  }
  return nullptr;
}

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw StructuralError(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

std::string kind_of(const Json& j) {
  const Json& k = field(j, "kind");
  if (!k.is_string()) throw StructuralError("\"kind\" must be a string");
  return k.get<std::string>();
}

std::size_t natural(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw StructuralError(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

}  // namespace

NameList names_from_json(const Json& j) {
  if (!j.is_array()) throw StructuralError("name list must be an array");
  NameList out;
  for (const Json& x : j) {
    if (!x.is_string() || x.get<std::string>().empty())
      throw StructuralError("names must be non-empty strings");
    out.emplace_back(x.get<std::string>());
  }
  return out;
}

Arc arc_from_json(const Json& j) {
  return Arc(expression_from_json(field(j, "expr")), names_from_json(field(j, "args")));
}

Slice slice_from_json(const Json& j) {
  if (kind_of(j) != "slice") throw StructuralError("expected a slice");
  const Json& arcs = field(j, "arcs");
  if (!arcs.is_array()) throw StructuralError("\"arcs\" must be an array");
  std::vector<Arc> as;
  for (const Json& a : arcs) as.push_back(arc_from_json(a));
  return Slice(names_from_json(field(j, "nodes")), std::move(as), names_from_json(field(j, "dist")));
}

Graph graph_from_json(const Json& j) {
  if (kind_of(j) != "graph") throw StructuralError("expected a graph");
  const Json& ss = field(j, "slices");
  if (!ss.is_array()) throw StructuralError("\"slices\" must be an array");
  std::vector<Slice> slices;
  for (const Json& s : ss) slices.push_back(slice_from_json(s));
  std::size_t arity = 0;
  if (j.contains("arity"))
    arity = natural(j.at("arity"), "\"arity\"");
  else if (!slices.empty())
    arity = slices.front().arity();
  return Graph(arity, std::move(slices));
}

Expression expression_from_json(const Json& j) {
  std::string k = kind_of(j);
  if (k == "pred") {
    const Json& n = field(j, "name");
    if (!n.is_string()) throw StructuralError("predicate name must be a string");
    return Expression::pred(PredSym{n.get<std::string>(), natural(field(j, "arity"), "\"arity\"")});
  }
  if (k == "formula") {
    const Json& t = field(j, "text");
    if (!t.is_string()) throw StructuralError("formula text must be a string");
    return Expression::formula(parse_formula(t.get<std::string>()));
  }
  if (k == "slice") return Expression::slice(slice_from_json(j));
  if (k == "graph") return Expression::graph(graph_from_json(j));
  if (k == "cmpl") return Expression::complement(expression_from_json(field(j, "of")));
  throw StructuralError("unknown expression kind \"" + k + "\"");
}

Graph graph_or_slice_from_json(const Json& j) {
  std::string k = kind_of(j);
  if (k == "graph") return graph_from_json(j);
  if (k == "slice") return Graph::singleton(slice_from_json(j));
  throw StructuralError("expected a graph or a slice");
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string digest(const Json& j) { return hex64(fnv1a64(j.dump())); }

}  // namespace grefute
