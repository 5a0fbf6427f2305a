#include "grefute/render_dot.hpp"

#include <functional>
#include <map>
#include <sstream>

#include "grefute/syntax.hpp"

namespace grefute {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + '"';
}

class Writer {
 public:
  std::ostringstream out;

  void graph(const Graph& g, const std::string& id, int depth, const std::string& label = "") {
    open(id, "dashed", label, depth);
    for (std::size_t i = 0; i < g.slices().size(); ++i)
      slice(g.slices()[i], id + "_" + std::to_string(i), depth + 1);
    close(depth);
  }

  void slice(const Slice& s, const std::string& id, int depth, const std::string& label = "",
             const std::string& anchor = "") {
    open(id, "solid", label, depth);
    if (!anchor.empty()) line(depth + 1, anchor + " [shape=point, width=0.05];");
    body(s.under(), s.dist(), id, depth + 1);
    close(depth);
  }

  void body(const Draft& d, const NameList& dist, const std::string& id, int depth) {
    std::map<Name, std::string> marks;
    for (std::size_t i = 0; i < dist.size(); ++i) {
      std::string& m = marks[dist[i]];
      if (!m.empty()) m += ',';
      m += std::to_string(i + 1);
    }
    for (const Name& n : d.nodes()) {
      std::string label = n.text();
      auto it = marks.find(n);
      if (it != marks.end()) label += "^{" + it->second + "}";
      line(depth, name_id(id, n) + " [shape=circle, label=" + quote(label) + "];");
    }
    for (std::size_t j = 0; j < d.arcs().size(); ++j) {
      const Arc& a = d.arcs()[j];
      const std::string aid = id + "_a" + std::to_string(j);
      const std::string node = "x" + aid;
      label_of(a.expr, aid, node, depth);
      for (std::size_t k = 0; k < a.args.size(); ++k) {
        std::string attrs;
        if (a.args.size() > 1) attrs = " [label=" + quote(std::to_string(k + 1)) + "]";
        line(depth, node + " -> " + name_id(id, a.args[k]) + attrs + ";");
      }
    }
  }

  // Draws an arc label. Atomic labels are boxes; slices and graphs become clusters holding an
  // anchor point that carries the argument edges.
  void label_of(const Expression& e, const std::string& aid, const std::string& node, int depth) {
    bool neg = false;
    const Expression* x = &e;
    if (x->is_cmpl() && (x->operand().kind() == Expression::Kind::Sl ||
                         x->operand().kind() == Expression::Kind::Gr)) {
      neg = true;
      x = &x->operand();
    }
    if (x->kind() == Expression::Kind::Sl) {
      slice(x->slice(), "cluster_" + aid, depth, neg ? "¬" : "", node);
      return;
    }
    if (x->kind() == Expression::Kind::Gr) {
      open("cluster_" + aid, "dashed", neg ? "¬" : "", depth);
      line(depth + 1, node + " [shape=point, width=0.05];");
      for (std::size_t i = 0; i < x->graph().slices().size(); ++i)
        slice(x->graph().slices()[i], aid + "_" + std::to_string(i), depth + 1);
      close(depth);
      return;
    }
    line(depth, node + " [shape=box, label=" + quote(atomic_label(e)) + "];");
  }

  static std::string atomic_label(const Expression& e) {
    switch (e.kind()) {
      case Expression::Kind::Pred:
        return e.pred().name;
      case Expression::Kind::Frm:
        return render_formula(e.formula());
      case Expression::Kind::Cmpl:
        return "¬" + atomic_label(e.operand());
      case Expression::Kind::Sl:
        return "slice";
      case Expression::Kind::Gr:
        return "graph";
    }
    return "?";
  }

  static std::string name_id(const std::string& scope, const Name& n) {
    return quote("n" + scope + "_" + n.text());
  }

  void open(const std::string& id, const std::string& style, const std::string& label, int depth) {
    std::string cid = id.rfind("cluster_", 0) == 0 ? id : "cluster_" + id;
    line(depth, "subgraph " + cid + " {");
    line(depth + 1, "style=" + style + ";");
    line(depth + 1, "label=" + quote(label) + ";");
  }
  void close(int depth) { line(depth, "}"); }

  void line(int depth, const std::string& s) { out << std::string(2 * depth, ' ') << s << '\n'; }
};

std::string wrap(const std::function<void(Writer&)>& f) {
  Writer w;
  w.out << "digraph grefute {\n  compound=true;\n  node [fontname=\"Helvetica\"];\n";
  f(w);
  w.out << "}\n";
  return w.out.str();
}
}  // namespace

std::string render_dot(const Draft& d) {
  return wrap([&](Writer& w) { w.body(d, {}, "d", 1); });
}

std::string render_dot(const Slice& s) {
  return wrap([&](Writer& w) { w.slice(s, "s", 1); });
}

std::string render_dot(const Graph& g) {
  return wrap([&](Writer& w) { w.graph(g, "g", 1); });
}

std::string render_dot(const Expression& e) {
  switch (e.kind()) {
    case Expression::Kind::Sl:
      return render_dot(e.slice());
    case Expression::Kind::Gr:
      return render_dot(e.graph());
    default:
      return wrap([&](Writer& w) { w.label_of(e, "e", "xe", 1); });
  }
}

}  // namespace grefute
