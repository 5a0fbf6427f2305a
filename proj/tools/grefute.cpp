// grefute: command-line front end.
//
// exit codes
//   prove   0 VALID, 1 COUNTERMODEL, 2 UNKNOWN
//   sat     0 SATISFIABLE, 1 UNSATISFIABLE, 2 UNKNOWN
//   others  0 on success
//   64      unparsable formula, problem file or JSON
//   66      input file missing or unreadable
//   70      internal error (oracle disagreement, unexpected exception)

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "grefute/conversion.hpp"
#include "grefute/error.hpp"
#include "grefute/problem.hpp"
#include "grefute/prover.hpp"
#include "grefute/render_dot.hpp"
#include "grefute/service.hpp"
#include "grefute/syntax.hpp"

using namespace grefute;

namespace {

constexpr int kParse = 64;
constexpr int kNoInput = 66;
constexpr int kInternal = 70;

struct InputMissing : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputMissing("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputMissing("cannot write " + path);
  out << text;
}

std::string show_model(const FiniteModel& m, const Assignment& g) {
  std::ostringstream out;
  out << "universe: {";
  for (std::size_t i = 0; i < m.universe.size(); ++i) out << (i ? "," : "") << m.universe[i];
  out << "}\n";
  for (const auto& [p, r] : m.interp) {
    out << p.name << " = {";
    bool first = true;
    for (const Tuple& t : r.tuples()) {
      out << (first ? "" : ", ");
      first = false;
      if (t.size() == 1) {
        out << m.universe[t[0]];
      } else {
        out << '(';
        for (std::size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << m.universe[t[i]];
        out << ')';
      }
    }
    out << "}\n";
  }
  if (!g.empty()) {
    out << "assignment:";
    for (const auto& [n, e] : g) out << ' ' << n.text() << '=' << m.universe[e];
    out << '\n';
  }
  return out.str();
}

struct ProveOpts {
  std::string file;
  std::size_t expansions = Budget{}.max_expansions;
  std::size_t nodes = Budget{}.max_slice_nodes;
  double seconds = Budget{}.max_wall_time;
  std::string trace, render;
  std::size_t model_bound = 0;
  bool json = false;
};

Budget budget_of(const ProveOpts& o) { return Budget{o.expansions, o.nodes, o.seconds}; }

// Shared by prove and sat; sat asks whether the premises alone are contradictory.
int run_check(const ProveOpts& o, bool sat_mode) {
  Problem p = parse_problem(slurp(o.file));
  Formula concl = sat_mode || !p.conclusion ? Formula::falsum() : *p.conclusion;
  Verdict v = check_consequence(p.premises, concl, budget_of(o));

  if (!o.trace.empty()) write_file(o.trace, to_json(v.trace).dump(2) + "\n");
  if (!o.render.empty()) {
    BasicForm bf = to_basic(Expression::slice(consequence_slice(p.premises, concl)));
    write_file(o.render, render_dot(bf.graph));
  }

  std::string cross;
  if (o.model_bound > 0) {
    EntailmentResult r = entails_bounded(p.premises, concl, o.model_bound);
    if (v.kind == VerdictKind::Null && !r.holds) {
      std::cerr << "error: prover says valid but a " << r.model->size() << "-element countermodel exists\n";
      return kInternal;
    }
    if (v.kind == VerdictKind::NotNull && r.holds && v.model->size() <= o.model_bound) {
      std::cerr << "error: oracle finds no countermodel up to " << o.model_bound << " elements\n";
      return kInternal;
    }
    cross = r.holds ? "holds up to " + std::to_string(o.model_bound) : "countermodel found";
  }

  const char* word = nullptr;
  int code = 2;
  switch (v.kind) {
    case VerdictKind::Null:
      word = sat_mode ? "UNSATISFIABLE" : "VALID";
      code = sat_mode ? 1 : 0;
      break;
    case VerdictKind::NotNull:
      word = sat_mode ? "SATISFIABLE" : "COUNTERMODEL";
      code = sat_mode ? 0 : 1;
      break;
    case VerdictKind::Unknown:
      word = "UNKNOWN";
      code = 2;
      break;
  }
  if (o.json) {
    Json j = to_json(v);
    j["result"] = word;
    if (!cross.empty()) j["oracle"] = cross;
    std::cout << j.dump(2) << '\n';
    return code;
  }
  std::cout << word << '\n';
  if (v.model) std::cout << show_model(*v.model, sat_mode ? Assignment{} : v.assignment);
  if (v.kind == VerdictKind::Unknown) std::cout << "reason: " << v.reason << '\n';
  std::cout << "expansions: " << v.stats.expansions << ", time: " << v.stats.seconds << "s\n";
  if (!cross.empty()) std::cout << "oracle: " << cross << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grefute: refutation prover over the graph calculus"};
  app.require_subcommand(1);

  ProveOpts po, so;
  auto add_check = [](CLI::App* c, ProveOpts& o) {
    c->add_option("file", o.file, "problem file ('-' for stdin)")->required();
    c->add_option("--budget-expansions", o.expansions, "maximum expansions");
    c->add_option("--budget-time", o.seconds, "wall-clock limit in seconds");
    c->add_option("--budget-nodes", o.nodes, "maximum nodes per slice");
    c->add_option("--trace", o.trace, "write the derivation trace as JSON");
    c->add_option("--render", o.render, "write the basic graph as DOT");
    c->add_option("--model-bound", o.model_bound, "cross-check with exhaustive models up to N elements");
    c->add_flag("--json", o.json, "print the verdict as JSON");
  };
  auto* prove = app.add_subcommand("prove", "decide whether the premises entail the conclusion");
  add_check(prove, po);
  auto* sat = app.add_subcommand("sat", "decide whether the premises have a model");
  add_check(sat, so);

  std::string formula, formula_file, trace_out;
  auto* convert = app.add_subcommand("convert", "normalize a formula to a basic graph (JSON)");
  convert->add_option("formula", formula, "formula text");
  convert->add_option("--file", formula_file, "read the formula from a file");
  convert->add_option("--trace", trace_out, "write the conversion steps as JSON");

  std::string json_in;
  auto* render = app.add_subcommand("render", "render graph JSON as DOT");
  render->add_option("file", json_in, "graph, slice or expression JSON ('-' for stdin)")->required();

  std::string addr, journal;
  auto* serve = app.add_subcommand("serve", "run the HTTP session service");
  serve->add_option("--addr", addr, "host:port (default $GREFUTE_ADDR or 127.0.0.1:8080)");
  serve->add_option("--journal", journal, "journal directory (default $GREFUTE_JOURNAL_DIR)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kParse;
  }

  try {
    if (*prove) return run_check(po, false);
    if (*sat) return run_check(so, true);
    if (*convert) {
      if (formula_file.empty() == formula.empty()) {
        std::cerr << "error: give either a formula or --file\n";
        return kParse;
      }
      std::string text = formula.empty() ? slurp(formula_file) : formula;
      BasicForm bf = to_basic(Expression::formula(parse_formula(text)));
      std::cout << to_json(bf.graph).dump(2) << '\n';
      if (!trace_out.empty()) {
        Json steps = Json::array();
        for (const ConversionStep& s : bf.trace) steps.push_back(to_json(s));
        write_file(trace_out, steps.dump(2) + "\n");
      }
      return 0;
    }
    if (*render) {
      Json j = Json::parse(slurp(json_in));
      Expression e = j.is_object() && j.value("kind", "") == "graph" ? Expression::graph(graph_from_json(j))
                                                                     : expression_from_json(j);
      std::cout << render_dot(e);
      return 0;
    }
    if (*serve) {
      if (addr.empty()) {
        const char* env = std::getenv("GREFUTE_ADDR");
        addr = env ? env : "127.0.0.1:8080";
      }
      if (journal.empty()) {
        if (const char* env = std::getenv("GREFUTE_JOURNAL_DIR")) journal = env;
      }
      Service service(journal.empty() ? std::nullopt : std::optional<std::filesystem::path>(journal));
      std::cerr << "grefute: listening on " << addr << '\n';
      return serve_http(service, addr);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const Json::exception& e) {
    std::cerr << "bad JSON: " << e.what() << '\n';
    return kParse;
  } catch (const StructuralError& e) {
    std::cerr << "malformed input: " << e.what() << '\n';
    return kParse;
  } catch (const InputMissing& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNoInput;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return 0;
}
