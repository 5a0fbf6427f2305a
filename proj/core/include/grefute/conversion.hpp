#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grefute/expression.hpp"
#include "grefute/json_codec.hpp"

namespace grefute {

enum class Rule {
  At, Bot, Neg, And, Or, Cond, Ex, All,
  Eq,
  CmplGraph, DblCmpl,
  StrGraphArc, StrSliceArc, Lift,
  D_GlueGraph, D_CmplGraphArc, D_EqRename,
};

const std::vector<Rule>& all_rules();
std::string rule_name(Rule r);
std::optional<Rule> rule_from_name(const std::string& s);

/// Path into an expression. Inside a slice, index j selects the label of arc j. Inside a graph,
/// index i selects slice i and the next index an arc of it. Inside a complement, 0 selects the
/// operand. Rules that act on a slice arc take the locus of that arc's label.
using Locus = std::vector<std::size_t>;

struct ConversionStep {
  Rule rule;
  Locus locus;
  std::string digest_before;
  std::string digest_after;
};

/// Fresh names drawn by the rules (witness lists, quantifier instances, renaming apart).
/// Replaying a trace with a supply in the same starting state reproduces the same names.
NameSupply conversion_supply();

/// Throws RuleInapplicable (carrying the locus) when the redex does not match.
Expression convert_step(const Expression& e, Rule rule, const Locus& locus, NameSupply& supply);

struct BasicForm {
  Graph graph;
  std::vector<ConversionStep> trace;
};

/// Innermost-first normalization to a basic graph. A slice left at the root is read as the
/// singleton graph containing it.
BasicForm to_basic(const Expression& e);
/// The redex to_basic would rewrite next, if any.
std::optional<std::pair<Rule, Locus>> next_redex(const Expression& e);

/// Re-applies the steps, checking every digest; returns the final graph.
Graph replay_conversion(const Expression& source, const std::vector<ConversionStep>& steps);

bool is_basic(const Slice& s);
bool is_basic(const Graph& g);
bool is_basic(const Expression& e);

/// Arc of a formula over its argument list.
Arc formula_arc(const Formula& f);

std::string expression_digest(const Expression& e);

Json to_json(const ConversionStep& s);
ConversionStep step_from_json(const Json& j);
Json to_json(const Locus& l);

}  // namespace grefute
