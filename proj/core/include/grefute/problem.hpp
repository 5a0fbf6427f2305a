#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grefute/formula.hpp"
#include "grefute/syntax.hpp"

namespace grefute {

/// Plain-text problem: one premise per line, an optional last line "|- conclusion",
/// "sig p/1 r/2" arity declarations, '#' comments and blank lines ignored.
struct Problem {
  std::vector<Formula> premises;
  std::optional<Formula> conclusion;
  Signature signature;
};

/// Throws ParseError; the offset is into the whole text and the message names the line.
Problem parse_problem(const std::string& text);

}  // namespace grefute
