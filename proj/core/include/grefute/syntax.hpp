#pragma once

#include <map>
#include <string>
#include <string_view>

#include "grefute/formula.hpp"

namespace grefute {

/// Predicate arities. Symbols not yet declared get the arity of their first use.
class Signature {
 public:
  void declare(const std::string& name, std::size_t arity);
  /// Records the arity on first sight; returns false on mismatch.
  bool check(const std::string& name, std::size_t arity);
  const std::map<std::string, std::size_t>& arities() const noexcept { return arities_; }

 private:
  std::map<std::string, std::size_t> arities_;
};

/// Throws ParseError. When sig is null a private signature is used.
Formula parse_formula(std::string_view text, Signature* sig = nullptr);

/// Inverse of parse_formula. Quantified operands are always parenthesized.
std::string render_formula(const Formula& f);

inline NameList free_names(const Formula& f) { return f.free_names(); }

bool is_identifier(std::string_view s);

}  // namespace grefute
