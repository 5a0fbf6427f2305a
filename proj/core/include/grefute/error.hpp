#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace grefute {

// Root of all library exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ill-formed graph-language object: arity mismatch, dangling name, mixed-arity graph.
class StructuralError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)), detail_(message), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }
  const std::string& detail() const noexcept { return detail_; }  // message without the offset

 private:
  std::string detail_;
  std::size_t offset_;
};

// A conversion rule was asked to fire where its redex does not match.
class RuleInapplicable : public Error {
 public:
  RuleInapplicable(const std::string& message, std::vector<std::size_t> locus)
      : Error(message), locus_(std::move(locus)) {}
  const std::vector<std::size_t>& locus() const noexcept { return locus_; }

 private:
  std::vector<std::size_t> locus_;
};

class EvaluationError : public Error {
 public:
  using Error::Error;
};

// Combinatorial or step budget exceeded; distinct from any verdict.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace grefute
