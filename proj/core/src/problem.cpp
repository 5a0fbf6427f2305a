#include "grefute/problem.hpp"

#include <cctype>

#include "grefute/error.hpp"

namespace grefute {

namespace {

std::string_view trim(std::string_view s, std::size_t& lead) {
  lead = 0;
  while (lead < s.size() && std::isspace(static_cast<unsigned char>(s[lead]))) ++lead;
  s.remove_prefix(lead);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(const std::string& msg, std::size_t line, std::size_t offset) {
  throw ParseError("line " + std::to_string(line) + ": " + msg, offset);
}

void read_sig(std::string_view rest, std::size_t base, std::size_t line_no, Signature& sig) {
  std::size_t i = 0;
  while (i < rest.size()) {
    while (i < rest.size() && std::isspace(static_cast<unsigned char>(rest[i]))) ++i;
    if (i == rest.size()) break;
    std::size_t start = i;
    while (i < rest.size() && !std::isspace(static_cast<unsigned char>(rest[i]))) ++i;
    std::string_view decl = rest.substr(start, i - start);
    auto slash = decl.find('/');
    if (slash == std::string_view::npos) fail("expected name/arity in sig", line_no, base + start);
    std::string name(decl.substr(0, slash));
    std::string_view num = decl.substr(slash + 1);
    if (!is_identifier(name) || num.empty() || num.size() > 3) fail("bad declaration in sig", line_no, base + start);
    std::size_t arity = 0;
    for (char c : num) {
      if (!std::isdigit(static_cast<unsigned char>(c))) fail("bad arity in sig", line_no, base + start);
      arity = arity * 10 + static_cast<std::size_t>(c - '0');
    }
    try {
      sig.declare(name, arity);
    } catch (const ParseError& e) {
      fail(e.detail(), line_no, base + start);
    }
  }
}

}  // namespace

Problem parse_problem(const std::string& text) {
  Problem p;
  std::size_t pos = 0, line_no = 0;
  bool seen_conclusion = false;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    ++line_no;
    std::string_view raw(text.data() + pos, end - pos);
    auto hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::size_t lead = 0;
    std::string_view s = trim(raw, lead);
    const std::size_t base = pos + lead;
    if (!s.empty()) {
      if (seen_conclusion) fail("nothing may follow the conclusion", line_no, base);
      try {
        if (s.substr(0, 4) == "sig " || s == "sig") {
          read_sig(s.substr(3), base + 3, line_no, p.signature);
        } else if (s.substr(0, 2) == "|-") {
          p.conclusion = parse_formula(s.substr(2), &p.signature);
          seen_conclusion = true;
        } else {
          p.premises.push_back(parse_formula(s, &p.signature));
        }
      } catch (const ParseError& e) {
        if (e.detail().rfind("line ", 0) == 0) throw;
        const std::size_t shift = s.substr(0, 2) == "|-" ? 2 : 0;
        fail(e.detail(), line_no, base + shift + e.offset());
      }
    }
    if (end == text.size()) break;
    pos = end + 1;
  }
  return p;
}

}  // namespace grefute
