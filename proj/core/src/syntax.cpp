#include "grefute/syntax.hpp"

#include <cctype>
#include <set>
#include <vector>

#include "grefute/error.hpp"

namespace grefute {

void Signature::declare(const std::string& name, std::size_t arity) {
  auto [it, fresh] = arities_.emplace(name, arity);
  if (!fresh && it->second != arity)
    throw ParseError("predicate " + name + " declared with arity " + std::to_string(arity) +
                         " but already has arity " + std::to_string(it->second),
                     0);
}

bool Signature::check(const std::string& name, std::size_t arity) {
  auto [it, fresh] = arities_.emplace(name, arity);
  return fresh || it->second == arity;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

namespace {

enum class Tok { Ident, LParen, RParen, Comma, Dot, Not, And, Or, Arrow, Eq, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (c >= 'a' && c <= 'z') {
      while (i < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
        ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    switch (c) {
      case '(': out.push_back({Tok::LParen, "(", i++}); continue;
      case ')': out.push_back({Tok::RParen, ")", i++}); continue;
      case ',': out.push_back({Tok::Comma, ",", i++}); continue;
      case '.': out.push_back({Tok::Dot, ".", i++}); continue;
      case '~': out.push_back({Tok::Not, "~", i++}); continue;
      case '&': out.push_back({Tok::And, "&", i++}); continue;
      case '|': out.push_back({Tok::Or, "|", i++}); continue;
      case '=': out.push_back({Tok::Eq, "=", i++}); continue;
      case '-':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          out.push_back({Tok::Arrow, "->", i});
          i += 2;
          continue;
        }
        break;
      default:
        break;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", i);
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

bool keyword(const std::string& s) { return s == "exists" || s == "forall" || s == "false"; }

class Parser {
 public:
  Parser(std::string_view src, Signature& sig) : toks_(lex(src)), sig_(sig) {}

  Formula run() {
    Formula f = formula();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    for (const auto& [name, pos] : free_uses_)
      if (bound_ever_.count(name)) throw ParseError("variable used free: " + name, pos);
    return f;
  }

 private:
  std::vector<Token> toks_;
  std::size_t at_ = 0;
  Signature& sig_;
  std::vector<std::string> scope_;
  std::set<std::string> bound_ever_;
  std::vector<std::pair<std::string, std::size_t>> free_uses_;

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(at_ + k, toks_.size() - 1)]; }
  Token take() { return toks_[at_++]; }
  [[noreturn]] void fail(const std::string& m) const { throw ParseError(m, peek().pos); }
  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    ++at_;
  }

  bool at_quant() const {
    return peek().kind == Tok::Ident && (peek().text == "exists" || peek().text == "forall");
  }

  Formula formula() { return at_quant() ? quant() : impl(); }

  Formula quant() {
    bool ex = take().text == "exists";
    if (peek().kind != Tok::Ident || keyword(peek().text)) fail("expected variable");
    std::string var = take().text;
    expect(Tok::Dot, "'.'");
    scope_.push_back(var);
    bound_ever_.insert(var);
    Formula body = formula();
    scope_.pop_back();
    return ex ? Formula::exists(var, std::move(body)) : Formula::forall(var, std::move(body));
  }

  Formula impl() {
    Formula lhs = disj();
    if (peek().kind == Tok::Arrow) {
      ++at_;
      Formula rhs = at_quant() ? quant() : impl();
      return Formula::conditional(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Formula disj() {
    Formula f = conj();
    while (peek().kind == Tok::Or) {
      ++at_;
      f = Formula::disjunction(std::move(f), conj());
    }
    return f;
  }

  Formula conj() {
    Formula f = neg();
    while (peek().kind == Tok::And) {
      ++at_;
      f = Formula::conjunction(std::move(f), neg());
    }
    return f;
  }

  Formula neg() {
    if (peek().kind == Tok::Not) {
      ++at_;
      return Formula::negation(neg());
    }
    if (at_quant()) return quant();  // extends to the right as far as possible
    return atomexpr();
  }

  Term term() {
    if (peek().kind != Tok::Ident || keyword(peek().text)) fail("expected a name or variable");
    Token t = take();
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (*it == t.text) return Term::var(t.text);
    free_uses_.emplace_back(t.text, t.pos);
    return Term::name(t.text);
  }

  Formula atomexpr() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      ++at_;
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind != Tok::Ident) fail(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
    if (t.text == "false") {
      ++at_;
      return Formula::falsum();
    }
    if (peek(1).kind == Tok::Eq) {
      Term a = term();
      ++at_;
      Term b = term();
      return Formula::atom(PredSym::equality(), {a, b});
    }
    Token name = take();
    std::vector<Term> args;
    if (peek().kind == Tok::LParen) {
      ++at_;
      if (peek().kind != Tok::RParen) {
        args.push_back(term());
        while (peek().kind == Tok::Comma) {
          ++at_;
          args.push_back(term());
        }
      }
      expect(Tok::RParen, "')' or ','");
    }
    if (!sig_.check(name.text, args.size()))
      throw ParseError("predicate " + name.text + " used with " + std::to_string(args.size()) +
                           " arguments but has arity " + std::to_string(sig_.arities().at(name.text)),
                       name.pos);
    const std::size_t arity = args.size();
    return Formula::atom(PredSym{name.text, arity}, std::move(args));
  }
};

// 0 quant, 1 impl, 2 or, 3 and, 4 neg/atom
int level(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: return 0;
    case Formula::Kind::Implies: return 1;
    case Formula::Kind::Or: return 2;
    case Formula::Kind::And: return 3;
    default: return 4;
  }
}

void render(const Formula& f, std::string& out);

void render_at(const Formula& f, int min_level, std::string& out) {
  if (level(f) < min_level) {
    out += "(";
    render(f, out);
    out += ")";
  } else {
    render(f, out);
  }
}

void render(const Formula& f, std::string& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Atom: {
      const auto& ts = f.terms();
      if (f.pred().is_equality()) {
        out += ts[0].text + " = " + ts[1].text;
        return;
      }
      out += f.pred().name + "(";
      for (std::size_t i = 0; i < ts.size(); ++i) {
        if (i) out += ",";
        out += ts[i].text;
      }
      out += ")";
      return;
    }
    case K::False: out += "false"; return;
    case K::Not:
      out += "~";
      render_at(f.operand(), 4, out);
      return;
    case K::And:
      render_at(f.lhs(), 3, out);
      out += " & ";
      render_at(f.rhs(), 4, out);
      return;
    case K::Or:
      render_at(f.lhs(), 2, out);
      out += " | ";
      render_at(f.rhs(), 3, out);
      return;
    case K::Implies:
      render_at(f.lhs(), 2, out);
      out += " -> ";
      render_at(f.rhs(), 1, out);
      return;
    case K::Exists:
    case K::Forall:
      out += f.kind() == K::Exists ? "exists " : "forall ";
      out += f.var() + ". ";
      render(f.body(), out);
      return;
  }
}

}  // namespace

Formula parse_formula(std::string_view text, Signature* sig) {
  Signature local;
  Parser p(text, sig ? *sig : local);
  return p.run();
}

std::string render_formula(const Formula& f) {
  std::string out;
  render(f, out);
  return out;
}

}  // namespace grefute
