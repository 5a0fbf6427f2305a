#include <doctest.h>

#include <cctype>

#include "fixtures.hpp"
#include "generators.hpp"
#include "grefute/error.hpp"
#include "grefute/syntax.hpp"

using namespace grefute;

namespace {
NameList names(std::initializer_list<const char*> xs) {
  NameList out;
  for (const char* x : xs) out.emplace_back(x);
  return out;
}
}  // namespace

TEST_CASE("parse shapes") {
  Formula f = parse_formula("p(u) & r(u,v)");
  REQUIRE(f.kind() == Formula::Kind::And);
  CHECK(f.lhs().pred() == PredSym{"p", 1});
  CHECK(f.rhs().pred() == PredSym{"r", 2});
  CHECK(f.rhs().terms()[1] == Term::name("v"));

  CHECK(parse_formula("false").kind() == Formula::Kind::False);

  Formula q = parse_formula("exists x. forall y. r(x,y)");
  REQUIRE(q.kind() == Formula::Kind::Exists);
  CHECK(q.body().kind() == Formula::Kind::Forall);
  CHECK(q.body().body().terms()[0] == Term::var("x"));
  CHECK(q.free_names().empty());
}

TEST_CASE("precedence and associativity") {
  Formula f = parse_formula("~p(u) & q(u) | p(v) -> q(v) -> p(w)");
  REQUIRE(f.kind() == Formula::Kind::Implies);
  CHECK(f.lhs().kind() == Formula::Kind::Or);
  CHECK(f.lhs().lhs().kind() == Formula::Kind::And);
  CHECK(f.lhs().lhs().lhs().kind() == Formula::Kind::Not);
  CHECK(f.rhs().kind() == Formula::Kind::Implies);

  // quantifiers reach as far right as possible
  Formula g = parse_formula("exists x. p(x) & q(x)");
  REQUIRE(g.kind() == Formula::Kind::Exists);
  CHECK(g.body().kind() == Formula::Kind::And);

  Formula e = parse_formula("u = v");
  CHECK(e.pred().is_equality());
}

TEST_CASE("free names") {
  CHECK(parse_formula("p(u) & r(u,v)").free_names() == names({"u", "v"}));
  CHECK(parse_formula("false").free_names().empty());
  CHECK(parse_formula("exists x. r(x,v)").free_names() == names({"v"}));
  CHECK(parse_formula("r(w,u) | p(s)").free_names() == names({"s", "u", "w"}));
}

TEST_CASE("render") {
  CHECK(render_formula(Formula::conjunction(parse_formula("p(u)"), parse_formula("q(u)"))) == "p(u) & q(u)");
  CHECK(render_formula(Formula::negation(parse_formula("p(u)"))) == "~p(u)");
  Formula phi = parse_formula(gt::kLargePremise);
  CHECK(alpha_equal(parse_formula(render_formula(phi)), phi));
  CHECK(parse_formula(render_formula(phi)) == phi);
}

TEST_CASE("errors carry positions") {
  try {
    parse_formula("p(u) & ");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() >= 6);
  }
  CHECK_THROWS_AS(parse_formula("p(u) & p(u,v)"), ParseError);
  CHECK_THROWS_AS(parse_formula("exists X. p(X)"), ParseError);
  CHECK_THROWS_AS(parse_formula("p(u"), ParseError);
  CHECK_THROWS_AS(parse_formula(""), ParseError);
  CHECK_THROWS_AS(parse_formula("p(u) q(u)"), ParseError);
  CHECK_THROWS_AS(parse_formula("exists x p(x)"), ParseError);
}

TEST_CASE("declared signature is enforced") {
  Signature sig;
  sig.declare("r", 2);
  CHECK_THROWS_AS(parse_formula("r(u)", &sig), ParseError);
  CHECK_NOTHROW(parse_formula("r(u,v) & p(u)", &sig));
  CHECK(sig.arities().at("p") == 1);
  CHECK_THROWS_AS(parse_formula("p(u,v)", &sig), ParseError);
}

TEST_CASE("round trip on random formulas") {
  gt::Rng rng(101);
  gt::FormulaShape shape;
  shape.depth = 4;
  for (int i = 0; i < 1000; ++i) {
    Formula f = gt::random_formula(rng, shape);
    std::string text = render_formula(f);
    Formula g = parse_formula(text);
    CHECK_MESSAGE(alpha_equal(f, g), text);
  }
}

TEST_CASE("binding a name removes it from the free names") {
  gt::Rng rng(7);
  gt::FormulaShape shape;
  shape.quantifiers = false;
  for (int i = 0; i < 300; ++i) {
    Formula f = gt::random_formula(rng, shape);
    NameList fn = f.free_names();
    if (fn.empty()) continue;
    const Name& u = fn[static_cast<std::size_t>(i) % fn.size()];
    // rebuild with u read as a bound variable by going through the text
    std::string text = render_formula(f);
    std::string var = "zz";
    std::string replaced;
    for (std::size_t k = 0; k < text.size();) {
      bool boundary_before = k == 0 || !std::isalnum(static_cast<unsigned char>(text[k - 1]));
      std::size_t e = k + u.text().size();
      bool boundary_after = e >= text.size() || !std::isalnum(static_cast<unsigned char>(text[e]));
      if (boundary_before && boundary_after && text.compare(k, u.text().size(), u.text()) == 0) {
        replaced += var;
        k = e;
      } else {
        replaced += text[k++];
      }
    }
    Formula g = parse_formula("exists " + var + ". (" + replaced + ")");
    NameList expect;
    for (const Name& x : fn)
      if (x != u) expect.push_back(x);
    CHECK(g.free_names() == expect);
  }
}

TEST_CASE("identifiers") {
  CHECK(is_identifier("v1_x"));
  CHECK_FALSE(is_identifier("V"));
  CHECK_FALSE(is_identifier("1v"));
  CHECK_FALSE(is_identifier(""));
}
