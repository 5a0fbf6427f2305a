#include "fixtures.hpp"

using namespace grefute;

namespace gt {

const char* const kConjunctionElim = "p(u) & q(u)\n|- p(u)\n";
const char* const kUnrelatedNames = "p(u)\n|- p(v)\n";
const char* const kEqualitySubst = "p(v) & v = u\n|- p(u)\n";
const char* const kExistentialIntro = "r(u,v)\n|- exists z. r(u,z)\n";
const char* const kDroppedConjunct = "exists x. exists y. (r(u,x) & s(x,y))\n|- exists z. r(u,z)\n";

// The printed formulas have a dangling y' and mix up z/w; these follow D' and D''.
const char* const kLargePremise =
    "q(v,w) & exists wp. (p(wp) & r(v,wp) & exists u. exists vp. "
    "(rho(v,u) & t(u,w) & a(u,vp) & b(vp,w)))";
const char* const kLargeConclusion =
    "exists u1. exists u2. exists u3. exists vp. exists v1. exists v2. exists wp. exists w1. "
    "exists w2. (p(wp) & rho(v2,u3) & t(u2,w1) & (q(v1,w1) & q(v2,w2)) & (a(u1,vp) & a(u3,vp)) & "
    "(r(v,wp) & r(v1,wp) & r(v2,wp)) & (b(vp,w) & b(vp,w1) & b(vp,w2)))";

// Follows the drawing: T1 = u -r-> w -rho-> v, T2 = u -~rho-> w -t-> v.
const char* const kTwoBoxes =
    "exists wp. (r(u,w) & t(wp,v) & ~(exists x. r(u,x) & rho(x,wp)) & "
    "~(exists y. ~rho(w,y) & t(y,v)))";

Arc pred_arc(const std::string& p, NameList args) {
  const std::size_t n = args.size();
  return Arc(Expression::pred(PredSym{p, n}), std::move(args));
}

Arc cmpl_arc(const Slice& t, NameList args) {
  return Arc(Expression::complement(Expression::slice(t)), std::move(args));
}

Draft large_target() {
  return Draft({"u", "v", "vp", "w", "wp"},
               {pred_arc("q", {"v", "w"}), pred_arc("p", {"wp"}), pred_arc("r", {"v", "wp"}),
                pred_arc("rho", {"v", "u"}), pred_arc("t", {"u", "w"}), pred_arc("a", {"u", "vp"}),
                pred_arc("b", {"vp", "w"})});
}

Draft large_source() {
  return Draft({"u1", "u2", "u3", "v", "v1", "v2", "vp", "w", "w1", "w2", "wp"},
               {pred_arc("q", {"v1", "w1"}), pred_arc("q", {"v2", "w2"}), pred_arc("p", {"wp"}),
                pred_arc("r", {"v", "wp"}), pred_arc("r", {"v1", "wp"}), pred_arc("r", {"v2", "wp"}),
                pred_arc("rho", {"v2", "u3"}), pred_arc("t", {"u2", "w1"}),
                pred_arc("a", {"u1", "vp"}), pred_arc("a", {"u3", "vp"}), pred_arc("b", {"vp", "w"}),
                pred_arc("b", {"vp", "w1"}), pred_arc("b", {"vp", "w2"})});
}

Slice zero_t() {
  return Slice({"u", "v", "w"}, {pred_arc("r", {"u", "v"}), pred_arc("s", {"v", "w"})}, {"u", "w"});
}

Draft zero_draft() {
  return Draft({"up", "vp", "wp"},
               {pred_arc("r", {"up", "vp"}), cmpl_arc(zero_t(), {"up", "wp"}), pred_arc("s", {"vp", "wp"})});
}

Slice exists_forall_expected() {
  Slice inner({"v", "w"}, {pred_arc("r", {"v", "w"})}, {"v", "w"});
  Slice mid({"v", "w"}, {cmpl_arc(inner, {"v", "w"})}, {"v"});
  return Slice({"v"}, {cmpl_arc(mid, {"v"})}, {});
}

Slice forall_exists_expected() {
  Slice inner({"v", "w"}, {pred_arc("r", {"v", "w"})}, {"v"});
  Slice mid({"v"}, {cmpl_arc(inner, {"v"})}, {});
  return Slice({}, {cmpl_arc(mid, {})}, {});
}

std::vector<Draft> small_drafts() {
  Slice t = zero_t();
  std::vector<Draft> out = {
      Draft(),
      Draft({"a"}, {}),
      Draft({"a", "b"}, {pred_arc("r", {"a", "b"})}),
      Draft({"a", "b"}, {pred_arc("r", {"a", "b"}), pred_arc("r", {"b", "a"})}),
      Draft({"a"}, {pred_arc("r", {"a", "a"}), pred_arc("p", {"a"})}),
      Draft({"a", "b", "c"}, {pred_arc("r", {"a", "b"}), pred_arc("r", {"b", "c"})}),
      Draft({"a", "b", "c"}, {pred_arc("r", {"a", "b"}), pred_arc("r", {"b", "c"}), pred_arc("r", {"c", "a"})}),
      Draft({"a", "b", "c", "d"},
            {pred_arc("r", {"a", "b"}), pred_arc("s", {"b", "c"}), pred_arc("p", {"d"}), pred_arc("r", {"d", "c"})}),
      Draft({"a", "b", "c", "d", "e"},
            {pred_arc("r", {"a", "b"}), pred_arc("r", {"b", "c"}), pred_arc("r", {"c", "d"}),
             pred_arc("r", {"d", "e"}), pred_arc("p", {"a"})}),
      Draft({"a", "b", "c", "d", "e"}, {pred_arc("p", {"a"}), pred_arc("q", {"c"})}),
      Draft({"x", "y"}, {cmpl_arc(t, {"x", "y"}), pred_arc("r", {"x", "y"})}),
      Draft({"x", "y", "z"}, {cmpl_arc(t, {"x", "z"}), pred_arc("r", {"x", "y"}), pred_arc("s", {"y", "z"})}),
      zero_draft(),
      large_target(),
  };
  return out;
}

}  // namespace gt
