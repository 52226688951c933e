#include "doctest.h"
#include "helpers.hpp"
#include "howebench/enumerate.hpp"
#include "howebench/ops.hpp"

using namespace howebench;

namespace {
Term P(const std::string& text) { return parse_term(shiftresetSig(), text); }
}  // namespace

TEST_CASE("least sorts") {
  const Signature& sig = shiftresetSig();
  SortId v = sig.sortId("v"), p = sig.sortId("p"), c = sig.sortId("c");
  CHECK(least_sort(sig, {}, P("\\x. x")).sort == v);
  CHECK(least_sort(sig, {}, P("(\\x. x) (\\y. y)")).sort == p);
  CHECK(least_sort(sig, {}, P("[] (\\x. x)")).sort == c);
  CHECK(least_sort(sig, {}, P("shift k. k")).sort == p);
  // Coercion: a value is a program.
  CHECK(check_sort(sig, {}, P("\\x. x"), p).ok());
  CHECK_FALSE(check_sort(sig, {}, P("[]"), p).ok());
  // Free variables read the context innermost-last.
  CHECK(least_sort(sig, {v}, Term::var(0)).sort == v);
  CHECK_FALSE(least_sort(sig, {}, Term::var(0)).ok());
}

TEST_CASE("plug fills the hole") {
  const Signature& sig = shiftresetSig();
  int plug = sig.opId("plug");
  Term id = P("\\x. x");
  Term prog = P("shift k. k");
  CHECK(eval_op(sig, plug, P("[]"), {prog}) == prog);
  // capp(v, E): the value applies to the filled context.
  CHECK(eval_op(sig, plug, P("(\\x. x) []"), {prog}) ==
        P("app(lam(x. x), shift(k. k))"));
  // cappr(E, e2): the filled context applies to e2.
  CHECK(eval_op(sig, plug, P("[] (\\y. y)"), {prog}) ==
        P("app(shift(k. k), lam(y. y))"));
  // Two layers deep: plug descends into the left half of each cappr.
  Term e2 = P("([] (\\y. y)) ((\\z. z) (\\z. z))");
  CHECK(eval_op(sig, plug, e2, {id}) ==
        P("app(app(lam(x. x), lam(y. y)), app(lam(z. z), lam(z. z)))"));
}

TEST_CASE("comp composes contexts") {
  const Signature& sig = shiftresetSig();
  int comp = sig.opId("comp");
  Term E1 = P("(\\x. x) []");
  Term E2 = P("[] (\\y. y)");
  CHECK(eval_op(sig, comp, P("[]"), {E1}) == E1);
  CHECK(eval_op(sig, comp, E1, {E2}) == P("capp(lam(x. x), cappr(hole, lam(y. y)))"));
}

TEST_CASE("plug and comp satisfy the composition law") {
  const Signature& sig = shiftresetSig();
  int plug = sig.opId("plug"), comp = sig.opId("comp");
  SortId c = sig.sortId("c"), p = sig.sortId("p");
  TermEnumerator en(sig);
  std::vector<Term> ctxs = en.upTo(c, {}, 5);
  std::vector<Term> progs = en.upTo(p, {}, 3);
  REQUIRE(!ctxs.empty());
  REQUIRE(!progs.empty());
  for (const Term& e1 : ctxs)
    for (const Term& e2 : ctxs) {
      Term composed = eval_op(sig, comp, e1, {e2});
      for (const Term& e : progs) {
        Term direct = eval_op(sig, plug, composed, {e});
        Term nested = eval_op(sig, plug, e1, {eval_op(sig, plug, e2, {e})});
        CHECK(direct == nested);
      }
    }
}

TEST_CASE("comp is associative with hole as unit") {
  const Signature& sig = shiftresetSig();
  int comp = sig.opId("comp");
  TermEnumerator en(sig);
  std::vector<Term> ctxs = en.upTo(sig.sortId("c"), {}, 5);
  Term hole = P("[]");
  for (const Term& E : ctxs) {
    CHECK(eval_op(sig, comp, E, {hole}) == E);
    CHECK(eval_op(sig, comp, hole, {E}) == E);
  }
  for (const Term& a : ctxs)
    for (const Term& b : ctxs)
      for (const Term& c2 : ctxs) {
        Term left = eval_op(sig, comp, eval_op(sig, comp, a, {b}), {c2});
        Term right = eval_op(sig, comp, a, {eval_op(sig, comp, b, {c2})});
        CHECK(left == right);
      }
}

TEST_CASE("evaluation preserves sorts") {
  const Signature& sig = shiftresetSig();
  int plug = sig.opId("plug");
  TermEnumerator en(sig);
  for (const Term& E : en.upTo(sig.sortId("c"), {}, 5))
    for (const Term& e : en.upTo(sig.sortId("p"), {}, 3))
      CHECK(check_sort(sig, {}, eval_op(sig, plug, E, {e}), sig.sortId("p")).ok());
}

TEST_CASE("unfold depth is bounded by the main argument size") {
  const Signature& sig = shiftresetSig();
  int plug = sig.opId("plug");
  TermEnumerator en(sig);
  Term id = P("\\x. x");
  for (const Term& E : en.upTo(sig.sortId("c"), {}, 6)) {
    EvalStats stats;
    eval_op(sig, plug, E, {id}, &stats);
    CHECK(stats.maxUnfoldDepth <= E.size());
  }
}

TEST_CASE("normalize eliminates operation calls and substitutions") {
  const Signature& sig = shiftresetSig();
  Term raw = Term::opcall(sig.opId("plug"), P("(\\x. x) []"), {P("shift k. k")});
  Term norm = normalize(sig, raw);
  CHECK_FALSE(contains_transient(norm));
  CHECK(norm == P("app(lam(x. x), shift(k. k))"));

  Term sub = Term::subst(Term::var(0), {P("\\x. x")});
  CHECK(normalize(sig, sub) == P("\\x. x"));
}

TEST_CASE("missing clauses are reported") {
  Signature sig = parse_signature(
      "sort c\n"
      "sort p\n"
      "con hole : -> c\n"
      "con capp : p, c -> c\n"
      "op plug : c ; p -> p\n"
      "plug(hole; e) = e\n");
  auto rep = validate_signature_ops(sig);
  REQUIRE_FALSE(rep.ok());
  bool found = false;
  for (const auto& issue : rep.issues)
    if (issue.message.find("missing clause") != std::string::npos &&
        issue.message.find("capp") != std::string::npos)
      found = true;
  CHECK(found);
}

TEST_CASE("recursion outside immediate arguments is reported") {
  Signature sig = parse_signature(
      "sort p\n"
      "con a : -> p\n"
      "con f : p -> p\n"
      "op spin : p -> p\n"
      "spin(a) = a\n"
      "spin(f(e)) = spin(f(e))\n");
  auto rep = validate_signature_ops(sig);
  REQUIRE_FALSE(rep.ok());
  bool found = false;
  for (const auto& issue : rep.issues)
    if (issue.message.find("immediate argument") != std::string::npos) found = true;
  CHECK(found);
}
