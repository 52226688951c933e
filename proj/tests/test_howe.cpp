#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "howebench/enumerate.hpp"
#include "howebench/howe.hpp"

using namespace howebench;

namespace {

Term sr(const std::string& s) { return parse_term(shiftresetSig(), s); }

std::size_t strataTotal(const HoweUniverse& uni) {
  std::size_t n = 0;
  for (const auto& [ctx, terms] : uni.strata) n += terms.size();
  return n;
}

}  // namespace

TEST_CASE("the closure with no similarity is the identity on the universe") {
  const Signature& sig = shiftresetSig();
  HoweUniverse uni = build_howe_universe(sig, 3);
  HoweClosure hc = howe_closure(sig, uni, Relation{}, nullptr, 50);

  CHECK(hc.converged);
  CHECK(hc.iterations >= 2);
  for (const auto& [ctx, a, b] : hc.closure.items()) {
    CHECK(a == b);
    CHECK(uni.contains(ctx, a));
  }
  // Reflexive on every stratum, and nothing else.
  for (const auto& [ctx, terms] : uni.strata)
    for (const Term& t : terms) CHECK(hc.closure.contains(ctx, t, t));
  CHECK(hc.closure.size() == strataTotal(uni));
}

TEST_CASE("similarity is absorbed and contained") {
  const Signature& sig = shiftresetSig();
  LabelUniverse lu = build_label_universe(sig, 2);
  std::vector<Term> seeds = enumerate_terms(sig, sig.sortId("p"), {}, 4);
  TransitionStore st = derive_transitions(sig, seeds, lu, EngineConfig{});
  BisimResult res = compute_bisim(sig, st, {});
  BisimRelation simF = restrict_to_explored(st, res.relation);

  HoweUniverse uni = build_howe_universe(sig, 4);
  HoweClosure hc = howe_closure(sig, uni, Relation{}, &simF, 50);
  CHECK(hc.converged);

  // A delimited value unwraps silently, so the computed equivalence relates
  // it to the bare value; the closure must pick that pair up.
  Term id = sr("\\x. x");
  Term resetId = sr("<\\x. x>");
  REQUIRE(res.relation.related(id, resetId));
  REQUIRE(simF.related(id, resetId));
  CHECK(hc.closure.contains({}, id, resetId));
  CHECK(hc.closure.contains({}, resetId, id));

  HoweReport rep = check_howe_properties(sig, uni, hc, st, simF, res.relation, lu);
  CHECK(rep.pass);
  REQUIRE(rep.checks.size() == 6);
  for (const HoweCheck& c : rep.checks) {
    INFO(c.name);
    CHECK(c.ok());
    CHECK(c.checked > 0);
  }
}

TEST_CASE("an injected unrelated pair fails the flexible simulation check") {
  const Signature& sig = shiftresetSig();
  LabelUniverse lu = build_label_universe(sig, 2);
  Term selfApp = sr("\\x. x x");
  lu.insert(sig.sortId("v"), selfApp);
  Term id = sr("\\x. x");
  Term lamOmega = sr("\\x. (\\y. y y) (\\z. z z)");
  TransitionStore st = derive_transitions(sig, {id, lamOmega}, lu, EngineConfig{});
  BisimResult res = compute_bisim(sig, st, {});
  REQUIRE(!res.relation.related(id, lamOmega));
  BisimRelation simF = restrict_to_explored(st, res.relation);

  HoweUniverse uni = build_howe_universe(sig, 4);
  HoweClosure hc = howe_closure(sig, uni, Relation{}, &simF, 50);
  // Inject both orientations so only the behavioural check can object.
  hc.closure.insert({}, id, lamOmega);
  hc.closure.insert({}, lamOmega, id);

  HoweReport rep = check_howe_properties(sig, uni, hc, st, simF, res.relation, lu);
  CHECK(!rep.pass);
  const HoweCheck* flex = rep.find("flexible-simulation");
  REQUIRE(flex != nullptr);
  CHECK(flex->violations.size() >= 1);
  for (const HoweCheck& c : rep.checks) {
    INFO(c.name);
    if (c.name != "flexible-simulation") CHECK(c.ok());
  }
}

TEST_CASE("relation helpers compose and close transitively") {
  const Signature& sig = shiftresetSig();
  Term a = sr("\\x. x");
  Term b = sr("\\x. x x");
  Term c = sr("\\x. <x>");
  Ctx open{sig.sortId("v")};

  Relation r;
  r.insert({}, a, b);
  Relation s;
  s.insert({}, b, c);
  Relation rs = compose_relations(r, s);
  CHECK(rs.size() == 1);
  CHECK(rs.contains({}, a, c));

  // Composition never crosses binding contexts.
  Relation rOpen;
  rOpen.insert(open, a, b);
  CHECK(compose_relations(rOpen, s).empty());

  Relation chain;
  chain.insert({}, a, b);
  chain.insert({}, b, c);
  Relation tc = transitive_closure(chain);
  CHECK(tc.size() == 3);
  CHECK(tc.contains({}, a, c));
  CHECK(!tc.contains({}, a, a));

  Relation cycle = chain;
  cycle.insert({}, c, a);
  Relation tcy = transitive_closure(cycle);
  CHECK(tcy.size() == 9);
  CHECK(tcy.contains({}, a, a));
  CHECK(tcy.contains({}, c, b));
}

TEST_CASE("universe strata enumerate every binding context") {
  const Signature& sig = shiftresetSig();
  SortId v = sig.sortId("v");
  HoweUniverse uni = build_howe_universe(sig, 3);

  REQUIRE(uni.strata.size() == 3);
  Ctx c0{};
  Ctx c1{v};
  Ctx c2{v, v};
  CHECK(uni.strata.count(c0) == 1);
  CHECK(uni.strata.count(c1) == 1);
  CHECK(uni.strata.count(c2) == 1);

  CHECK(uni.contains(c0, sr("\\x. x")));
  CHECK(uni.contains(c1, Term::var(0)));
  // The innermost stratum only has one size unit left: two variables and
  // the hole context.
  CHECK(uni.strata.at(c2).size() == 3);
  CHECK(uni.contains(c2, Term::var(0)));
  CHECK(uni.contains(c2, Term::var(1)));

  // Terms never exceed the per-context budget.
  for (const auto& [ctx, terms] : uni.strata)
    for (const Term& t : terms) CHECK(t.size() + static_cast<int>(ctx.size()) <= 3);
}
