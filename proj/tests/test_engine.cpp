#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "howebench/engine.hpp"
#include "howebench/ops.hpp"

using namespace howebench;

namespace {

Term sr(const std::string& s) { return parse_term(shiftresetSig(), s); }

bool storeSubset(const TransitionStore& a, const TransitionStore& b) {
  for (const Term& u : a.universe())
    for (const LabeledTransition& tr : a.transitionsOf(u)) {
      const auto* ts = b.targets(u, tr.edge, tr.labels);
      if (ts == nullptr || ts->count(tr.target) == 0) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("a delimited capture runs to the reified continuation") {
  const Signature& sig = shiftresetSig();
  const int tauE = sig.edgeId("tau");
  const int valE = sig.edgeId("val");
  const int ctxE = sig.edgeId("ctx");
  LabelUniverse lu = build_label_universe(sig, 2);
  Term t = sr("<shift k. k>");
  Term sk = sr("shift k. k");
  Term wrapId = sr("\\x. <x>");
  Term id = sr("\\x. x");
  TransitionStore st = derive_transitions(sig, {t}, lu, EngineConfig{});

  CHECK(st.saturated());
  CHECK(!st.overflow());
  CHECK(st.universe().size() == 6);

  // The shift captures the empty context and reifies it as \x. <x>; the
  // trailing silent step of the redelimited body is absorbed.
  const auto* cap = st.targets(sk, ctxE, {sr("[]")});
  REQUIRE(cap != nullptr);
  CHECK(*cap == std::set<Term>{sr("<\\x. <x>>"), wrapId});
  CHECK(st.exhausted(sk, ctxE));

  const auto* tau = st.targets(t, tauE, {});
  REQUIRE(tau != nullptr);
  CHECK(*tau == std::set<Term>{t, sr("<\\x. <x>>"), wrapId});

  // Feeding the continuation the only size-2 value reaches <\x.x> and \x.x.
  const auto* val = st.targets(t, valE, {id});
  REQUIRE(val != nullptr);
  CHECK(*val == std::set<Term>{sr("<\\x. x>"), id});

  // No applications in this universe, so every row is complete.
  CHECK(st.exhaustedAllEdges(t));
  CHECK(st.exhaustedAllEdges(wrapId));
  CHECK(st.targets(sk, valE, {id}) == nullptr);
  CHECK(st.exhausted(sk, valE));
}

TEST_CASE("value transitions enumerate the label universe") {
  const Signature& sig = shiftresetSig();
  const int valE = sig.edgeId("val");
  LabelUniverse lu = build_label_universe(sig, 3);
  Term id = sr("\\x. x");
  TransitionStore st = derive_transitions(sig, {id}, lu, EngineConfig{});

  const auto* row = st.row(id, valE);
  REQUIRE(row != nullptr);
  CHECK(row->byLabel.size() == 6);  // the six closed values of size <= 3
  for (const auto& [lv, tgts] : row->byLabel) {
    REQUIRE(lv.size() == 1);
    CHECK(tgts == std::set<Term>{lv[0]});  // identity returns its argument
  }
  CHECK(st.exhausted(id, valE));
}

TEST_CASE("beta steps go through the value premise") {
  const Signature& sig = shiftresetSig();
  const int tauE = sig.edgeId("tau");
  const int valE = sig.edgeId("val");
  const int ctxE = sig.edgeId("ctx");
  LabelUniverse lu = build_label_universe(sig, 2);
  Term id = sr("\\x. x");
  Term a = sr("(\\x. x) (\\y. y)");
  TransitionStore st = derive_transitions(sig, {a}, lu, EngineConfig{});

  CHECK(st.universe().size() == 2);
  const auto* tau = st.targets(a, tauE, {});
  REQUIRE(tau != nullptr);
  CHECK(*tau == std::set<Term>{a, id});
  const auto* val = st.targets(a, valE, {id});
  REQUIRE(val != nullptr);
  CHECK(*val == std::set<Term>{id});
  CHECK(st.exhausted(a, tauE));
  CHECK(st.exhausted(a, valE));
  // Capture labels of an application outgrow this label universe.
  CHECK(!st.exhausted(a, ctxE));
  CHECK(!st.exhaustedAllEdges(a));
}

TEST_CASE("a divergent self-application loops silently") {
  const Signature& sig = shiftresetSig();
  const int tauE = sig.edgeId("tau");
  const int valE = sig.edgeId("val");
  LabelUniverse lu = build_label_universe(sig, 2);
  Term selfApp = sr("\\x. x x");
  lu.insert(sig.sortId("v"), selfApp);
  Term omega = sr("(\\x. x x) (\\x. x x)");
  TransitionStore st = derive_transitions(sig, {omega}, lu, EngineConfig{});

  CHECK(st.saturated());
  CHECK(st.universe().size() == 4);
  const auto* tau = st.targets(omega, tauE, {});
  REQUIRE(tau != nullptr);
  CHECK(*tau == std::set<Term>{omega});
  CHECK(st.exhausted(omega, tauE));
  CHECK(st.exhausted(omega, valE));
  CHECK(st.row(omega, valE)->byLabel.empty());
}

TEST_CASE("fewer rounds derive a subset of the saturated store") {
  const Signature& sig = shiftresetSig();
  LabelUniverse lu = build_label_universe(sig, 2);
  Term t = sr("<shift k. k>");
  EngineConfig full;
  EngineConfig one;
  one.fuel = 1;
  TransitionStore stFull = derive_transitions(sig, {t}, lu, full);
  TransitionStore stOne = derive_transitions(sig, {t}, lu, one);
  CHECK(!stOne.saturated());
  CHECK(storeSubset(stOne, stFull));
  CHECK(stOne.transitionCount() < stFull.transitionCount());

  // A larger label universe only adds transitions.
  LabelUniverse lu3 = build_label_universe(sig, 3);
  TransitionStore st3 = derive_transitions(sig, {t}, lu3, full);
  CHECK(storeSubset(stFull, st3));
}

TEST_CASE("derivation is deterministic") {
  const Signature& sig = shiftresetSig();
  LabelUniverse lu = build_label_universe(sig, 2);
  std::vector<Term> seeds{sr("<shift k. k>"), sr("(\\x. x) (\\y. y)")};
  TransitionStore a = derive_transitions(sig, seeds, lu, EngineConfig{});
  TransitionStore b = derive_transitions(sig, seeds, lu, EngineConfig{});
  CHECK(a.universe() == b.universe());
  CHECK(a.transitionCount() == b.transitionCount());
  CHECK(storeSubset(a, b));
  CHECK(storeSubset(b, a));
}

TEST_CASE("saturated stores are reflexive and absorb silent steps") {
  const Signature& sig = shiftresetSig();
  LabelUniverse lu = build_label_universe(sig, 2);
  const int tauE = sig.edgeId("tau");
  TransitionStore st =
      derive_transitions(sig, {sr("<shift k. k>"), sr("(\\x. x) (\\y. y)")}, lu, EngineConfig{});
  REQUIRE(st.saturated());
  for (const Term& u : st.universe()) {
    const auto* tau = st.targets(u, tauE, {});
    REQUIRE(tau != nullptr);
    CHECK(tau->count(u) == 1);
    // u -tau-> b -e[l]-> c implies u -e[l]-> c: the store is weakly closed.
    for (const Term& b : *tau)
      for (const LabeledTransition& tr : st.transitionsOf(b)) {
        const auto* ts = st.targets(u, tr.edge, tr.labels);
        REQUIRE(ts != nullptr);
        CHECK(ts->count(tr.target) == 1);
      }
  }
}

TEST_CASE("size caps truncate and the incompleteness propagates") {
  const Signature& sig = shiftresetSig();
  const int tauE = sig.edgeId("tau");
  const int valE = sig.edgeId("val");
  const int ctxE = sig.edgeId("ctx");
  LabelUniverse lu = build_label_universe(sig, 2);
  Term t = sr("<shift k. k>");
  Term sk = sr("shift k. k");
  EngineConfig tight;
  tight.sizeCapFactor = 1;  // the capture target (size 4) no longer fits
  TransitionStore st = derive_transitions(sig, {t}, lu, tight);

  CHECK(st.saturated());
  CHECK(!st.overflow());
  CHECK(st.targets(sk, ctxE, {sr("[]")}) == nullptr);
  CHECK(!st.exhausted(sk, ctxE));       // direct truncation
  CHECK(!st.exhausted(t, tauE));        // via the delimiter rule's premise
  CHECK(!st.exhausted(t, valE));        // via the silent prefix of the value row
  CHECK(st.exhausted(sk, valE));        // untouched rows stay complete
  CHECK(st.exhausted(sk, tauE));
}

TEST_CASE("a full universe voids exhaustion") {
  const Signature& sig = shiftresetSig();
  LabelUniverse lu = build_label_universe(sig, 2);
  Term t = sr("<shift k. k>");
  EngineConfig small;
  small.maxUniverse = 3;
  TransitionStore st = derive_transitions(sig, {t}, lu, small);
  CHECK(st.overflow());
  CHECK(!st.exhausted(t, sig.edgeId("tau")));
}

TEST_CASE("recursion unfolds through hand-fed labels") {
  const Signature& sig = pcfSig();
  const int tauE = sig.edgeId("tau");
  const int succE = sig.edgeId("succ");
  const int applyE = sig.edgeId("apply");
  Term F = parse_term(sig, "fix(lam(f. succ(f)))");
  Term L = parse_term(sig, "lam(f. succ(f))");
  Term appLF = Term::con(sig.conId("app"), {L, F}, {});
  Term succF = Term::con(sig.conId("succ"), {F}, {});

  LabelUniverse lu = build_label_universe(sig, 2);
  lu.insert(sig.sortId("t"), F);  // the unfolding needs itself as a label
  TransitionStore st = derive_transitions(sig, {F}, lu, EngineConfig{});

  CHECK(st.saturated());
  CHECK(!st.overflow());
  const auto* tau = st.targets(F, tauE, {});
  REQUIRE(tau != nullptr);
  CHECK(*tau == std::set<Term>{F, appLF, succF});
  const auto* succ = st.targets(F, succE, {});
  REQUIRE(succ != nullptr);
  CHECK(*succ == std::set<Term>{F, appLF, succF});  // it unfolds forever
  CHECK(st.exhausted(F, tauE));
  CHECK(st.exhausted(F, succE));
  CHECK(st.exhausted(F, applyE));
  CHECK(st.row(F, applyE)->byLabel.empty());
  CHECK(st.exhaustedAllEdges(F));
}

TEST_CASE("numeral arithmetic steps silently") {
  const Signature& sig = pcfSig();
  const int tauE = sig.edgeId("tau");
  const int zeroE = sig.edgeId("zero");
  Term ps = parse_term(sig, "pred(succ(zero))");
  Term z = parse_term(sig, "zero");
  LabelUniverse lu = build_label_universe(sig, 2);
  TransitionStore st = derive_transitions(sig, {ps}, lu, EngineConfig{});
  const auto* tau = st.targets(ps, tauE, {});
  REQUIRE(tau != nullptr);
  CHECK(*tau == std::set<Term>{ps, z});
  const auto* zr = st.targets(ps, zeroE, {});
  REQUIRE(zr != nullptr);
  CHECK(*zr == std::set<Term>{z});
  CHECK(st.exhaustedAllEdges(ps));
}

TEST_CASE("rules outside the executable fragment are rejected") {
  LabelUniverse empty;
  EngineConfig cfg;
  {
    Signature sig = parse_signature(slurp("signatures/fixtures/lookahead.sig"));
    Term seed = parse_term(sig, "a");
    CHECK_THROWS_AS(derive_transitions(sig, {seed}, empty, cfg), EngineError);
  }
  {
    Signature sig = parse_signature(slurp("signatures/fixtures/compound-premise-target.sig"));
    Term seed = parse_term(sig, "a");
    CHECK_THROWS_AS(derive_transitions(sig, {seed}, empty, cfg), EngineError);
  }
  {
    Signature sig = parse_signature(slurp("signatures/fixtures/fresh-target.sig"));
    Term seed = parse_term(sig, "a");
    CHECK_THROWS_AS(derive_transitions(sig, {seed}, empty, cfg), EngineError);
  }
}

TEST_CASE("open seeds are rejected") {
  const Signature& sig = shiftresetSig();
  LabelUniverse lu = build_label_universe(sig, 2);
  Term open = parse_term(sig, "x", {{"x", sig.sortId("v")}});
  CHECK_THROWS_AS(derive_transitions(sig, {open}, lu, EngineConfig{}), EngineError);
}
