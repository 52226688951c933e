#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "howebench/enumerate.hpp"
#include "howebench/machine.hpp"
#include "howebench/printer.hpp"

using namespace howebench;

namespace {

Term sr(const std::string& s) { return parse_term(shiftresetSig(), s); }

bool isValue(const Signature& sig, const Term& t) {
  return t.kind() == Term::Kind::Con && t.head() == sig.conId("lam");
}

// Counts evaluation decompositions by plain structural recursion, written
// independently of the frame-stack walk: at most one position can drive.
int decompositions(const Signature& sig, const Term& t) {
  if (isValue(sig, t)) return 0;
  int h = t.head();
  if (h == sig.conId("app")) {
    const Term& fun = t.args()[0];
    const Term& arg = t.args()[1];
    if (!isValue(sig, fun)) return decompositions(sig, fun);
    if (!isValue(sig, arg)) return decompositions(sig, arg);
    return 1;  // beta redex here
  }
  if (h == sig.conId("reset")) {
    const Term& inner = t.args()[0];
    if (isValue(sig, inner)) return 1;  // delimiter drop
    return decompositions(sig, inner);
  }
  if (h == sig.conId("shift")) return 1;  // capture, or stuck at top level
  return 0;
}

}  // namespace

TEST_CASE("single machine moves follow the evaluation order") {
  const Signature& sig = shiftresetSig();

  MachineOutcome beta = machine_step(sig, sr("(\\x. x) (\\y. y)"));
  REQUIRE(beta.kind == MachineOutcome::Kind::Step);
  CHECK(beta.next == sr("\\y. y"));

  MachineOutcome unwrap = machine_step(sig, sr("<\\x. x>"));
  REQUIRE(unwrap.kind == MachineOutcome::Kind::Step);
  CHECK(unwrap.next == sr("\\x. x"));

  MachineOutcome capture = machine_step(sig, sr("<shift k. k>"));
  REQUIRE(capture.kind == MachineOutcome::Kind::Step);
  CHECK(capture.next == sr("<\\x. <x>>"));

  MachineOutcome stuck = machine_step(sig, sr("shift k. k"));
  REQUIRE(stuck.kind == MachineOutcome::Kind::ControlStuck);
  CHECK(stuck.capturedBody == Term::var(0));
  CHECK(stuck.localContext == sr("[]"));

  MachineOutcome done = machine_step(sig, sr("\\x. x"));
  CHECK(done.kind == MachineOutcome::Kind::Value);
}

TEST_CASE("capture consumes the nearest delimiter only") {
  const Signature& sig = shiftresetSig();
  // <(\f. f) <shift k. k>>: the inner delimiter is the one consumed.
  Term t = sr("<(\\f. f) <shift k. k>>");
  MachineOutcome o = machine_step(sig, t);
  REQUIRE(o.kind == MachineOutcome::Kind::Step);
  CHECK(o.next == sr("<(\\f. f) <\\x. <x>>>"));

  // A capture through an application extends the local context on the way.
  Term u = sr("<(shift k. k) (\\y. y)>");
  MachineOutcome ou = machine_step(sig, u);
  REQUIRE(ou.kind == MachineOutcome::Kind::Step);
  CHECK(ou.next == sr("<\\x. <x (\\y. y)>>"));
}

TEST_CASE("every closed program has exactly one decomposition") {
  const Signature& sig = shiftresetSig();
  std::vector<Term> terms = enumerate_terms(sig, sig.sortId("p"), {}, 5);
  REQUIRE(terms.size() > 100);
  for (const Term& t : terms) {
    CAPTURE(print_term(sig, t));
    int n = decompositions(sig, t);
    MachineOutcome o = machine_step(sig, t);
    if (isValue(sig, t)) {
      CHECK(n == 0);
      CHECK(o.kind == MachineOutcome::Kind::Value);
    } else {
      CHECK(n == 1);
      CHECK(o.kind != MachineOutcome::Kind::Value);
    }
    // Purity: a second run reproduces the same outcome.
    MachineOutcome o2 = machine_step(sig, t);
    CHECK(o.kind == o2.kind);
    if (o.kind == MachineOutcome::Kind::Step) CHECK(o.next == o2.next);
  }
}

TEST_CASE("silent runs end in the three documented ways") {
  const Signature& sig = shiftresetSig();

  MachineLabels v = machine_weak_labels(sig, sr("\\x. x"), 10);
  CHECK(v.complete);
  CHECK(!v.diverged);
  REQUIRE(v.vFamily.has_value());
  CHECK(*v.vFamily == Term::var(0));
  CHECK(v.trace == std::vector<Term>{sr("\\x. x")});

  MachineLabels c = machine_weak_labels(sig, sr("(shift k. k) (\\y. y)"), 10);
  CHECK(c.complete);
  REQUIRE(c.cFamily.has_value());
  CHECK(c.cFamily->first == Term::var(0));
  // Local context: the hole sits in function position with the argument kept.
  CHECK(c.cFamily->second == parse_term(sig, "cappr(hole, lam(y. y))"));

  Term omega = sr("(\\x. x x) (\\x. x x)");
  MachineLabels d = machine_weak_labels(sig, omega, 50);
  CHECK(d.complete);  // the loop revisits a state, so the set is known
  CHECK(d.diverged);
  CHECK(!d.vFamily.has_value());
  CHECK(!d.cFamily.has_value());

  // With too little fuel on a non-looping run nothing is claimed.
  Term chain = sr("(\\a. a) ((\\b. b) ((\\c. c) (\\d. d)))");
  MachineLabels cut = machine_weak_labels(sig, chain, 1);
  CHECK(!cut.complete);
  CHECK(cut.diverged);
}

TEST_CASE("plugging a reified context is inverse to decomposition") {
  const Signature& sig = shiftresetSig();
  Term f = parse_term(sig, "cappr(capp(lam(v. v), hole), lam(w. w))");
  Term plugged = machine_plug(sig, f, sr("\\z. z"));
  CHECK(plugged == sr("((\\v. v) (\\z. z)) (\\w. w)"));
  CHECK(machine_plug(sig, sr("[]"), sr("\\z. z")) == sr("\\z. z"));
}

TEST_CASE("the engine and the machine agree on shipped examples") {
  const Signature& sig = shiftresetSig();
  LabelUniverse lu = build_label_universe(sig, 2);

  OracleReport beta = oracle_compare(sig, sr("(\\x. x) (\\y. y)"), 30, lu);
  CHECK(beta.ok());
  CHECK(beta.checked > 0);

  // The capture path runs through the delimited continuation value.
  Term t = sr("<shift k. k>");
  MachineLabels ml = machine_weak_labels(sig, t, 30);
  bool viaWrapped = false;
  for (const Term& s : ml.trace) viaWrapped |= (s == sr("<\\x. <x>>"));
  CHECK(viaWrapped);
  OracleReport cap = oracle_compare(sig, t, 30, lu);
  CHECK(cap.ok());
  CHECK(cap.checked > 0);

  OracleReport omega = oracle_compare(sig, sr("(\\x. x x) (\\x. x x)"), 30, lu);
  CHECK(omega.ok());

  OracleReport stuck = oracle_compare(sig, sr("(shift k. k) (\\y. y)"), 30, lu);
  CHECK(stuck.ok());
  CHECK(stuck.checked > 0);
}

TEST_CASE("randomized closed programs produce no engine-machine differences") {
  const Signature& sig = shiftresetSig();
  LabelUniverse lu = build_label_universe(sig, 2);
  TermEnumerator enu(sig);
  Rng rng{2026};
  int checked = 0;
  for (int i = 0; i < 30; ++i) {
    Term e = enu.sample(sig.sortId("p"), {}, 6, rng);
    CAPTURE(print_term(sig, e));
    OracleReport rep = oracle_compare(sig, e, 50, lu);
    for (const auto& d : rep.diffs) {
      CAPTURE(d);
      CHECK(false);
    }
    checked += rep.checked;
  }
  CHECK(checked > 0);
}
