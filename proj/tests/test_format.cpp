#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "howebench/enumerate.hpp"
#include "howebench/format.hpp"

using namespace howebench;

namespace {

const RuleFormat& ruleNamed(const FormatReport& rep, const std::string& name) {
  for (const RuleFormat& rf : rep.rules)
    if (rf.name == name) return rf;
  REQUIRE_MESSAGE(false, "no rule named ", name);
  static RuleFormat dummy;
  return dummy;
}

}  // namespace

TEST_CASE("every shift/reset rule is in the checkable format") {
  FormatReport rep = check_format(shiftresetSig());
  CHECK(rep.pass);
  CHECK(rep.ruleIssues.empty());
  REQUIRE(rep.rules.size() == 17);
  for (const RuleFormat& rf : rep.rules) {
    CAPTURE(rf.name);
    CHECK(rf.ok());
    CHECK(rf.detail.empty());
  }
}

TEST_CASE("every PCF rule is in the checkable format") {
  FormatReport rep = check_format(pcfSig());
  CHECK(rep.pass);
  CHECK(rep.ruleIssues.empty());
  REQUIRE(rep.rules.size() == 18);
  for (const RuleFormat& rf : rep.rules) {
    CAPTURE(rf.name);
    CHECK(rf.ok());
  }
}

TEST_CASE("premise schedules come out in dependency order") {
  FormatReport rep = check_format(shiftresetSig());
  CHECK(ruleNamed(rep, "beta-prime").schedule == std::vector<int>{0});
  CHECK(ruleNamed(rep, "lam-val").schedule == std::vector<int>{});
  CHECK(ruleNamed(rep, "capture-left").schedule == std::vector<int>{0});
  // The silent prefix must run before the labelled premise can be consulted.
  CHECK(ruleNamed(rep, "weak-pre-val").schedule == std::vector<int>{0, 1});
  CHECK(ruleNamed(rep, "weak-post-ctx").schedule == std::vector<int>{0, 1});
}

TEST_CASE("a two-deep source pattern fails the structural check") {
  Signature sig = parse_signature(slurp("signatures/fixtures/beta-standard.sig"));
  FormatReport rep = check_format(sig);
  CHECK(!rep.pass);
  CHECK(rep.ruleIssues.empty());
  REQUIRE(rep.rules.size() == 1);
  const RuleFormat& rf = rep.rules[0];
  CHECK(!rf.structural);
  CHECK(rf.scheduled);
  CHECK(rf.covered);
  CHECK(rf.detail.find("lam(x. e)") != std::string::npos);
}

TEST_CASE("a premise reading the conclusion target never schedules") {
  Signature sig = parse_signature(slurp("signatures/fixtures/lookahead.sig"));
  FormatReport rep = check_format(sig);
  CHECK(!rep.pass);
  REQUIRE(rep.rules.size() == 1);
  const RuleFormat& rf = rep.rules[0];
  CHECK(rf.structural);
  CHECK(!rf.scheduled);
  CHECK(rf.stuckPremises == std::vector<int>{0});
  CHECK(rf.detail.find("premise 1 cannot be scheduled") != std::string::npos);
}

TEST_CASE("an unbound conclusion target fails coverage") {
  Signature sig = parse_signature(slurp("signatures/fixtures/fresh-target.sig"));
  FormatReport rep = check_format(sig);
  CHECK(!rep.pass);
  REQUIRE(rep.rules.size() == 1);
  const RuleFormat& rf = rep.rules[0];
  CHECK(rf.structural);
  CHECK(rf.scheduled);
  CHECK(!rf.covered);
  CHECK(rf.detail.find("e2") != std::string::npos);
}

TEST_CASE("a compound premise target is rejected and unschedulable") {
  Signature sig = parse_signature(slurp("signatures/fixtures/compound-premise-target.sig"));
  FormatReport rep = check_format(sig);
  CHECK(!rep.pass);
  CHECK(!rep.ruleIssues.empty());
  REQUIRE(rep.rules.size() == 1);
  CHECK(!rep.rules[0].scheduled);
  CHECK(rep.rules[0].stuckPremises == std::vector<int>{0});
}

// The greedy scheduler is confluent: whichever ready premise fires first,
// schedulability and the bound metavariables never change.
TEST_CASE("scheduling is independent of the preference order") {
  auto finalBindings = [](const RuleDecl& rule, const std::vector<int>& order) {
    std::set<int> available;
    collect_mvars(rule.cSrc, available);
    for (const Term& l : rule.cLabels) collect_mvars(l, available);
    for (int i : order) available.insert(rule.premises[i].target);
    return available;
  };
  Rng rng(0xC0FFEEu);
  auto checkSig = [&](const Signature& sig) {
    for (const RuleDecl& rule : sig.rules) {
      CAPTURE(rule.name);
      auto base = schedule_premises(rule);
      int n = static_cast<int>(rule.premises.size());
      for (int trial = 0; trial < 24; ++trial) {
        std::vector<int> prefer(n);
        for (int i = 0; i < n; ++i) prefer[i] = i;
        for (int i = n - 1; i > 0; --i)
          std::swap(prefer[i], prefer[static_cast<int>(rng.below(i + 1))]);
        auto alt = schedule_premises(rule, nullptr, &prefer);
        REQUIRE(alt.has_value() == base.has_value());
        if (alt) {
          CHECK(alt->size() == base->size());
          CHECK(finalBindings(rule, *alt) == finalBindings(rule, *base));
        }
      }
    }
  };
  checkSig(shiftresetSig());
  checkSig(pcfSig());
  Signature stuckSig = parse_signature(slurp("signatures/fixtures/lookahead.sig"));
  checkSig(stuckSig);
}
