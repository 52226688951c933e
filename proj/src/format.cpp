#include "howebench/format.hpp"

#include <algorithm>

#include "howebench/printer.hpp"

namespace howebench {

void collect_mvars(const Term& t, std::set<int>& out) {
  if (!t.valid()) return;
  if (t.kind() == Term::Kind::MVar) {
    out.insert(t.head());
    return;
  }
  for (const Term& a : t.args()) collect_mvars(a, out);
}

std::optional<std::vector<int>> schedule_premises(const RuleDecl& rule,
                                                  std::vector<int>* stuck,
                                                  const std::vector<int>* prefer) {
  std::set<int> available;
  collect_mvars(rule.cSrc, available);
  for (const Term& l : rule.cLabels) collect_mvars(l, available);

  int n = static_cast<int>(rule.premises.size());
  std::vector<bool> fired(n, false);
  std::vector<int> order;
  auto ready = [&](int i) {
    const RulePremise& pr = rule.premises[i];
    if (pr.target < 0) return false;  // compound target can never bind
    if (available.count(pr.target)) return false;
    std::set<int> needed;
    collect_mvars(pr.src, needed);
    for (const Term& l : pr.labels) collect_mvars(l, needed);
    for (int m : needed)
      if (!available.count(m)) return false;
    return true;
  };
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int i = 0; i < n; ++i) {
      if (fired[i] || !ready(i)) continue;
      if (best < 0) best = i;
      else if (prefer != nullptr && (*prefer)[i] < (*prefer)[best]) best = i;
    }
    if (best < 0) break;
    fired[best] = true;
    order.push_back(best);
    available.insert(rule.premises[best].target);
  }
  if (static_cast<int>(order.size()) == n) return order;
  if (stuck != nullptr) {
    stuck->clear();
    for (int i = 0; i < n; ++i)
      if (!fired[i]) stuck->push_back(i);
  }
  return std::nullopt;
}

namespace {

// Bare mvar, or one constructor whose arguments are distinct bare mvars whose
// contexts match the binders at their position.
bool checkStructural(const Signature& sig, const RuleDecl& rule, std::string& detail) {
  const Term& src = rule.cSrc;
  if (src.kind() == Term::Kind::MVar) return true;
  if (src.kind() != Term::Kind::Con) {
    detail = "source is not a constructor pattern";
    return false;
  }
  const ConDecl& con = sig.cons[src.head()];
  std::set<int> seen;
  PrintOptions po;
  po.mvars = &rule.mvars;
  for (size_t i = 0; i < src.args().size(); ++i) {
    const Term& arg = src.args()[i];
    if (arg.kind() != Term::Kind::MVar) {
      detail = "source argument " + print_term(sig, arg, {}, po) + " is not a bare metavariable";
      return false;
    }
    if (!seen.insert(arg.head()).second) {
      detail = "metavariable " + rule.mvars[arg.head()].name + " repeats in the source";
      return false;
    }
    if (rule.mvars[arg.head()].ctx != con.args[i].binders) {
      detail = "metavariable " + rule.mvars[arg.head()].name +
               " does not live exactly under the binders at its position";
      return false;
    }
  }
  return true;
}

}  // namespace

FormatReport check_format(const Signature& sig) {
  FormatReport report;
  report.ruleIssues = validate_rules(sig).issues;
  bool allOk = true;
  for (const RuleDecl& rule : sig.rules) {
    RuleFormat rf;
    rf.name = rule.name;
    rf.structural = checkStructural(sig, rule, rf.detail);

    std::vector<int> stuck;
    auto order = schedule_premises(rule, &stuck);
    if (order) {
      rf.scheduled = true;
      rf.schedule = *order;
    } else {
      rf.stuckPremises = stuck;
      if (rf.detail.empty()) {
        rf.detail = "premise";
        for (size_t k = 0; k < stuck.size(); ++k)
          rf.detail += (k ? "," : "") + std::string(" ") + std::to_string(stuck[k] + 1);
        rf.detail += " cannot be scheduled";
      }
    }

    // Coverage: target mvars must all be available after the premises fire.
    std::set<int> available;
    collect_mvars(rule.cSrc, available);
    for (const Term& l : rule.cLabels) collect_mvars(l, available);
    if (order)
      for (int i : *order) available.insert(rule.premises[i].target);
    std::set<int> used;
    collect_mvars(rule.cTgt, used);
    rf.covered = true;
    for (int m : used) {
      if (!available.count(m)) {
        rf.covered = false;
        if (rf.detail.empty())
          rf.detail = "target metavariable " + rule.mvars[m].name + " is never bound";
      }
    }
    allOk = allOk && rf.ok();
    report.rules.push_back(std::move(rf));
  }
  report.pass = allOk && report.ruleIssues.empty();
  return report;
}

}  // namespace howebench
