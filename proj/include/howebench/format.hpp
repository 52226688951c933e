#pragma once

#include <optional>
#include <set>

#include "howebench/signature.hpp"

namespace howebench {

// Metavariable ids occurring anywhere in t.
void collect_mvars(const Term& t, std::set<int>& out);

// Greedy premise schedule. The conclusion's source and label metavariables
// start out available; a premise may fire once its source and labels are
// fully available, and firing makes its target available. Among ready
// premises the one with the smallest preference is picked (`prefer` maps
// premise index to preference; defaults to the index itself). Returns the
// firing order, or nullopt, in which case *stuck (if given) receives the
// premises that never fired.
std::optional<std::vector<int>> schedule_premises(const RuleDecl& rule,
                                                  std::vector<int>* stuck = nullptr,
                                                  const std::vector<int>* prefer = nullptr);

// Per-rule results of the format check.
struct RuleFormat {
  std::string name;
  bool structural = false;  // source is a bare mvar or one constructor over
                            // distinct bare mvars
  bool scheduled = false;   // every premise fired
  bool covered = false;     // conclusion target uses only available mvars
  std::vector<int> schedule;
  std::vector<int> stuckPremises;
  std::string detail;  // human-readable reason when something failed
  bool ok() const { return structural && scheduled && covered; }
};

struct FormatReport {
  std::vector<RuleFormat> rules;
  std::vector<ValidationIssue> ruleIssues;  // from rule validation
  bool pass = false;
};

// Checks every rule of the signature against the structural format with
// scheduled premises. Rules failing basic validation are reported and also
// format-checked as far as possible.
FormatReport check_format(const Signature& sig);

}  // namespace howebench
