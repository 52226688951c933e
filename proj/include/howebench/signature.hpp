#pragma once

#include <optional>
#include <string>
#include <vector>

#include "howebench/term.hpp"

namespace howebench {

struct ConArg {
  Ctx binders;  // sorts bound around this argument, innermost last
  SortId sort;
};

struct ConDecl {
  std::string name;
  std::vector<ConArg> args;
  SortId result;
};

// Operations are clause-defined by structural recursion on the main argument.
// Stratum = declaration index: an operation may call earlier ones freely and
// itself only on immediate arguments of the matched constructor.
struct OpDecl {
  std::string name;
  SortId mainSort;
  std::vector<SortId> aux;
  SortId result;
};

// Clause for op applied to a head constructor. Metavariable ids in `rhs`:
// [0, #con args) name the constructor arguments, then one per aux parameter.
struct ClauseDecl {
  int op = -1;
  int con = -1;
  std::vector<std::string> argNames;
  std::vector<std::string> auxNames;
  Term rhs;
  int line = 0;
};

struct LabelSlot {
  SortId sort;
  Ctx ctx;
};

struct EdgeDecl {
  std::string name;
  SortId src;
  std::vector<LabelSlot> labels;
  SortId tgt;
};

struct RuleMVar {
  std::string name;
  SortId sort;
  Ctx ctx;
};

struct RulePremise {
  Term src;
  int edge = -1;
  std::vector<Term> labels;
  int target = -1;    // metavariable id; -1 when the written target is not bare
  Term targetTerm;    // as written; only consulted when target == -1
};

struct RuleDecl {
  std::string name;
  std::vector<RuleMVar> mvars;
  std::vector<RulePremise> premises;
  Term cSrc;
  int cEdge = -1;
  std::vector<Term> cLabels;
  Term cTgt;
  int line = 0;
};

struct ValidationIssue {
  std::string where;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  void add(std::string where, std::string message) {
    issues.push_back({std::move(where), std::move(message)});
  }
};

struct Signature {
  std::vector<std::string> sorts;
  std::vector<std::pair<SortId, SortId>> subsorts;
  std::vector<ConDecl> cons;
  std::vector<OpDecl> ops;
  std::vector<ClauseDecl> clauses;
  std::vector<EdgeDecl> edges;
  std::vector<RuleDecl> rules;

  int sortId(const std::string& name) const;
  int conId(const std::string& name) const;
  int opId(const std::string& name) const;
  int edgeId(const std::string& name) const;

  SortId addSort(const std::string& name);
  void addSubsort(SortId sub, SortId super);

  bool sortLeq(SortId a, SortId b) const;
  // Least upper bound when a and b are comparable; nullopt otherwise.
  std::optional<SortId> sortJoin(SortId a, SortId b) const;

  const ClauseDecl* clauseFor(int op, int con) const;

 private:
  std::vector<std::vector<bool>> leq_;  // reflexive-transitive closure
  void rebuildClosure();
};

struct SortResult {
  std::optional<SortId> sort;
  std::string error;
  bool ok() const { return sort.has_value(); }
};

// Least sort of a term with no metavariables, in the given context.
SortResult least_sort(const Signature& sig, const Ctx& ctx, const Term& t);
// least_sort plus a subsort check against `expected`.
SortResult check_sort(const Signature& sig, const Ctx& ctx, const Term& t, SortId expected);

// Sort check for rule and clause terms, which may contain metavariables.
// A metavariable declared at context c may occur wherever c is a prefix of
// the ambient context (it is weakened under the extra inner binders).
// Subst bodies must be bare metavariables here.
std::optional<std::string> check_rule_term(const Signature& sig,
                                           const std::vector<RuleMVar>& mvars,
                                           const Term& t, const Ctx& ambient,
                                           SortId expected);

// Replace metavariables by their bindings. `env[m]` lives at `mvars[m].ctx`;
// occurrences under extra binders are shifted. `ambientLen` is the length of
// the context at t's root.
Term instantiate(const Term& t, const std::vector<Term>& env,
                 const std::vector<RuleMVar>& mvars, int ambientLen = 0);

// Structural checks on sorts, subsort poset, constructor and edge
// declarations.
ValidationReport validate_signature_basic(const Signature& sig);

// Rule invariants: bare distinct premise targets that do not occur in their
// own premise's source or labels, pattern-only conclusion sources, closed
// endpoint terms, well-sorted labels.
ValidationReport validate_rules(const Signature& sig);

}  // namespace howebench
