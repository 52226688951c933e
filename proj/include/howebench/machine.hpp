#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "howebench/engine.hpp"

namespace howebench {

// One outcome of a single machine move on a closed delimited-control program:
// either the unique next state, a finished value, or a control capture that
// found no delimiter and surfaces its body together with the reified local
// evaluation context.
struct MachineOutcome {
  enum class Kind { Step, Value, ControlStuck };
  Kind kind = Kind::Value;
  Term next;          // Step
  Term value;         // Value
  Term capturedBody;  // ControlStuck: the binder body of the stranded capture
  Term localContext;  // ControlStuck: the surrounding context, reified
};

// Performs exactly one step of the direct-style evaluator: leftmost-innermost
// evaluation-context decomposition, function-before-argument; beta contracts
// in one move, a delimiter around a value drops, and a capture consumes the
// nearest enclosing delimiter, reifying the context between them into a
// function that re-wraps its argument.  Deliberately independent of the rule
// engine: no clause evaluation, no stored transitions.
MachineOutcome machine_step(const Signature& sig, const Term& e);

// Silent-step closure of a program under the machine, with the label-indexed
// transition families it ends in.
struct MachineLabels {
  // Every state the silent run visits, in order, starting with the input.
  std::vector<Term> trace;
  // True when the run has a definite answer: it ended in a value, a stranded
  // capture, or a revisited state (a genuine loop).  False only when fuel ran
  // out first, in which case nothing below may be trusted.
  bool complete = false;
  bool diverged = false;  // genuine loop, or fuel exhausted
  // Reached a value lam(x. b): the body b, indexing the family w -> b[w].
  std::optional<Term> vFamily;
  // Reached a stranded capture with body b and reified local context F,
  // indexing the family E -> <b[k -> \x. <E[F[x]]>]>.
  std::optional<std::pair<Term, Term>> cFamily;
};

MachineLabels machine_weak_labels(const Signature& sig, const Term& e, int fuel);

// Plugs a term into a reified context (hole / function-position / argument-
// position constructors) by structural recursion.  Independent of the
// signature's clause-defined plugging operation on purpose: the oracle must
// not share code with what it checks.
Term machine_plug(const Signature& sig, const Term& ctx, const Term& t);

struct OracleReport {
  int checked = 0;  // comparisons that produced a definite verdict
  int skipped = 0;  // comparisons without one (row not exhausted, or fuel-cut run)
  std::vector<std::string> diffs;
  bool ok() const { return diffs.empty(); }
};

// Cross-validates the rule engine against the direct machine on one closed
// program: the silent-step reachable set, then the value family and the
// capture family instantiated at every label the store knows.  Rows the
// engine could not finish and runs the machine could not finish are skipped,
// never judged.
OracleReport oracle_compare(const Signature& sig, const Term& e, int fuel,
                            const LabelUniverse& labels);

}  // namespace howebench
