#pragma once

#include <stdexcept>

#include "howebench/signature.hpp"

namespace howebench {

// Thrown when clause evaluation cannot proceed (missing clause, metavariable
// in a concrete term, runaway recursion guard).
struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EvalStats {
  int maxUnfoldDepth = 0;  // deepest chain of nested clause unfoldings
  int unfoldCount = 0;     // total clause unfoldings
};

// Checks the clause programs of every operation: exhaustive and
// non-overlapping clause coverage, well-formed patterns, well-sorted
// right-hand sides, and recursive calls only on immediate arguments of the
// matched constructor (same operation) or on strictly earlier operations.
ValidationReport validate_signature_ops(const Signature& sig);

// Applies the clause for `op` whose pattern matches the head constructor of
// `main` (which must be head-normal, i.e. a constructor term), then
// normalizes the instantiated right-hand side.
Term eval_op(const Signature& sig, int op, const Term& main, const std::vector<Term>& aux,
             EvalStats* stats = nullptr);

// Removes every operation call and explicit substitution from t, bottom-up.
// The result contains only variables and constructors.
Term normalize(const Signature& sig, const Term& t, EvalStats* stats = nullptr);

}  // namespace howebench
