#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "howebench/engine.hpp"

namespace howebench {

// One move of a distinguishing play.  The challenger fires a transition that
// is present in the store; every response the responder has stored leads to a
// pair that falls later in the play, and the final step has no response at
// all on a row the engine marked exhausted.
struct TraceStep {
  bool challengerIsLeft = true;
  Term challengerSrc;
  Term responderSrc;
  int edge = -1;
  std::vector<Term> labels;
  Term challengerTgt;
  std::vector<Term> responderTgts;  // stored responses; all refuted later
};

struct BisimVerdict {
  bool distinguished = false;
  int round = 0;  // refinement round at which the pair fell (distinguished only)
  // True when some term reachable from the pair has a non-exhausted row, i.e.
  // the equivalence claim is only as strong as the derived fragment.
  bool truncationSeen = false;
  std::vector<TraceStep> trace;  // distinguished only
};

// Symmetric relation over the universe of a transition store, produced by
// greatest-fixpoint refinement.  Internally a matrix of removal rounds:
// 0 = related at the fixpoint, -1 = sorts incomparable, k >= 1 = removed in
// refinement round k.
class BisimRelation {
 public:
  BisimRelation() = default;

  bool inUniverse(const Term& t) const { return idx_.count(t) != 0; }
  bool related(const Term& a, const Term& b) const;
  std::vector<Term> relatedTo(const Term& a) const;
  const std::vector<Term>& universe() const { return universe_; }
  // Ordered related pairs (a, b) with a != b, counted once per orientation.
  std::size_t pairCount() const;
  int removalRound(const Term& a, const Term& b) const;  // 0 if still related

  // Builds a relation over the store universe from explicit pairs (closed
  // under symmetry, plus the diagonal when addIdentity is set).  Pairs with a
  // term outside the universe are ignored.  Intended for hand-built relations
  // in tests and fault-injection checks; refined relations come from
  // compute_bisim.
  static BisimRelation fromPairs(const TransitionStore& store,
                                 const std::vector<std::pair<Term, Term>>& pairs,
                                 bool addIdentity);

 private:
  std::vector<Term> universe_;
  std::map<Term, int> idx_;
  int n_ = 0;
  std::vector<int> mat_;  // n * n removal rounds

  int at(int i, int j) const { return mat_[static_cast<std::size_t>(i) * n_ + j]; }
  void set(int i, int j, int v) { mat_[static_cast<std::size_t>(i) * n_ + j] = v; }

  friend struct BisimComputer;
  friend BisimVerdict verdict_for(const Signature& sig, const TransitionStore& store,
                                  const BisimRelation& rel, const Term& a, const Term& b);
};

struct BisimResult {
  BisimRelation relation;
  int rounds = 0;  // refinement passes that removed at least one pair
  // Verdict per requested candidate pair, keyed in the order given.
  std::vector<std::pair<std::pair<Term, Term>, BisimVerdict>> verdicts;
};

// Terms whose whole reachable fragment (stored targets, transitively) has
// only exhausted rows.  On this fragment the store's answer is complete, so
// the computed relation is trustworthy there; in particular it is transitive,
// which partially explored terms cannot promise.
std::set<Term> fully_explored_terms(const TransitionStore& store);

// The relation restricted to pairs of fully explored terms, closed under
// symmetry and padded with the diagonal over the store universe.  Use this
// wherever relatedness is consumed as a fact rather than re-checked --
// composing through a partially explored middle term can relate terms the
// store itself tells apart.
BisimRelation restrict_to_explored(const TransitionStore& store, const BisimRelation& rel);

// Greatest-fixpoint bounded bisimilarity over the store universe.
//
// Starts from all pairs with comparable least sorts and repeatedly removes a
// pair when one side has a stored transition that the other side cannot match
// with any stored transition (same edge, identical labels) into a surviving
// pair -- but only when the responder's row for that edge is exhausted, so
// truncation never manufactures a distinction.  Candidates must be terms of
// the store universe; their verdicts carry a replayable trace when
// distinguished and a truncation flag otherwise.
BisimResult compute_bisim(const Signature& sig, const TransitionStore& store,
                          const std::vector<std::pair<Term, Term>>& candidates);

// Shared report shape for the sampled closure checks below.
struct CheckReport {
  int samples = 0;   // sampling attempts made
  int checked = 0;   // probes that produced an in-universe comparison
  int skipped = 0;   // probes skipped (composite or pair outside the universe)
  std::vector<std::string> violations;  // printable witnesses
  bool ok() const { return violations.empty(); }
};

// Samples closure probes for the relation: clause-defined operations applied
// to related arguments (with the remaining slots fixed), and substitution of
// related values into an enumerated open body.  A probe whose composites are
// both in the store universe must land on a related pair; composites outside
// the universe are counted as skips.
CheckReport check_enhanced(const Signature& sig, const TransitionStore& store,
                           const BisimRelation& rel, int maxTermSize, int samples,
                           std::uint64_t seed);

// Samples constructor compatibility: a constructor applied to argument tuples
// related pointwise (identity pairs allowed as padding, and used at binder
// positions) must produce a related pair whenever both composites are in the
// store universe.
CheckReport check_congruence(const Signature& sig, const TransitionStore& store,
                             const BisimRelation& rel, int maxTermSize, int samples,
                             std::uint64_t seed);

}  // namespace howebench
