#pragma once

#include <set>
#include <string>
#include <tuple>

#include "howebench/bisim.hpp"

namespace howebench {

// Relation over possibly-open terms, indexed by their binding context.
class Relation {
 public:
  using Item = std::tuple<Ctx, Term, Term>;

  bool contains(const Ctx& ctx, const Term& a, const Term& b) const {
    return items_.count({ctx, a, b}) > 0;
  }
  void insert(const Ctx& ctx, const Term& a, const Term& b) {
    items_.insert({ctx, a, b});
  }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  const std::set<Item>& items() const { return items_; }

 private:
  std::set<Item> items_;
};

// Pairs (a, c) such that (a, b) is in r and (b, c) is in s at the same
// binding context.
Relation compose_relations(const Relation& r, const Relation& s);

// Least transitive relation containing r (per binding context).
Relation transitive_closure(const Relation& r);

// All normal terms up to maxTermSize, stratified by binding context. The
// contexts are the ones reachable from the empty context through constructor
// binder positions within the size budget.
struct HoweUniverse {
  std::map<Ctx, std::vector<Term>> strata;
  std::map<Ctx, std::set<Term>> index;

  bool contains(const Ctx& ctx, const Term& t) const {
    auto it = index.find(ctx);
    return it != index.end() && it->second.count(t) > 0;
  }
};

HoweUniverse build_howe_universe(const Signature& sig, int maxTermSize);

struct HoweClosure {
  Relation base;
  Relation closure;
  int iterations = 0;
  bool converged = true;
};

// Least relation over the universe that contains base, relates every
// variable to itself, is compatible with every constructor (arguments
// pointwise related, including under binders at the extended contexts), and
// absorbs the similarity on closed terms from the right: H;sim inside H.
// Pass sim = nullptr for the plain congruence closure.
//
// Right composition iterates, so sim-links chain inside the closure.  A
// bounded similarity is only transitive on the fully explored fragment;
// absorb restrict_to_explored(store, rel) rather than the raw relation, or
// chains through partially explored middle terms will relate terms the store
// tells apart.
HoweClosure howe_closure(const Signature& sig, const HoweUniverse& uni,
                         const Relation& base, const BisimRelation* sim, int maxIter);

struct HoweCheck {
  std::string name;
  int checked = 0;
  int skipped = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

struct HoweReport {
  std::vector<HoweCheck> checks;
  bool pass = true;
  const HoweCheck* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

// Validates a computed closure H against the store:
//   constructor-compatibility    pointwise H-related tuples land in H
//   reflexivity                  every universe term is H-related to itself
//   similarity-absorption        H;sim stays inside H (closed terms)
//   contains-similarity          sim restricted to the universe is inside H
//   symmetric-transitive-closure the transitive closure of H is symmetric
//   flexible-simulation          for closed (a, b) in H, every stored
//                                transition of a is answered by b at every
//                                componentwise H-related label, landing on
//                                H-related targets; rows that are not
//                                exhausted are skipped, not judged
//
// Relatedness beyond the universe is decided in layers: the closure inside
// its strata, then `sim` on closed store terms, then structural
// decomposition into closure-related arguments -- exactly the pairs
// constructor compatibility would add over a larger universe.  Pass as `sim`
// the same fragment-restricted similarity the closure absorbed.
//
// A missed response is a violation only when `unrefuted` rules the target
// pair out.  Pass the unrestricted bounded relation: pairs absent from it
// were distinguished by exhausted rows, so the miss is genuine; pairs still
// in it might become related under a larger universe, so the miss is
// counted as a skip.
HoweReport check_howe_properties(const Signature& sig, const HoweUniverse& uni,
                                 const HoweClosure& hc, const TransitionStore& store,
                                 const BisimRelation& sim, const BisimRelation& unrefuted,
                                 const LabelUniverse& labels);

}  // namespace howebench
