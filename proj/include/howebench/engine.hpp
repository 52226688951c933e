#pragma once

#include <map>
#include <set>
#include <stdexcept>

#include "howebench/signature.hpp"

namespace howebench {

struct EngineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Closed normal label candidates per sort, with membership index.
struct LabelUniverse {
  std::map<SortId, std::vector<Term>> terms;
  std::map<SortId, std::set<Term>> index;

  bool contains(SortId s, const Term& t) const {
    auto it = index.find(s);
    return it != index.end() && it->second.count(t) > 0;
  }
  void insert(SortId s, const Term& t) {
    if (index[s].insert(t).second) terms[s].push_back(t);
  }
};

// All closed terms up to labelSize for every sort used as an edge label slot.
LabelUniverse build_label_universe(const Signature& sig, int labelSize);

struct EngineConfig {
  int fuel = 30;           // saturation rounds
  int maxUniverse = 5000;  // term capacity; exceeding it voids exhaustion
  int sizeCapFactor = 4;   // admit targets up to factor * largest seed size
};

struct LabeledTransition {
  int edge;
  std::vector<Term> labels;
  Term target;
};

// The derived transition graph over a finite term universe. Per (term, edge)
// the store knows whether its answer is complete within the configured
// bounds ("exhausted").
class TransitionStore {
 public:
  struct Row {
    std::map<std::vector<Term>, std::set<Term>> byLabel;
    bool truncated = false;
  };

  const std::vector<Term>& universe() const { return universe_; }
  int indexOf(const Term& t) const {
    auto it = idx_.find(t);
    return it == idx_.end() ? -1 : it->second;
  }
  bool inUniverse(const Term& t) const { return indexOf(t) >= 0; }

  int edgeCount() const { return edgeCount_; }
  const Term& termAt(int i) const { return universe_[i]; }
  const Row& rowAt(int termIdx, int edge) const { return rows_[termIdx][edge]; }

  // Null when t is outside the universe.
  const Row* row(const Term& src, int edge) const;
  const std::set<Term>* targets(const Term& src, int edge,
                                const std::vector<Term>& labels) const;
  std::vector<LabeledTransition> transitionsOf(const Term& src) const;

  // True when every transition of src along edge (with labels drawn from the
  // label universe) is present.
  bool exhausted(const Term& src, int edge) const;
  bool exhaustedAllEdges(const Term& src) const;

  bool saturated() const { return saturated_; }
  bool overflow() const { return overflow_; }
  int rounds() const { return rounds_; }
  size_t transitionCount() const;

 private:
  std::vector<Term> universe_;
  std::map<Term, int> idx_;
  std::vector<std::vector<Row>> rows_;  // [term][edge]
  bool saturated_ = false;
  bool overflow_ = false;
  int rounds_ = 0;
  int edgeCount_ = 0;

  friend TransitionStore derive_transitions(const Signature& sig,
                                            const std::vector<Term>& seeds,
                                            const LabelUniverse& labels,
                                            const EngineConfig& cfg);
  friend struct EngineDeriver;
};

// Saturates the rule system over the closed-subterm universe of the seeds.
// Throws EngineError when a rule cannot be executed (unschedulable premises,
// unbound conclusion, open or invalid seeds).
TransitionStore derive_transitions(const Signature& sig, const std::vector<Term>& seeds,
                                   const LabelUniverse& labels, const EngineConfig& cfg);

}  // namespace howebench
