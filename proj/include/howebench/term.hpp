#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <vector>

namespace howebench {

using SortId = int;

// Binding context: sorts of the enclosing binders, innermost binder last.
// De Bruijn index 0 refers to the innermost binder, i.e. the last entry.
using Ctx = std::vector<SortId>;

// Immutable first-order term with binding.
//
//   Var    de Bruijn index into the ambient context
//   Con    constructor application; each argument may carry binders
//   OpCall call to a clause-defined operation (transient, removed by normalize)
//   Subst  explicit simultaneous substitution (transient, removed by normalize)
//   MVar   rule/clause metavariable; never appears in instantiated terms
//
// A Subst body lives in the context formed by the replacement slots alone:
// replacements run parallel to that context (last replacement = index 0).
class Term {
public:
  enum class Kind : uint8_t { Var, Con, OpCall, Subst, MVar };

  Term() = default;

  static Term var(int index);
  static Term con(int conId, std::vector<Term> args, std::vector<int> binders);
  static Term con0(int conId);
  static Term opcall(int opId, Term main, std::vector<Term> aux);
  static Term subst(Term body, std::vector<Term> replacements);
  static Term mvar(int id);

  Kind kind() const { return node_->kind; }
  int head() const { return node_->head; }
  const std::vector<Term>& args() const { return node_->args; }
  // Number of binders around child i (nonzero only for Con arguments).
  int binders(size_t i) const;
  int size() const { return node_->size; }
  bool valid() const { return node_ != nullptr; }

  bool operator==(const Term& o) const;
  bool operator!=(const Term& o) const { return !(*this == o); }
  // Total order: (size, kind, head, children). Gives size-lexicographic
  // enumeration order and deterministic container iteration everywhere.
  std::strong_ordering operator<=>(const Term& o) const;

private:
  struct Node {
    Kind kind;
    int head;
    int size;
    std::vector<Term> args;
    std::vector<int> binders;  // parallel to args; empty means all zero
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Term make(Kind k, int head, std::vector<Term> args, std::vector<int> binders);

  std::shared_ptr<const Node> node_;
};

// Raise free indices >= cutoff by `by`.
Term shift(const Term& t, int by, int cutoff = 0);

// Capture-avoiding simultaneous substitution. `replacements` has exactly one
// entry per slot of t's context, parallel to it (replacements.back() replaces
// index 0). Throws std::invalid_argument if t has a free index beyond them.
Term substitute(const Term& t, const std::vector<Term>& replacements);

// Largest free de Bruijn index, or -1 if the term is closed. MVar nodes are
// opaque; Subst bodies are bound by their replacement slots.
int max_free_index(const Term& t);

bool contains_mvar(const Term& t);
// True if any OpCall or Subst node occurs (term is not in normal form).
bool contains_transient(const Term& t);

// Closed subterms reachable without crossing a binder, t itself included.
// Transient nodes are not descended into.
void closed_subterms(const Term& t, std::vector<Term>& out);

}  // namespace howebench
