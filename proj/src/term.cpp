#include "howebench/term.hpp"

#include <stdexcept>

namespace howebench {

Term Term::make(Kind k, int head, std::vector<Term> args, std::vector<int> binders) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->head = head;
  n->args = std::move(args);
  n->binders = std::move(binders);
  int sz = 1;
  for (const Term& a : n->args) sz += a.size();
  n->size = sz;
  return Term(std::move(n));
}

Term Term::var(int index) {
  if (index < 0) throw std::invalid_argument("negative variable index");
  return make(Kind::Var, index, {}, {});
}

Term Term::con(int conId, std::vector<Term> args, std::vector<int> binders) {
  if (!binders.empty() && binders.size() != args.size())
    throw std::invalid_argument("binder list does not match argument list");
  return make(Kind::Con, conId, std::move(args), std::move(binders));
}

Term Term::con0(int conId) { return make(Kind::Con, conId, {}, {}); }

Term Term::opcall(int opId, Term main, std::vector<Term> aux) {
  std::vector<Term> args;
  args.reserve(aux.size() + 1);
  args.push_back(std::move(main));
  for (Term& a : aux) args.push_back(std::move(a));
  return make(Kind::OpCall, opId, std::move(args), {});
}

Term Term::subst(Term body, std::vector<Term> replacements) {
  std::vector<Term> args;
  args.reserve(replacements.size() + 1);
  args.push_back(std::move(body));
  for (Term& r : replacements) args.push_back(std::move(r));
  return make(Kind::Subst, 0, std::move(args), {});
}

Term Term::mvar(int id) { return make(Kind::MVar, id, {}, {}); }

int Term::binders(size_t i) const {
  if (node_->binders.empty()) return 0;
  return node_->binders[i];
}

bool Term::operator==(const Term& o) const {
  if (node_ == o.node_) return true;
  if (node_->size != o.node_->size || node_->kind != o.node_->kind ||
      node_->head != o.node_->head || node_->args.size() != o.node_->args.size())
    return false;
  for (size_t i = 0; i < node_->args.size(); ++i)
    if (!(node_->args[i] == o.node_->args[i])) return false;
  return true;
}

std::strong_ordering Term::operator<=>(const Term& o) const {
  if (node_ == o.node_) return std::strong_ordering::equal;
  if (auto c = node_->size <=> o.node_->size; c != 0) return c;
  if (auto c = static_cast<int>(node_->kind) <=> static_cast<int>(o.node_->kind); c != 0) return c;
  if (auto c = node_->head <=> o.node_->head; c != 0) return c;
  if (auto c = node_->args.size() <=> o.node_->args.size(); c != 0) return c;
  for (size_t i = 0; i < node_->args.size(); ++i)
    if (auto c = node_->args[i] <=> o.node_->args[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

namespace {

Term shift_at(const Term& t, int by, int cutoff) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t.head() >= cutoff ? Term::var(t.head() + by) : t;
    case Term::Kind::MVar:
      return t;
    case Term::Kind::Con: {
      std::vector<Term> args;
      std::vector<int> binders;
      args.reserve(t.args().size());
      binders.reserve(t.args().size());
      bool changed = false;
      for (size_t i = 0; i < t.args().size(); ++i) {
        Term a = shift_at(t.args()[i], by, cutoff + t.binders(i));
        changed = changed || !(a == t.args()[i]);
        args.push_back(std::move(a));
        binders.push_back(t.binders(i));
      }
      return changed ? Term::con(t.head(), std::move(args), std::move(binders)) : t;
    }
    case Term::Kind::OpCall: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      bool changed = false;
      for (const Term& a : t.args()) {
        Term b = shift_at(a, by, cutoff);
        changed = changed || !(b == a);
        args.push_back(std::move(b));
      }
      if (!changed) return t;
      Term main = args[0];
      args.erase(args.begin());
      return Term::opcall(t.head(), std::move(main), std::move(args));
    }
    case Term::Kind::Subst: {
      // Body is bound by the replacement slots; only replacements see the
      // ambient context.
      std::vector<Term> reps;
      reps.reserve(t.args().size() - 1);
      bool changed = false;
      for (size_t i = 1; i < t.args().size(); ++i) {
        Term r = shift_at(t.args()[i], by, cutoff);
        changed = changed || !(r == t.args()[i]);
        reps.push_back(std::move(r));
      }
      return changed ? Term::subst(t.args()[0], std::move(reps)) : t;
    }
  }
  throw std::logic_error("unreachable");
}

Term subst_at(const Term& t, const std::vector<Term>& reps, int depth) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      int i = t.head();
      if (i < depth) return t;
      int slot = i - depth;
      int n = static_cast<int>(reps.size());
      if (slot >= n)
        throw std::invalid_argument("substitute: free index beyond replacement list");
      // Replacements run parallel to the context, innermost slot last.
      return shift(reps[n - 1 - slot], depth, 0);
    }
    case Term::Kind::MVar:
      throw std::invalid_argument("substitute: metavariable in instantiated term");
    case Term::Kind::Con: {
      std::vector<Term> args;
      std::vector<int> binders;
      args.reserve(t.args().size());
      binders.reserve(t.args().size());
      for (size_t i = 0; i < t.args().size(); ++i) {
        args.push_back(subst_at(t.args()[i], reps, depth + t.binders(i)));
        binders.push_back(t.binders(i));
      }
      return Term::con(t.head(), std::move(args), std::move(binders));
    }
    case Term::Kind::OpCall: {
      std::vector<Term> aux;
      aux.reserve(t.args().size() - 1);
      Term main = subst_at(t.args()[0], reps, depth);
      for (size_t i = 1; i < t.args().size(); ++i)
        aux.push_back(subst_at(t.args()[i], reps, depth));
      return Term::opcall(t.head(), std::move(main), std::move(aux));
    }
    case Term::Kind::Subst: {
      std::vector<Term> rs;
      rs.reserve(t.args().size() - 1);
      for (size_t i = 1; i < t.args().size(); ++i)
        rs.push_back(subst_at(t.args()[i], reps, depth));
      return Term::subst(t.args()[0], std::move(rs));
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

Term shift(const Term& t, int by, int cutoff) {
  if (by == 0) return t;
  return shift_at(t, by, cutoff);
}

Term substitute(const Term& t, const std::vector<Term>& replacements) {
  return subst_at(t, replacements, 0);
}

namespace {

int max_free_at(const Term& t, int depth) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t.head() - depth;
    case Term::Kind::MVar:
      return -1;
    case Term::Kind::Con: {
      int m = -1;
      for (size_t i = 0; i < t.args().size(); ++i)
        m = std::max(m, max_free_at(t.args()[i], depth + t.binders(i)));
      return m;
    }
    case Term::Kind::OpCall: {
      int m = -1;
      for (const Term& a : t.args()) m = std::max(m, max_free_at(a, depth));
      return m;
    }
    case Term::Kind::Subst: {
      int m = -1;
      for (size_t i = 1; i < t.args().size(); ++i)
        m = std::max(m, max_free_at(t.args()[i], depth));
      return m;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

int max_free_index(const Term& t) { return max_free_at(t, 0); }

bool contains_mvar(const Term& t) {
  if (t.kind() == Term::Kind::MVar) return true;
  for (const Term& a : t.args())
    if (contains_mvar(a)) return true;
  return false;
}

bool contains_transient(const Term& t) {
  if (t.kind() == Term::Kind::OpCall || t.kind() == Term::Kind::Subst) return true;
  for (const Term& a : t.args())
    if (contains_transient(a)) return true;
  return false;
}

void closed_subterms(const Term& t, std::vector<Term>& out) {
  if (t.kind() == Term::Kind::OpCall || t.kind() == Term::Kind::Subst ||
      t.kind() == Term::Kind::MVar)
    return;
  if (max_free_index(t) < 0) out.push_back(t);
  if (t.kind() == Term::Kind::Con) {
    for (size_t i = 0; i < t.args().size(); ++i)
      if (t.binders(i) == 0) closed_subterms(t.args()[i], out);
  }
}

}  // namespace howebench
