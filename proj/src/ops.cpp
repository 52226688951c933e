#include "howebench/ops.hpp"

#include <algorithm>

namespace howebench {

namespace {

constexpr int kUnfoldBudget = 1000000;

std::vector<RuleMVar> clauseMVars(const Signature& sig, const ClauseDecl& clause) {
  const ConDecl& con = sig.cons[clause.con];
  const OpDecl& op = sig.ops[clause.op];
  std::vector<RuleMVar> mv;
  for (size_t i = 0; i < con.args.size(); ++i)
    mv.push_back({clause.argNames[i], con.args[i].sort, con.args[i].binders});
  for (size_t j = 0; j < op.aux.size(); ++j)
    mv.push_back({clause.auxNames[j], op.aux[j], Ctx{}});
  return mv;
}

void checkRecursion(const Signature& sig, int op, int conArity, const Term& t,
                    const ClauseDecl& clause, ValidationReport& rep,
                    const std::string& where) {
  if (t.kind() == Term::Kind::OpCall) {
    int callee = t.head();
    if (callee > op) {
      rep.add(where, "calls operation '" + sig.ops[callee].name +
                         "' declared later; only earlier operations or recursive calls on "
                         "immediate pattern arguments are allowed");
    } else if (callee == op) {
      const Term& main = t.args()[0];
      if (main.kind() != Term::Kind::MVar || main.head() >= conArity) {
        rep.add(where, "recursive call must take an immediate argument of the matched "
                       "constructor as its main argument");
      }
    }
  }
  for (const Term& child : t.args()) checkRecursion(sig, op, conArity, child, clause, rep, where);
}

Term normalizeAt(const Signature& sig, const Term& t, EvalStats* stats, int depth,
                 int& budget);

Term evalClause(const Signature& sig, int op, const Term& main, const std::vector<Term>& aux,
                EvalStats* stats, int depth, int& budget) {
  const OpDecl& decl = sig.ops[op];
  if (main.kind() != Term::Kind::Con) {
    throw EvalError("operation '" + decl.name +
                    "' applied to a non-constructor main argument");
  }
  const ClauseDecl* clause = sig.clauseFor(op, main.head());
  if (clause == nullptr) {
    throw EvalError("operation '" + decl.name + "' has no clause for constructor '" +
                    sig.cons[main.head()].name + "'");
  }
  if (--budget < 0) throw EvalError("operation evaluation exceeded the unfolding budget");
  if (stats != nullptr) {
    ++stats->unfoldCount;
    stats->maxUnfoldDepth = std::max(stats->maxUnfoldDepth, depth + 1);
  }
  std::vector<RuleMVar> mvars = clauseMVars(sig, *clause);
  std::vector<Term> env;
  env.reserve(mvars.size());
  for (const Term& a : main.args()) env.push_back(a);
  for (const Term& a : aux) env.push_back(a);
  Term rhs = instantiate(clause->rhs, env, mvars, 0);
  return normalizeAt(sig, rhs, stats, depth + 1, budget);
}

Term normalizeAt(const Signature& sig, const Term& t, EvalStats* stats, int depth,
                 int& budget) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t;
    case Term::Kind::MVar:
      throw EvalError("metavariable in a concrete term");
    case Term::Kind::Con: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      bool changed = false;
      for (const Term& a : t.args()) {
        args.push_back(normalizeAt(sig, a, stats, depth, budget));
        if (!(args.back() == a)) changed = true;
      }
      if (!changed) return t;
      std::vector<int> binders;
      binders.reserve(args.size());
      for (size_t i = 0; i < t.args().size(); ++i) binders.push_back(t.binders(i));
      return Term::con(t.head(), std::move(args), binders);
    }
    case Term::Kind::OpCall: {
      Term main = normalizeAt(sig, t.args()[0], stats, depth, budget);
      std::vector<Term> aux;
      aux.reserve(t.args().size() - 1);
      for (size_t i = 1; i < t.args().size(); ++i)
        aux.push_back(normalizeAt(sig, t.args()[i], stats, depth, budget));
      return evalClause(sig, t.head(), main, aux, stats, depth, budget);
    }
    case Term::Kind::Subst: {
      Term body = normalizeAt(sig, t.args()[0], stats, depth, budget);
      std::vector<Term> reps;
      reps.reserve(t.args().size() - 1);
      for (size_t i = 1; i < t.args().size(); ++i)
        reps.push_back(normalizeAt(sig, t.args()[i], stats, depth, budget));
      return substitute(body, reps);
    }
  }
  return t;
}

}  // namespace

ValidationReport validate_signature_ops(const Signature& sig) {
  ValidationReport rep;
  for (size_t o = 0; o < sig.ops.size(); ++o) {
    const OpDecl& op = sig.ops[o];
    std::string where = "op " + op.name;
    auto sortOk = [&](SortId s) { return s >= 0 && s < static_cast<SortId>(sig.sorts.size()); };
    if (!sortOk(op.mainSort) || !sortOk(op.result)) {
      rep.add(where, "unknown sort in declaration");
      continue;
    }
    bool auxOk = true;
    for (SortId s : op.aux) auxOk = auxOk && sortOk(s);
    if (!auxOk) {
      rep.add(where, "unknown sort in declaration");
      continue;
    }

    // Clause coverage: exactly one clause per constructor of the main sort
    // (including constructors of its subsorts).
    std::vector<int> clauseCount(sig.cons.size(), 0);
    for (const ClauseDecl& clause : sig.clauses) {
      if (clause.op != static_cast<int>(o)) continue;
      if (clause.con < 0 || clause.con >= static_cast<int>(sig.cons.size())) {
        rep.add(where, "clause for unknown constructor");
        continue;
      }
      ++clauseCount[clause.con];
      if (!sig.sortLeq(sig.cons[clause.con].result, op.mainSort)) {
        rep.add(where, "clause for constructor '" + sig.cons[clause.con].name +
                           "' whose sort does not feed the operation's main sort");
      }
    }
    for (size_t c = 0; c < sig.cons.size(); ++c) {
      if (!sig.sortLeq(sig.cons[c].result, op.mainSort)) continue;
      if (clauseCount[c] == 0)
        rep.add(where, "missing clause for constructor '" + sig.cons[c].name + "'");
      else if (clauseCount[c] > 1)
        rep.add(where, "duplicate clause for constructor '" + sig.cons[c].name + "'");
    }

    for (const ClauseDecl& clause : sig.clauses) {
      if (clause.op != static_cast<int>(o)) continue;
      if (clause.con < 0 || clause.con >= static_cast<int>(sig.cons.size())) continue;
      const ConDecl& con = sig.cons[clause.con];
      std::string cwhere = where + ", clause for " + con.name;
      if (clause.argNames.size() != con.args.size()) {
        rep.add(cwhere, "pattern arity does not match the constructor");
        continue;
      }
      if (clause.auxNames.size() != op.aux.size()) {
        rep.add(cwhere, "auxiliary parameter count does not match the declaration");
        continue;
      }
      std::vector<std::string> names = clause.argNames;
      names.insert(names.end(), clause.auxNames.begin(), clause.auxNames.end());
      for (size_t i = 0; i < names.size(); ++i)
        for (size_t j = i + 1; j < names.size(); ++j)
          if (names[i] == names[j])
            rep.add(cwhere, "duplicate parameter name '" + names[i] + "'");

      std::vector<RuleMVar> mvars = clauseMVars(sig, clause);
      if (auto err = check_rule_term(sig, mvars, clause.rhs, Ctx{}, op.result))
        rep.add(cwhere, *err);
      checkRecursion(sig, static_cast<int>(o), static_cast<int>(con.args.size()), clause.rhs,
                     clause, rep, cwhere);
    }
  }
  return rep;
}

Term eval_op(const Signature& sig, int op, const Term& main, const std::vector<Term>& aux,
             EvalStats* stats) {
  int budget = kUnfoldBudget;
  return evalClause(sig, op, main, aux, stats, 0, budget);
}

Term normalize(const Signature& sig, const Term& t, EvalStats* stats) {
  int budget = kUnfoldBudget;
  return normalizeAt(sig, t, stats, 0, budget);
}

}  // namespace howebench
