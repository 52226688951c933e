#include "howebench/signature.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace howebench {

namespace {
int find_name(const std::vector<std::string>& names, const std::string& name) {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}
}  // namespace

int Signature::sortId(const std::string& name) const { return find_name(sorts, name); }

int Signature::conId(const std::string& name) const {
  for (size_t i = 0; i < cons.size(); ++i)
    if (cons[i].name == name) return static_cast<int>(i);
  return -1;
}

int Signature::opId(const std::string& name) const {
  for (size_t i = 0; i < ops.size(); ++i)
    if (ops[i].name == name) return static_cast<int>(i);
  return -1;
}

int Signature::edgeId(const std::string& name) const {
  for (size_t i = 0; i < edges.size(); ++i)
    if (edges[i].name == name) return static_cast<int>(i);
  return -1;
}

SortId Signature::addSort(const std::string& name) {
  sorts.push_back(name);
  rebuildClosure();
  return static_cast<SortId>(sorts.size()) - 1;
}

void Signature::addSubsort(SortId sub, SortId super) {
  subsorts.emplace_back(sub, super);
  rebuildClosure();
}

void Signature::rebuildClosure() {
  size_t n = sorts.size();
  leq_.assign(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; ++i) leq_[i][i] = true;
  for (auto [a, b] : subsorts)
    if (a >= 0 && b >= 0 && a < static_cast<int>(n) && b < static_cast<int>(n))
      leq_[a][b] = true;
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (leq_[i][k] && leq_[k][j]) leq_[i][j] = true;
}

bool Signature::sortLeq(SortId a, SortId b) const {
  if (a < 0 || b < 0 || a >= static_cast<int>(sorts.size()) ||
      b >= static_cast<int>(sorts.size()))
    return false;
  return leq_[a][b];
}

std::optional<SortId> Signature::sortJoin(SortId a, SortId b) const {
  if (sortLeq(a, b)) return b;
  if (sortLeq(b, a)) return a;
  return std::nullopt;
}

const ClauseDecl* Signature::clauseFor(int op, int con) const {
  for (const ClauseDecl& c : clauses)
    if (c.op == op && c.con == con) return &c;
  return nullptr;
}

namespace {

SortResult sort_err(std::string msg) { return SortResult{std::nullopt, std::move(msg)}; }

SortResult least_sort_at(const Signature& sig, const Ctx& ctx, const Term& t);

SortResult check_sort_at(const Signature& sig, const Ctx& ctx, const Term& t,
                         SortId expected) {
  SortResult r = least_sort_at(sig, ctx, t);
  if (!r.ok()) return r;
  if (!sig.sortLeq(*r.sort, expected))
    return sort_err("sort " + sig.sorts[*r.sort] + " is not a subsort of " +
                    sig.sorts[expected]);
  return r;
}

SortResult least_sort_at(const Signature& sig, const Ctx& ctx, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      int i = t.head();
      if (i >= static_cast<int>(ctx.size()))
        return sort_err("variable index " + std::to_string(i) + " out of context");
      return SortResult{ctx[ctx.size() - 1 - i], ""};
    }
    case Term::Kind::MVar:
      return sort_err("metavariable outside rule context");
    case Term::Kind::Con: {
      int c = t.head();
      if (c < 0 || c >= static_cast<int>(sig.cons.size()))
        return sort_err("unknown constructor id");
      const ConDecl& d = sig.cons[c];
      if (t.args().size() != d.args.size())
        return sort_err("constructor " + d.name + " arity mismatch");
      for (size_t i = 0; i < d.args.size(); ++i) {
        if (t.binders(i) != static_cast<int>(d.args[i].binders.size()))
          return sort_err("constructor " + d.name + " binder count mismatch at argument " +
                          std::to_string(i + 1));
        Ctx ext = ctx;
        ext.insert(ext.end(), d.args[i].binders.begin(), d.args[i].binders.end());
        SortResult a = check_sort_at(sig, ext, t.args()[i], d.args[i].sort);
        if (!a.ok())
          return sort_err("in argument " + std::to_string(i + 1) + " of " + d.name + ": " +
                          a.error);
      }
      return SortResult{d.result, ""};
    }
    case Term::Kind::OpCall: {
      int o = t.head();
      if (o < 0 || o >= static_cast<int>(sig.ops.size()))
        return sort_err("unknown operation id");
      const OpDecl& d = sig.ops[o];
      if (t.args().size() != d.aux.size() + 1)
        return sort_err("operation " + d.name + " arity mismatch");
      SortResult m = check_sort_at(sig, ctx, t.args()[0], d.mainSort);
      if (!m.ok()) return sort_err("in main argument of " + d.name + ": " + m.error);
      for (size_t i = 0; i < d.aux.size(); ++i) {
        SortResult a = check_sort_at(sig, ctx, t.args()[i + 1], d.aux[i]);
        if (!a.ok())
          return sort_err("in auxiliary argument " + std::to_string(i + 1) + " of " +
                          d.name + ": " + a.error);
      }
      return SortResult{d.result, ""};
    }
    case Term::Kind::Subst: {
      Ctx slots;
      for (size_t i = 1; i < t.args().size(); ++i) {
        SortResult r = least_sort_at(sig, ctx, t.args()[i]);
        if (!r.ok()) return sort_err("in replacement " + std::to_string(i) + ": " + r.error);
        slots.push_back(*r.sort);
      }
      return least_sort_at(sig, slots, t.args()[0]);
    }
  }
  return sort_err("unreachable");
}

}  // namespace

SortResult least_sort(const Signature& sig, const Ctx& ctx, const Term& t) {
  return least_sort_at(sig, ctx, t);
}

SortResult check_sort(const Signature& sig, const Ctx& ctx, const Term& t,
                      SortId expected) {
  return check_sort_at(sig, ctx, t, expected);
}

namespace {

bool ctx_is_prefix(const Ctx& pre, const Ctx& full) {
  if (pre.size() > full.size()) return false;
  return std::equal(pre.begin(), pre.end(), full.begin());
}

std::optional<std::string> check_rule_term_at(const Signature& sig,
                                              const std::vector<RuleMVar>& mvars,
                                              const Term& t, const Ctx& ambient,
                                              SortId expected) {
  switch (t.kind()) {
    case Term::Kind::MVar: {
      int m = t.head();
      if (m < 0 || m >= static_cast<int>(mvars.size()))
        return "unknown metavariable id";
      const RuleMVar& mv = mvars[m];
      if (!ctx_is_prefix(mv.ctx, ambient))
        return "metavariable " + mv.name +
               " used at a context that does not extend its own";
      if (!sig.sortLeq(mv.sort, expected))
        return "metavariable " + mv.name + " of sort " + sig.sorts[mv.sort] +
               " used where " + sig.sorts[expected] + " is required";
      return std::nullopt;
    }
    case Term::Kind::Var: {
      int i = t.head();
      if (i >= static_cast<int>(ambient.size())) return "variable index out of context";
      SortId s = ambient[ambient.size() - 1 - i];
      if (!sig.sortLeq(s, expected))
        return "variable of sort " + sig.sorts[s] + " used where " + sig.sorts[expected] +
               " is required";
      return std::nullopt;
    }
    case Term::Kind::Con: {
      int c = t.head();
      if (c < 0 || c >= static_cast<int>(sig.cons.size())) return "unknown constructor";
      const ConDecl& d = sig.cons[c];
      if (t.args().size() != d.args.size()) return "constructor " + d.name + " arity mismatch";
      if (!sig.sortLeq(d.result, expected))
        return "constructor " + d.name + " of sort " + sig.sorts[d.result] +
               " used where " + sig.sorts[expected] + " is required";
      for (size_t i = 0; i < d.args.size(); ++i) {
        if (t.binders(i) != static_cast<int>(d.args[i].binders.size()))
          return "constructor " + d.name + " binder count mismatch";
        Ctx ext = ambient;
        ext.insert(ext.end(), d.args[i].binders.begin(), d.args[i].binders.end());
        if (auto e = check_rule_term_at(sig, mvars, t.args()[i], ext, d.args[i].sort))
          return e;
      }
      return std::nullopt;
    }
    case Term::Kind::OpCall: {
      int o = t.head();
      if (o < 0 || o >= static_cast<int>(sig.ops.size())) return "unknown operation";
      const OpDecl& d = sig.ops[o];
      if (t.args().size() != d.aux.size() + 1) return "operation " + d.name + " arity mismatch";
      if (!sig.sortLeq(d.result, expected))
        return "operation " + d.name + " of sort " + sig.sorts[d.result] + " used where " +
               sig.sorts[expected] + " is required";
      if (auto e = check_rule_term_at(sig, mvars, t.args()[0], ambient, d.mainSort)) return e;
      for (size_t i = 0; i < d.aux.size(); ++i)
        if (auto e = check_rule_term_at(sig, mvars, t.args()[i + 1], ambient, d.aux[i]))
          return e;
      return std::nullopt;
    }
    case Term::Kind::Subst: {
      const Term& body = t.args()[0];
      if (body.kind() != Term::Kind::MVar)
        return "substitution body must be a metavariable in rule terms";
      int m = body.head();
      if (m < 0 || m >= static_cast<int>(mvars.size())) return "unknown metavariable id";
      const RuleMVar& mv = mvars[m];
      if (mv.ctx.size() != t.args().size() - 1)
        return "substitution for " + mv.name + " has " +
               std::to_string(t.args().size() - 1) + " replacements for " +
               std::to_string(mv.ctx.size()) + " slots";
      if (!sig.sortLeq(mv.sort, expected))
        return "metavariable " + mv.name + " of sort " + sig.sorts[mv.sort] +
               " used where " + sig.sorts[expected] + " is required";
      for (size_t i = 0; i < mv.ctx.size(); ++i)
        if (auto e = check_rule_term_at(sig, mvars, t.args()[i + 1], ambient, mv.ctx[i]))
          return e;
      return std::nullopt;
    }
  }
  return "unreachable";
}

}  // namespace

std::optional<std::string> check_rule_term(const Signature& sig,
                                           const std::vector<RuleMVar>& mvars,
                                           const Term& t, const Ctx& ambient,
                                           SortId expected) {
  return check_rule_term_at(sig, mvars, t, ambient, expected);
}

namespace {

Term instantiate_at(const Term& t, const std::vector<Term>& env,
                    const std::vector<RuleMVar>& mvars, int ambientLen) {
  switch (t.kind()) {
    case Term::Kind::MVar: {
      int m = t.head();
      if (m < 0 || m >= static_cast<int>(env.size()) || !env[m].valid())
        throw std::invalid_argument("instantiate: unbound metavariable");
      int extra = ambientLen - static_cast<int>(mvars[m].ctx.size());
      if (extra < 0) throw std::invalid_argument("instantiate: context shorter than metavariable's");
      return shift(env[m], extra, 0);
    }
    case Term::Kind::Var:
      return t;
    case Term::Kind::Con: {
      std::vector<Term> args;
      std::vector<int> binders;
      args.reserve(t.args().size());
      for (size_t i = 0; i < t.args().size(); ++i) {
        args.push_back(instantiate_at(t.args()[i], env, mvars, ambientLen + t.binders(i)));
        binders.push_back(t.binders(i));
      }
      return Term::con(t.head(), std::move(args), std::move(binders));
    }
    case Term::Kind::OpCall: {
      Term main = instantiate_at(t.args()[0], env, mvars, ambientLen);
      std::vector<Term> aux;
      for (size_t i = 1; i < t.args().size(); ++i)
        aux.push_back(instantiate_at(t.args()[i], env, mvars, ambientLen));
      return Term::opcall(t.head(), std::move(main), std::move(aux));
    }
    case Term::Kind::Subst: {
      int slots = static_cast<int>(t.args().size()) - 1;
      Term body = instantiate_at(t.args()[0], env, mvars, slots);
      std::vector<Term> reps;
      for (size_t i = 1; i < t.args().size(); ++i)
        reps.push_back(instantiate_at(t.args()[i], env, mvars, ambientLen));
      return Term::subst(std::move(body), std::move(reps));
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

Term instantiate(const Term& t, const std::vector<Term>& env,
                 const std::vector<RuleMVar>& mvars, int ambientLen) {
  return instantiate_at(t, env, mvars, ambientLen);
}

ValidationReport validate_signature_basic(const Signature& sig) {
  ValidationReport rep;
  std::set<std::string> seen;
  for (const std::string& s : sig.sorts)
    if (!seen.insert(s).second) rep.add("sort " + s, "duplicate sort name");
  for (auto [a, b] : sig.subsorts) {
    if (a == b) rep.add("subsort", "reflexive subsort declaration");
    if (sig.sortLeq(a, b) && sig.sortLeq(b, a) && a != b)
      rep.add("subsort", sig.sorts[a] + " and " + sig.sorts[b] +
                             " are mutually related; subsorting must be a partial order");
  }
  std::set<std::string> cnames;
  for (const ConDecl& c : sig.cons) {
    if (!cnames.insert(c.name).second) rep.add("con " + c.name, "duplicate constructor name");
    if (c.result < 0 || c.result >= static_cast<int>(sig.sorts.size()))
      rep.add("con " + c.name, "unknown result sort");
    for (const ConArg& a : c.args) {
      if (a.sort < 0 || a.sort >= static_cast<int>(sig.sorts.size()))
        rep.add("con " + c.name, "unknown argument sort");
      for (SortId b : a.binders)
        if (b < 0 || b >= static_cast<int>(sig.sorts.size()))
          rep.add("con " + c.name, "unknown binder sort");
    }
  }
  std::set<std::string> enames;
  for (const EdgeDecl& e : sig.edges) {
    if (!enames.insert(e.name).second) rep.add("edge " + e.name, "duplicate edge name");
    if (e.src < 0 || e.src >= static_cast<int>(sig.sorts.size()))
      rep.add("edge " + e.name, "unknown source sort");
    if (e.tgt < 0 || e.tgt >= static_cast<int>(sig.sorts.size()))
      rep.add("edge " + e.name, "unknown target sort");
    for (const LabelSlot& l : e.labels)
      if (l.sort < 0 || l.sort >= static_cast<int>(sig.sorts.size()))
        rep.add("edge " + e.name, "unknown label sort");
  }
  return rep;
}

namespace {

void collect_mvars(const Term& t, std::set<int>& out) {
  if (t.kind() == Term::Kind::MVar) {
    out.insert(t.head());
    return;
  }
  for (const Term& a : t.args()) collect_mvars(a, out);
}

}  // namespace

ValidationReport validate_rules(const Signature& sig) {
  ValidationReport rep;
  for (const RuleDecl& r : sig.rules) {
    std::string where = "rule " + r.name;
    auto checkEndpoint = [&](const Term& t, int edge, bool isSrc, const char* what) {
      if (edge < 0 || edge >= static_cast<int>(sig.edges.size())) {
        rep.add(where, std::string("unknown edge in ") + what);
        return;
      }
      SortId want = isSrc ? sig.edges[edge].src : sig.edges[edge].tgt;
      if (auto e = check_rule_term(sig, r.mvars, t, {}, want))
        rep.add(where, std::string(what) + ": " + *e);
    };
    auto checkLabels = [&](const std::vector<Term>& labels, int edge, const char* what) {
      if (edge < 0 || edge >= static_cast<int>(sig.edges.size())) return;
      const EdgeDecl& ed = sig.edges[edge];
      if (labels.size() != ed.labels.size()) {
        rep.add(where, std::string(what) + ": expected " + std::to_string(ed.labels.size()) +
                           " labels for edge " + ed.name + ", got " +
                           std::to_string(labels.size()));
        return;
      }
      for (size_t i = 0; i < labels.size(); ++i)
        if (auto e = check_rule_term(sig, r.mvars, labels[i], ed.labels[i].ctx,
                                     ed.labels[i].sort))
          rep.add(where, std::string(what) + " label " + std::to_string(i + 1) + ": " + *e);
    };

    std::set<int> targetsSeen;
    for (size_t pi = 0; pi < r.premises.size(); ++pi) {
      const RulePremise& p = r.premises[pi];
      std::string pwhere = "premise " + std::to_string(pi + 1);
      checkEndpoint(p.src, p.edge, true, (pwhere + " source").c_str());
      checkLabels(p.labels, p.edge, pwhere.c_str());
      if (p.target < 0) {
        rep.add(where, pwhere + ": target must be a bare metavariable, not a compound term");
        continue;
      }
      if (!targetsSeen.insert(p.target).second)
        rep.add(where, pwhere + ": target metavariable " + r.mvars[p.target].name +
                           " already targets another premise");
      std::set<int> own;
      collect_mvars(p.src, own);
      for (const Term& l : p.labels) collect_mvars(l, own);
      if (own.count(p.target))
        rep.add(where, pwhere + ": target metavariable " + r.mvars[p.target].name +
                           " occurs in the premise's own source or labels");
      if (p.edge >= 0 && p.edge < static_cast<int>(sig.edges.size())) {
        const RuleMVar& mv = r.mvars[p.target];
        if (!sig.sortLeq(sig.edges[p.edge].tgt, mv.sort) || !mv.ctx.empty())
          rep.add(where, pwhere + ": target metavariable sort does not cover the edge target");
      }
    }
    checkEndpoint(r.cSrc, r.cEdge, true, "conclusion source");
    checkLabels(r.cLabels, r.cEdge, "conclusion");
    checkEndpoint(r.cTgt, r.cEdge, false, "conclusion target");
    if (contains_transient(r.cSrc))
      rep.add(where, "conclusion source must be a pure pattern (no operation calls or substitutions)");
    for (const RulePremise& p : r.premises)
      if (contains_transient(p.src))
        rep.add(where, "premise sources must be pure patterns");
  }
  return rep;
}

}  // namespace howebench
