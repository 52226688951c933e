#include "howebench/engine.hpp"

#include <algorithm>
#include <optional>
#include <tuple>
#include <utility>

#include "howebench/enumerate.hpp"
#include "howebench/format.hpp"
#include "howebench/ops.hpp"

namespace howebench {

namespace {

struct Plan {
  const RuleDecl* rule;
  std::vector<int> order;      // premise firing order
  std::vector<int> enumMvars;  // conclusion-label metavariables enumerated upfront
};

// Matching binds a pattern metavariable to the subterm at its own declared
// context, so every occurrence must sit exactly at that context.
void checkPatternAmbient(const Signature& sig, const RuleDecl& rule, const Term& t,
                         const Ctx& ambient) {
  switch (t.kind()) {
    case Term::Kind::MVar: {
      const RuleMVar& mv = rule.mvars[t.head()];
      if (mv.ctx != ambient)
        throw EngineError("rule '" + rule.name + "': pattern metavariable '" + mv.name +
                          "' occurs under binders it was not declared with");
      return;
    }
    case Term::Kind::Var:
      return;
    case Term::Kind::Con: {
      const ConDecl& cd = sig.cons[t.head()];
      for (size_t i = 0; i < t.args().size(); ++i) {
        Ctx inner = ambient;
        inner.insert(inner.end(), cd.args[i].binders.begin(), cd.args[i].binders.end());
        checkPatternAmbient(sig, rule, t.args()[i], inner);
      }
      return;
    }
    default:
      throw EngineError("rule '" + rule.name + "': conclusion source is not a pattern");
  }
}

std::vector<Plan> makePlans(const Signature& sig) {
  std::vector<Plan> plans;
  for (const RuleDecl& rule : sig.rules) {
    Plan p{&rule, {}, {}};
    auto order = schedule_premises(rule);
    if (!order)
      throw EngineError("rule '" + rule.name +
                        "': premises cannot be scheduled; run the format check for details");
    p.order = *order;
    checkPatternAmbient(sig, rule, rule.cSrc, {});

    std::set<int> have;
    collect_mvars(rule.cSrc, have);
    std::set<int> inLabels;
    for (const Term& l : rule.cLabels) collect_mvars(l, inLabels);
    for (int m : inLabels) {
      if (have.count(m)) continue;
      const RuleMVar& mv = rule.mvars[m];
      if (!mv.ctx.empty())
        throw EngineError("rule '" + rule.name + "': label metavariable '" + mv.name +
                          "' has a binding context and cannot be enumerated");
      p.enumMvars.push_back(m);
      have.insert(m);
    }
    for (const RulePremise& pr : rule.premises) {
      if (pr.target < 0) continue;
      if (!rule.mvars[pr.target].ctx.empty())
        throw EngineError("rule '" + rule.name + "': premise target '" +
                          rule.mvars[pr.target].name + "' has a binding context");
      have.insert(pr.target);
    }
    std::set<int> tgt;
    collect_mvars(rule.cTgt, tgt);
    for (int m : tgt)
      if (!have.count(m))
        throw EngineError("rule '" + rule.name + "': conclusion target uses metavariable '" +
                          rule.mvars[m].name + "' that no premise determines");
    plans.push_back(std::move(p));
  }
  return plans;
}

bool matchPattern(const Signature& sig, const std::vector<RuleMVar>& mvars, const Term& pat,
                  const Term& t, std::vector<std::optional<Term>>& env) {
  switch (pat.kind()) {
    case Term::Kind::MVar: {
      const RuleMVar& mv = mvars[pat.head()];
      auto& slot = env[pat.head()];
      if (slot) return *slot == t;
      SortResult r = least_sort(sig, mv.ctx, t);
      if (!r.ok() || !sig.sortLeq(*r.sort, mv.sort)) return false;
      slot = t;
      return true;
    }
    case Term::Kind::Var:
      return t.kind() == Term::Kind::Var && t.head() == pat.head();
    case Term::Kind::Con: {
      if (t.kind() != Term::Kind::Con || t.head() != pat.head()) return false;
      for (size_t i = 0; i < pat.args().size(); ++i)
        if (!matchPattern(sig, mvars, pat.args()[i], t.args()[i], env)) return false;
      return true;
    }
    default:
      return false;
  }
}

}  // namespace

struct EngineDeriver {
  const Signature& sig;
  const LabelUniverse& labels;
  const EngineConfig& cfg;
  TransitionStore& st;
  int sizeCap = 0;
  std::map<std::pair<int, int>, std::set<std::pair<int, int>>> deps;
  std::set<std::tuple<int, int, Term>> pendingOutside;
  bool dirty = false;

  int addTerm(const Term& t) {
    auto it = st.idx_.find(t);
    if (it != st.idx_.end()) return it->second;
    if (static_cast<int>(st.universe_.size()) >= cfg.maxUniverse) {
      st.overflow_ = true;
      return -1;
    }
    int id = static_cast<int>(st.universe_.size());
    st.universe_.push_back(t);
    st.idx_.emplace(t, id);
    st.rows_.emplace_back(st.edgeCount_);
    dirty = true;
    return id;
  }

  Term normalized(const RuleDecl& rule, const Term& t) {
    try {
      return normalize(sig, t);
    } catch (const EvalError& e) {
      throw EngineError("rule '" + rule.name + "': " + e.what());
    }
  }

  Term plugged(const RuleDecl& rule, const std::vector<std::optional<Term>>& env,
               const Term& t) {
    std::set<int> need;
    collect_mvars(t, need);
    std::vector<Term> flat(rule.mvars.size());
    for (int m : need) flat[m] = *env[m];
    return instantiate(t, flat, rule.mvars, 0);
  }

  void conclude(const Plan& plan, int ti, std::vector<std::optional<Term>>& env) {
    const RuleDecl& rule = *plan.rule;
    const EdgeDecl& ed = sig.edges[rule.cEdge];
    std::vector<Term> lv;
    for (size_t i = 0; i < rule.cLabels.size(); ++i) {
      Term l = normalized(rule, plugged(rule, env, rule.cLabels[i]));
      if (!labels.contains(ed.labels[i].sort, l)) {
        st.rows_[ti][rule.cEdge].truncated = true;  // label beyond the label universe
        return;
      }
      lv.push_back(std::move(l));
    }
    Term target = normalized(rule, plugged(rule, env, rule.cTgt));
    if (target.size() > sizeCap) {
      st.rows_[ti][rule.cEdge].truncated = true;
      return;
    }
    std::vector<Term> subs;
    closed_subterms(target, subs);
    bool fit = true;
    for (const Term& s : subs)
      if (addTerm(s) < 0) fit = false;
    if (!fit) {
      st.rows_[ti][rule.cEdge].truncated = true;
      return;
    }
    if (st.rows_[ti][rule.cEdge].byLabel[lv].insert(target).second) dirty = true;
  }

  void firePremises(const Plan& plan, int ti, size_t k, std::vector<std::optional<Term>>& env) {
    const RuleDecl& rule = *plan.rule;
    if (k == plan.order.size()) {
      conclude(plan, ti, env);
      return;
    }
    const RulePremise& pr = rule.premises[plan.order[k]];
    Term src = normalized(rule, plugged(rule, env, pr.src));
    int si = st.indexOf(src);
    if (si < 0) {
      // Consulted a term outside the universe; if it never joins, the
      // conclusion row is incomplete.
      pendingOutside.insert({ti, rule.cEdge, src});
      return;
    }
    deps[{si, pr.edge}].insert({ti, rule.cEdge});
    const EdgeDecl& ed = sig.edges[pr.edge];
    std::vector<Term> lv;
    for (size_t i = 0; i < pr.labels.size(); ++i) {
      Term l = normalized(rule, plugged(rule, env, pr.labels[i]));
      if (!labels.contains(ed.labels[i].sort, l))
        st.rows_[ti][rule.cEdge].truncated = true;  // queried beyond the label universe
      lv.push_back(std::move(l));
    }
    std::set<Term> tgts;
    {
      auto it = st.rows_[si][pr.edge].byLabel.find(lv);
      if (it != st.rows_[si][pr.edge].byLabel.end()) tgts = it->second;  // copy: rows_ may grow
    }
    const RuleMVar& mv = rule.mvars[pr.target];
    for (const Term& tgt : tgts) {
      SortResult r = least_sort(sig, {}, tgt);
      if (!r.ok() || !sig.sortLeq(*r.sort, mv.sort)) continue;
      env[pr.target] = tgt;
      firePremises(plan, ti, k + 1, env);
      env[pr.target].reset();
    }
  }

  void fireEnum(const Plan& plan, int ti, size_t k, std::vector<std::optional<Term>>& env) {
    if (k == plan.enumMvars.size()) {
      firePremises(plan, ti, 0, env);
      return;
    }
    int m = plan.enumMvars[k];
    auto it = labels.terms.find(plan.rule->mvars[m].sort);
    if (it == labels.terms.end()) return;
    for (const Term& cand : it->second) {
      env[m] = cand;
      fireEnum(plan, ti, k + 1, env);
      env[m].reset();
    }
  }

  void fire(const Plan& plan, int ti) {
    Term src = st.universe_[ti];  // copy the handle: the vector may reallocate
    std::vector<std::optional<Term>> env(plan.rule->mvars.size());
    if (!matchPattern(sig, plan.rule->mvars, plan.rule->cSrc, src, env)) return;
    fireEnum(plan, ti, 0, env);
  }
};

LabelUniverse build_label_universe(const Signature& sig, int labelSize) {
  LabelUniverse u;
  TermEnumerator en(sig);
  for (SortId s = 0; s < static_cast<SortId>(sig.sorts.size()); ++s) {
    std::vector<Term> ts = en.upTo(s, {}, labelSize);
    u.index[s] = std::set<Term>(ts.begin(), ts.end());
    u.terms[s] = std::move(ts);
  }
  return u;
}

const TransitionStore::Row* TransitionStore::row(const Term& src, int edge) const {
  int i = indexOf(src);
  if (i < 0 || edge < 0 || edge >= edgeCount_) return nullptr;
  return &rows_[i][edge];
}

const std::set<Term>* TransitionStore::targets(const Term& src, int edge,
                                               const std::vector<Term>& labels) const {
  const Row* r = row(src, edge);
  if (!r) return nullptr;
  auto it = r->byLabel.find(labels);
  return it == r->byLabel.end() ? nullptr : &it->second;
}

std::vector<LabeledTransition> TransitionStore::transitionsOf(const Term& src) const {
  std::vector<LabeledTransition> out;
  int i = indexOf(src);
  if (i < 0) return out;
  for (int e = 0; e < edgeCount_; ++e)
    for (const auto& [lv, tgts] : rows_[i][e].byLabel)
      for (const Term& t : tgts) out.push_back({e, lv, t});
  return out;
}

bool TransitionStore::exhausted(const Term& src, int edge) const {
  if (!saturated_ || overflow_) return false;
  const Row* r = row(src, edge);
  return r != nullptr && !r->truncated;
}

bool TransitionStore::exhaustedAllEdges(const Term& src) const {
  if (!saturated_ || overflow_) return false;
  int i = indexOf(src);
  if (i < 0) return false;
  for (int e = 0; e < edgeCount_; ++e)
    if (rows_[i][e].truncated) return false;
  return true;
}

size_t TransitionStore::transitionCount() const {
  size_t n = 0;
  for (const auto& row : rows_)
    for (const auto& cell : row)
      for (const auto& [lv, tgts] : cell.byLabel) n += tgts.size();
  return n;
}

TransitionStore derive_transitions(const Signature& sig, const std::vector<Term>& seeds,
                                   const LabelUniverse& labels, const EngineConfig& cfg) {
  TransitionStore st;
  st.edgeCount_ = static_cast<int>(sig.edges.size());
  EngineDeriver d{sig, labels, cfg, st, 0, {}, {}, false};

  int maxSeed = 1;
  std::vector<Term> norm;
  for (const Term& s : seeds) {
    if (!s.valid()) throw EngineError("invalid seed term");
    if (contains_mvar(s)) throw EngineError("seed term contains a metavariable");
    Term n;
    try {
      n = normalize(sig, s);
    } catch (const EvalError& e) {
      throw EngineError(std::string("seed: ") + e.what());
    }
    if (max_free_index(n) >= 0) throw EngineError("seed term is not closed");
    maxSeed = std::max(maxSeed, n.size());
    norm.push_back(std::move(n));
  }
  d.sizeCap = cfg.sizeCapFactor * maxSeed;
  for (const Term& n : norm) {
    std::vector<Term> subs;
    closed_subterms(n, subs);
    for (const Term& s : subs) d.addTerm(s);
  }

  std::vector<Plan> plans = makePlans(sig);

  for (int round = 1; round <= cfg.fuel; ++round) {
    st.rounds_ = round;
    d.dirty = false;
    for (const Plan& plan : plans)
      for (size_t ti = 0; ti < st.universe_.size(); ++ti) d.fire(plan, static_cast<int>(ti));
    if (!d.dirty) {
      st.saturated_ = true;
      break;
    }
  }

  // A consulted source that never joined the universe leaves its dependents
  // incomplete. (If it did join, the final pass re-consulted it and the
  // dependency edge below carries any incompleteness.)
  for (const auto& [ti, edge, src] : d.pendingOutside)
    if (!st.inUniverse(src)) st.rows_[ti][edge].truncated = true;

  // Close incompleteness over the recorded query dependencies.
  std::vector<std::pair<int, int>> work;
  for (int i = 0; i < static_cast<int>(st.rows_.size()); ++i)
    for (int e = 0; e < st.edgeCount_; ++e)
      if (st.rows_[i][e].truncated) work.push_back({i, e});
  while (!work.empty()) {
    auto [i, e] = work.back();
    work.pop_back();
    auto it = d.deps.find({i, e});
    if (it == d.deps.end()) continue;
    for (const auto& [ti, te] : it->second) {
      if (!st.rows_[ti][te].truncated) {
        st.rows_[ti][te].truncated = true;
        work.push_back({ti, te});
      }
    }
  }
  return st;
}

}  // namespace howebench
