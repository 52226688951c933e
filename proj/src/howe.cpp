#include "howebench/howe.hpp"

#include <algorithm>
#include <functional>

#include "howebench/enumerate.hpp"
#include "howebench/printer.hpp"

namespace howebench {

Relation compose_relations(const Relation& r, const Relation& s) {
  std::map<std::pair<Ctx, Term>, std::vector<Term>> byFirst;
  for (const auto& [ctx, b, c] : s.items()) byFirst[{ctx, b}].push_back(c);
  Relation out;
  for (const auto& [ctx, a, b] : r.items()) {
    auto it = byFirst.find({ctx, b});
    if (it == byFirst.end()) continue;
    for (const Term& c : it->second) out.insert(ctx, a, c);
  }
  return out;
}

Relation transitive_closure(const Relation& r) {
  // Per binding context: index the terms, then breadth-first reach.
  std::map<Ctx, std::map<Term, int>> ids;
  std::map<Ctx, std::vector<Term>> names;
  for (const auto& [ctx, a, b] : r.items())
    for (const Term* t : {&a, &b})
      if (ids[ctx].emplace(*t, static_cast<int>(ids[ctx].size())).second)
        names[ctx].push_back(*t);
  Relation out;
  for (const auto& [ctx, id] : ids) {
    int n = static_cast<int>(id.size());
    std::vector<std::vector<int>> adj(n);
    for (const auto& [c2, a, b] : r.items())
      if (c2 == ctx) adj[id.at(a)].push_back(id.at(b));
    for (int i = 0; i < n; ++i) {
      std::vector<char> seen(n, 0);
      std::vector<int> work = adj[i];
      for (int k : work) seen[k] = 1;
      while (!work.empty()) {
        int k = work.back();
        work.pop_back();
        out.insert(ctx, names[ctx][i], names[ctx][k]);
        for (int m : adj[k])
          if (!seen[m]) {
            seen[m] = 1;
            work.push_back(m);
          }
      }
    }
  }
  return out;
}

HoweUniverse build_howe_universe(const Signature& sig, int maxTermSize) {
  HoweUniverse uni;
  TermEnumerator enu(sig);

  // Entering a binder position always spends at least the constructor node,
  // so a context reached in d steps only ever holds subterms of size
  // maxTermSize - d. Budgets relax to the maximum over entry paths.
  std::map<Ctx, int> budget;
  budget[{}] = maxTermSize;
  std::vector<Ctx> work{{}};
  while (!work.empty()) {
    Ctx cur = work.back();
    work.pop_back();
    int b = budget[cur];
    if (b < 2) continue;  // no room for a constructor plus an argument
    for (const ConDecl& con : sig.cons)
      for (const ConArg& arg : con.args) {
        if (arg.binders.empty()) continue;
        Ctx ext = cur;
        ext.insert(ext.end(), arg.binders.begin(), arg.binders.end());
        auto [it, fresh] = budget.emplace(ext, b - 1);
        if (!fresh && it->second >= b - 1) continue;
        it->second = b - 1;
        work.push_back(ext);
      }
  }

  for (const auto& [ctx, bud] : budget) {
    std::set<Term> seen;
    std::vector<Term> acc;
    for (SortId s = 0; s < static_cast<SortId>(sig.sorts.size()); ++s)
      for (const Term& t : enu.upTo(s, ctx, bud))
        if (seen.insert(t).second) acc.push_back(t);
    std::sort(acc.begin(), acc.end());
    uni.strata[ctx] = std::move(acc);
    uni.index[ctx] = std::move(seen);
  }
  return uni;
}

namespace {

struct ArgInfo {
  Term t;
  Ctx ext;
};
struct ConEntry {
  Term t;
  std::vector<ArgInfo> args;
};
using Groups = std::map<int, std::vector<ConEntry>>;

std::map<Ctx, Groups> build_decomp(const Signature& sig, const HoweUniverse& uni) {
  std::map<Ctx, Groups> out;
  for (const auto& [ctx, terms] : uni.strata) {
    Groups& g = out[ctx];
    for (const Term& t : terms) {
      if (t.kind() != Term::Kind::Con) continue;
      const ConDecl& con = sig.cons[t.head()];
      ConEntry e{t, {}};
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        Ctx ext = ctx;
        const Ctx& b = con.args[i].binders;
        ext.insert(ext.end(), b.begin(), b.end());
        e.args.push_back({t.args()[i], std::move(ext)});
      }
      g[t.head()].push_back(std::move(e));
    }
  }
  return out;
}

// Similarity successors within the closed stratum, for the absorption rule.
std::map<Term, std::vector<Term>> sim_successors(const HoweUniverse& uni,
                                                 const BisimRelation& sim) {
  std::map<Term, std::vector<Term>> out;
  auto it = uni.strata.find(Ctx{});
  if (it == uni.strata.end()) return out;
  for (const Term& b : it->second) {
    if (!sim.inUniverse(b)) continue;
    std::vector<Term> succ;
    for (const Term& c : it->second)
      if (sim.inUniverse(c) && sim.related(b, c)) succ.push_back(c);
    if (!succ.empty()) out[b] = std::move(succ);
  }
  return out;
}

}  // namespace

HoweClosure howe_closure(const Signature& sig, const HoweUniverse& uni,
                         const Relation& base, const BisimRelation* sim, int maxIter) {
  HoweClosure out;
  out.base = base;
  Relation H = base;

  for (const auto& [ctx, terms] : uni.strata)
    for (const Term& t : terms)
      if (t.kind() == Term::Kind::Var) H.insert(ctx, t, t);

  auto decomp = build_decomp(sig, uni);
  std::map<Term, std::vector<Term>> simSucc;
  if (sim) simSucc = sim_successors(uni, *sim);

  int iter = 0;
  bool changed = true;
  while (changed && iter < maxIter) {
    ++iter;
    changed = false;
    for (const auto& [ctx, groups] : decomp)
      for (const auto& [con, entries] : groups) {
        (void)con;
        for (const ConEntry& x : entries)
          for (const ConEntry& y : entries) {
            if (H.contains(ctx, x.t, y.t)) continue;
            bool all = true;
            for (std::size_t i = 0; i < x.args.size() && all; ++i)
              all = H.contains(x.args[i].ext, x.args[i].t, y.args[i].t);
            if (all) {
              H.insert(ctx, x.t, y.t);
              changed = true;
            }
          }
      }
    if (sim) {
      std::vector<std::pair<Term, Term>> closed;
      for (const auto& [ctx, a, b] : H.items())
        if (ctx.empty()) closed.push_back({a, b});
      for (const auto& [a, b] : closed) {
        auto it = simSucc.find(b);
        if (it == simSucc.end()) continue;
        for (const Term& c : it->second)
          if (!H.contains({}, a, c)) {
            H.insert({}, a, c);
            changed = true;
          }
      }
    }
  }
  out.iterations = iter;
  out.converged = !changed;
  out.closure = std::move(H);
  return out;
}

HoweReport check_howe_properties(const Signature& sig, const HoweUniverse& uni,
                                 const HoweClosure& hc, const TransitionStore& store,
                                 const BisimRelation& sim, const BisimRelation& unrefuted,
                                 const LabelUniverse& labels) {
  HoweReport rep;
  const Relation& H = hc.closure;

  // Closure membership extended beyond the strata.  Inside a stratum the
  // converged closure is authoritative.  Outside, closed store pairs fall
  // back to the certified similarity, and anything else decomposes into
  // closure-related arguments under the same constructor -- exactly the
  // pairs the compatibility pass would add over a larger universe.
  std::function<bool(const Ctx&, const Term&, const Term&)> heffAt =
      [&](const Ctx& ctx, const Term& x, const Term& y) -> bool {
    if (x == y) return true;
    if (uni.contains(ctx, x) && uni.contains(ctx, y)) return H.contains(ctx, x, y);
    if (ctx.empty() && sim.inUniverse(x) && sim.inUniverse(y) && sim.related(x, y))
      return true;
    if (x.kind() == Term::Kind::Con && y.kind() == Term::Kind::Con && x.head() == y.head()) {
      const ConDecl& con = sig.cons[x.head()];
      for (std::size_t i = 0; i < con.args.size(); ++i) {
        Ctx ext = ctx;
        ext.insert(ext.end(), con.args[i].binders.begin(), con.args[i].binders.end());
        if (!heffAt(ext, x.args()[i], y.args()[i])) return false;
      }
      return true;
    }
    return false;
  };
  auto heff = [&](const Term& x, const Term& y) { return heffAt({}, x, y); };

  {
    HoweCheck c;
    c.name = "constructor-compatibility";
    auto decomp = build_decomp(sig, uni);
    for (const auto& [ctx, groups] : decomp)
      for (const auto& [con, entries] : groups)
        for (const ConEntry& x : entries)
          for (const ConEntry& y : entries) {
            bool all = true;
            for (std::size_t i = 0; i < x.args.size() && all; ++i)
              all = H.contains(x.args[i].ext, x.args[i].t, y.args[i].t);
            if (!all) continue;
            c.checked++;
            if (!H.contains(ctx, x.t, y.t))
              c.violations.push_back("constructor " + sig.cons[con].name +
                                     " not compatible: " + print_term(sig, x.t) +
                                     "  vs  " + print_term(sig, y.t));
          }
    rep.checks.push_back(std::move(c));
  }

  {
    HoweCheck c;
    c.name = "reflexivity";
    for (const auto& [ctx, terms] : uni.strata)
      for (const Term& t : terms) {
        c.checked++;
        if (!H.contains(ctx, t, t))
          c.violations.push_back("missing reflexive pair for " + print_term(sig, t));
      }
    rep.checks.push_back(std::move(c));
  }

  {
    HoweCheck c;
    c.name = "similarity-absorption";
    auto it = uni.strata.find(Ctx{});
    const std::vector<Term> empty;
    const std::vector<Term>& closedTerms = it == uni.strata.end() ? empty : it->second;
    for (const auto& [ctx, a, b] : H.items()) {
      if (!ctx.empty()) continue;
      if (!sim.inUniverse(b)) {
        c.skipped++;
        continue;
      }
      for (const Term& t : closedTerms) {
        if (!sim.inUniverse(t) || !sim.related(b, t)) continue;
        c.checked++;
        if (!H.contains({}, a, t))
          c.violations.push_back("absorption fails: " + print_term(sig, a) + "  H  " +
                                 print_term(sig, b) + "  sim  " + print_term(sig, t));
      }
    }
    rep.checks.push_back(std::move(c));
  }

  {
    HoweCheck c;
    c.name = "contains-similarity";
    auto it = uni.strata.find(Ctx{});
    if (it != uni.strata.end())
      for (const Term& b : it->second)
        for (const Term& t : it->second) {
          if (!sim.inUniverse(b) || !sim.inUniverse(t)) {
            c.skipped++;
            continue;
          }
          if (!sim.related(b, t)) continue;
          c.checked++;
          if (!H.contains({}, b, t))
            c.violations.push_back("similar pair missing from the closure: " +
                                   print_term(sig, b) + "  vs  " + print_term(sig, t));
        }
    rep.checks.push_back(std::move(c));
  }

  {
    HoweCheck c;
    c.name = "symmetric-transitive-closure";
    Relation tc = transitive_closure(H);
    for (const auto& [ctx, a, b] : tc.items()) {
      c.checked++;
      if (!tc.contains(ctx, b, a))
        c.violations.push_back("transitive closure not symmetric at: " +
                               print_term(sig, a) + "  vs  " + print_term(sig, b));
    }
    rep.checks.push_back(std::move(c));
  }

  {
    HoweCheck c;
    c.name = "flexible-simulation";
    for (const auto& [ctx, a, b] : H.items()) {
      if (!ctx.empty()) continue;
      if (!store.inUniverse(a) || !store.inUniverse(b)) {
        c.skipped++;
        continue;
      }
      for (int e = 0; e < store.edgeCount(); ++e) {
        const auto* ra = store.row(a, e);
        if (!ra || ra->byLabel.empty()) continue;
        const auto& slots = sig.edges[e].labels;
        for (const auto& [labs, tgts] : ra->byLabel) {
          if (!store.exhausted(b, e)) {
            c.skipped++;
            continue;
          }
          // Label tuples componentwise closure-related to the challenge.
          std::vector<std::vector<Term>> cand(slots.size());
          bool feasible = true;
          for (std::size_t i = 0; i < slots.size(); ++i) {
            auto lt = labels.terms.find(slots[i].sort);
            if (lt != labels.terms.end())
              for (const Term& l2 : lt->second)
                if (heff(labs[i], l2)) cand[i].push_back(l2);
            if (cand[i].empty()) feasible = false;
          }
          if (!feasible) {
            c.skipped++;
            continue;
          }
          std::vector<std::size_t> ix(slots.size(), 0);
          while (true) {
            std::vector<Term> labs2;
            labs2.reserve(slots.size());
            for (std::size_t i = 0; i < slots.size(); ++i) labs2.push_back(cand[i][ix[i]]);
            const auto* resp = store.targets(b, e, labs2);
            for (const Term& a1 : tgts) {
              bool matched = false;
              bool unknown = false;
              if (resp)
                for (const Term& b1 : *resp) {
                  if (heff(a1, b1)) {
                    matched = true;
                    break;
                  }
                  // Not certified related -- but only a refuted pair makes
                  // the miss count.  A pair the bounded refinement kept may
                  // relate under a larger universe.
                  if (unrefuted.inUniverse(a1) && unrefuted.inUniverse(b1) &&
                      unrefuted.related(a1, b1))
                    unknown = true;
                }
              if (matched) {
                c.checked++;
              } else if (unknown) {
                c.skipped++;
              } else {
                std::string flex;
                for (const Term& l2 : labs2) flex += (flex.empty() ? "" : ", ") + print_term(sig, l2);
                c.violations.push_back(
                    print_transition(sig, a, e, labs, a1) + " has no closure-related answer from " +
                    print_term(sig, b) + " at label [" + flex + "]");
              }
            }
            // advance the odometer
            std::size_t k = 0;
            for (; k < ix.size(); ++k) {
              if (++ix[k] < cand[k].size()) break;
              ix[k] = 0;
            }
            if (k == ix.size()) break;
          }
        }
      }
    }
    rep.checks.push_back(std::move(c));
  }

  for (const HoweCheck& c : rep.checks)
    if (!c.ok()) rep.pass = false;
  return rep;
}

}  // namespace howebench
