#include "howebench/bisim.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "howebench/enumerate.hpp"
#include "howebench/ops.hpp"
#include "howebench/printer.hpp"

namespace howebench {

namespace {

SortId least_of(const Signature& sig, const Term& t) {
  auto r = least_sort(sig, {}, t);
  if (!r.ok()) throw EngineError("universe term has no sort: " + r.error);
  return *r.sort;
}

}  // namespace

bool BisimRelation::related(const Term& a, const Term& b) const {
  auto ia = idx_.find(a);
  auto ib = idx_.find(b);
  if (ia == idx_.end() || ib == idx_.end()) return false;
  return at(ia->second, ib->second) == 0;
}

std::vector<Term> BisimRelation::relatedTo(const Term& a) const {
  std::vector<Term> out;
  auto ia = idx_.find(a);
  if (ia == idx_.end()) return out;
  for (int j = 0; j < n_; ++j)
    if (at(ia->second, j) == 0) out.push_back(universe_[j]);
  return out;
}

std::size_t BisimRelation::pairCount() const {
  std::size_t c = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (i != j && at(i, j) == 0) ++c;
  return c;
}

int BisimRelation::removalRound(const Term& a, const Term& b) const {
  auto ia = idx_.find(a);
  auto ib = idx_.find(b);
  if (ia == idx_.end() || ib == idx_.end()) return -1;
  return at(ia->second, ib->second);
}

BisimRelation BisimRelation::fromPairs(const TransitionStore& store,
                                       const std::vector<std::pair<Term, Term>>& pairs,
                                       bool addIdentity) {
  BisimRelation rel;
  rel.universe_ = store.universe();
  rel.n_ = static_cast<int>(rel.universe_.size());
  for (int i = 0; i < rel.n_; ++i) rel.idx_[rel.universe_[i]] = i;
  rel.mat_.assign(static_cast<std::size_t>(rel.n_) * rel.n_, -1);
  if (addIdentity)
    for (int i = 0; i < rel.n_; ++i) rel.set(i, i, 0);
  for (const auto& [a, b] : pairs) {
    auto ia = rel.idx_.find(a);
    auto ib = rel.idx_.find(b);
    if (ia == rel.idx_.end() || ib == rel.idx_.end()) continue;
    rel.set(ia->second, ib->second, 0);
    rel.set(ib->second, ia->second, 0);
  }
  return rel;
}

// Greatest-fixpoint refinement over the store universe, on interned rows so
// the inner loop touches only integers.
struct BisimComputer {
  const Signature& sig;
  const TransitionStore& store;
  BisimRelation rel;
  int rounds = 0;

  int n = 0;
  int edges = 0;

  struct Cell {
    int labelId;
    std::vector<int> targets;
  };
  std::vector<std::vector<std::vector<Cell>>> cells;  // [term][edge], sorted by labelId
  std::vector<std::vector<char>> exh;                 // [term][edge]

  BisimComputer(const Signature& s, const TransitionStore& st) : sig(s), store(st) {}

  void init() {
    n = static_cast<int>(store.universe().size());
    edges = store.edgeCount();
    rel.universe_ = store.universe();
    rel.n_ = n;
    for (int i = 0; i < n; ++i) rel.idx_[rel.universe_[i]] = i;
    rel.mat_.assign(static_cast<std::size_t>(n) * n, 0);

    std::vector<SortId> leastOf(n);
    for (int i = 0; i < n; ++i) leastOf[i] = least_of(sig, rel.universe_[i]);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (!sig.sortJoin(leastOf[i], leastOf[j]).has_value()) {
          rel.set(i, j, -1);
          rel.set(j, i, -1);
        }

    std::map<std::vector<Term>, int> labelIds;
    cells.assign(n, {});
    exh.assign(n, std::vector<char>(edges, 0));
    for (int i = 0; i < n; ++i) {
      cells[i].resize(edges);
      for (int e = 0; e < edges; ++e) {
        exh[i][e] = store.exhausted(rel.universe_[i], e) ? 1 : 0;
        const auto& row = store.rowAt(i, e);
        for (const auto& [labs, tgts] : row.byLabel) {
          auto [it, fresh] = labelIds.try_emplace(labs, static_cast<int>(labelIds.size()));
          (void)fresh;
          Cell c{it->second, {}};
          c.targets.reserve(tgts.size());
          for (const Term& t : tgts) c.targets.push_back(store.indexOf(t));
          cells[i][e].push_back(std::move(c));
        }
        std::sort(cells[i][e].begin(), cells[i][e].end(),
                  [](const Cell& a, const Cell& b) { return a.labelId < b.labelId; });
      }
    }
  }

  // Membership in the relation of the previous round while computing
  // curRound: pairs removed in curRound itself still count.
  bool relatedDuring(int curRound, int i, int j) const {
    int v = rel.at(i, j);
    return v == 0 || v >= curRound;
  }

  // True when x has a stored challenge that y fails against the previous
  // round's relation. Rows of y that are not exhausted never fail: a missing
  // response there may simply lie beyond the derivation bounds.
  bool fails(int curRound, int x, int y) const {
    for (int e = 0; e < edges; ++e) {
      const auto& cx = cells[x][e];
      if (cx.empty()) continue;
      const auto& cy = cells[y][e];
      const bool yExh = exh[y][e] != 0;
      std::size_t jy = 0;
      for (const auto& cell : cx) {
        while (jy < cy.size() && cy[jy].labelId < cell.labelId) ++jy;
        const std::vector<int>* resp =
            (jy < cy.size() && cy[jy].labelId == cell.labelId) ? &cy[jy].targets : nullptr;
        for (int a1 : cell.targets) {
          bool matched = false;
          if (resp)
            for (int b1 : *resp)
              if (relatedDuring(curRound, a1, b1)) {
                matched = true;
                break;
              }
          if (!matched && yExh) return true;
        }
      }
    }
    return false;
  }

  void run() {
    init();
    for (int r = 1;; ++r) {
      bool removed = false;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          if (rel.at(i, j) != 0) continue;
          if (fails(r, i, j) || fails(r, j, i)) {
            rel.set(i, j, r);
            rel.set(j, i, r);
            removed = true;
          }
        }
      if (!removed) break;
      rounds = r;
    }
  }
};

BisimVerdict verdict_for(const Signature& sig, const TransitionStore& store,
                         const BisimRelation& rel, const Term& a, const Term& b) {
  (void)sig;
  BisimVerdict v;
  const int i0 = rel.idx_.at(a);
  const int j0 = rel.idx_.at(b);

  // Truncation scan over everything reachable from the pair.
  {
    std::set<int> seen{i0, j0};
    std::vector<int> work{i0, j0};
    while (!work.empty()) {
      int k = work.back();
      work.pop_back();
      const Term& t = rel.universe_[k];
      if (!store.exhaustedAllEdges(t)) v.truncationSeen = true;
      for (const auto& tr : store.transitionsOf(t)) {
        int ti = store.indexOf(tr.target);
        if (ti >= 0 && seen.insert(ti).second) work.push_back(ti);
      }
    }
  }

  int r0 = rel.at(i0, j0);
  if (r0 == 0) return v;
  v.distinguished = true;
  if (r0 < 0) return v;  // incomparable sorts: no play to extract
  v.round = r0;

  struct Failure {
    int edge = -1;
    const std::vector<Term>* labels = nullptr;
    Term challengerTgt;
    const std::set<Term>* responses = nullptr;
  };

  // First stored challenge of x that y fails against the relation of round
  // r - 1 (same predicate the refinement used, so one must exist).
  auto failingChallenge = [&](int x, int y, int r, Failure* out) -> bool {
    const Term& tx = rel.universe_[x];
    const Term& ty = rel.universe_[y];
    for (int e = 0; e < store.edgeCount(); ++e) {
      const auto* rx = store.row(tx, e);
      if (!rx) continue;
      const auto* ry = store.row(ty, e);
      const bool yExh = store.exhausted(ty, e);
      for (const auto& [labs, tgts] : rx->byLabel) {
        const std::set<Term>* resp = nullptr;
        if (ry) {
          auto it = ry->byLabel.find(labs);
          if (it != ry->byLabel.end()) resp = &it->second;
        }
        for (const Term& a1 : tgts) {
          bool matched = false;
          if (resp)
            for (const Term& b1 : *resp) {
              int vv = rel.at(rel.idx_.at(a1), rel.idx_.at(b1));
              if (vv == 0 || vv >= r) {
                matched = true;
                break;
              }
            }
          if (!matched && yExh) {
            out->edge = e;
            out->labels = &labs;
            out->challengerTgt = a1;
            out->responses = resp;
            return true;
          }
        }
      }
    }
    return false;
  };

  int i = i0, j = j0;
  while (true) {
    int r = rel.at(i, j);
    if (r <= 0) break;
    Failure f;
    bool leftCh = failingChallenge(i, j, r, &f);
    if (!leftCh && !failingChallenge(j, i, r, &f)) break;
    TraceStep step;
    step.challengerIsLeft = leftCh;
    step.challengerSrc = rel.universe_[leftCh ? i : j];
    step.responderSrc = rel.universe_[leftCh ? j : i];
    step.edge = f.edge;
    step.labels = *f.labels;
    step.challengerTgt = f.challengerTgt;
    if (f.responses) step.responderTgts.assign(f.responses->begin(), f.responses->end());
    v.trace.push_back(std::move(step));
    if (!f.responses || f.responses->empty()) break;
    // Follow the response that fell earliest; its own removal round is
    // strictly smaller, so the play always terminates.
    int ia1 = rel.idx_.at(f.challengerTgt);
    int bestIdx = -1;
    int bestRound = std::numeric_limits<int>::max();
    for (const Term& b1 : *f.responses) {
      int ib1 = rel.idx_.at(b1);
      int rr = rel.at(ia1, ib1);
      if (rr <= 0) continue;
      if (rr < bestRound) {
        bestRound = rr;
        bestIdx = ib1;
      }
    }
    if (bestIdx < 0) break;
    i = ia1;
    j = bestIdx;
  }
  return v;
}

std::set<Term> fully_explored_terms(const TransitionStore& store) {
  std::set<Term> out;
  for (const Term& u : store.universe()) {
    std::set<Term> seen{u};
    std::vector<Term> work{u};
    bool ok = true;
    while (!work.empty() && ok) {
      Term t = work.back();
      work.pop_back();
      if (!store.exhaustedAllEdges(t)) ok = false;
      for (const auto& tr : store.transitionsOf(t))
        if (seen.insert(tr.target).second) work.push_back(tr.target);
    }
    if (ok) out.insert(u);
  }
  return out;
}

BisimRelation restrict_to_explored(const TransitionStore& store, const BisimRelation& rel) {
  std::set<Term> keep = fully_explored_terms(store);
  std::vector<std::pair<Term, Term>> pairs;
  const auto& uni = rel.universe();
  for (std::size_t i = 0; i < uni.size(); ++i) {
    if (!keep.count(uni[i])) continue;
    for (std::size_t j = i + 1; j < uni.size(); ++j)
      if (keep.count(uni[j]) && rel.related(uni[i], uni[j]))
        pairs.push_back({uni[i], uni[j]});
  }
  return BisimRelation::fromPairs(store, pairs, true);
}

BisimResult compute_bisim(const Signature& sig, const TransitionStore& store,
                          const std::vector<std::pair<Term, Term>>& candidates) {
  for (const auto& [a, b] : candidates) {
    if (!store.inUniverse(a))
      throw std::invalid_argument("candidate is not in the derived universe: " +
                                  print_term(sig, a));
    if (!store.inUniverse(b))
      throw std::invalid_argument("candidate is not in the derived universe: " +
                                  print_term(sig, b));
  }
  BisimComputer bc(sig, store);
  bc.run();
  BisimResult res;
  res.relation = std::move(bc.rel);
  res.rounds = bc.rounds;
  res.verdicts.reserve(candidates.size());
  for (const auto& c : candidates)
    res.verdicts.push_back({c, verdict_for(sig, store, res.relation, c.first, c.second)});
  return res;
}

namespace {

// Draws a related pair with both least sorts below `want`; prefers pairs of
// distinct terms within the size budget (their composites have a chance of
// landing back in the universe), then any distinct related pair, then a
// diagonal pair. Index pair goes to *out.
bool draw_related(const Signature& sig, const BisimRelation& rel,
                  const std::vector<SortId>& leastOf, SortId want, int sizeBudget,
                  Rng& rng, std::pair<int, int>* out) {
  const auto& uni = rel.universe();
  int n = static_cast<int>(uni.size());
  if (n == 0) return false;
  auto sortFits = [&](int k) { return sig.sortLeq(leastOf[k], want); };
  for (int pass = 0; pass < 2; ++pass) {
    for (int t = 0; t < 60; ++t) {
      int i = static_cast<int>(rng.below(n));
      int j = static_cast<int>(rng.below(n));
      if (i == j) continue;
      if (!sortFits(i) || !sortFits(j)) continue;
      if (pass == 0 && (uni[i].size() > sizeBudget || uni[j].size() > sizeBudget)) continue;
      if (rel.related(uni[i], uni[j])) {
        *out = {i, j};
        return true;
      }
    }
  }
  for (int t = 0; t < 60; ++t) {
    int i = static_cast<int>(rng.below(n));
    if (sortFits(i)) {
      *out = {i, i};
      return true;
    }
  }
  return false;
}

}  // namespace

CheckReport check_enhanced(const Signature& sig, const TransitionStore& store,
                           const BisimRelation& rel, int maxTermSize, int samples,
                           std::uint64_t seed) {
  CheckReport rep;
  rep.samples = samples;
  TermEnumerator enu(sig);
  Rng rng(seed);
  const auto& uni = rel.universe();
  int n = static_cast<int>(uni.size());
  std::vector<SortId> leastOf(n);
  for (int i = 0; i < n; ++i) leastOf[i] = least_of(sig, uni[i]);

  // Binder sorts that occur in constructor declarations drive the
  // substitution probes.
  std::vector<SortId> binderSorts;
  for (const ConDecl& con : sig.cons)
    for (const ConArg& arg : con.args)
      for (SortId s : arg.binders)
        if (std::find(binderSorts.begin(), binderSorts.end(), s) == binderSorts.end())
          binderSorts.push_back(s);

  const int kinds = sig.ops.empty() ? 1 : 2;
  for (int s = 0; s < samples; ++s) {
    int kind = static_cast<int>(rng.below(kinds));
    if (kind == 1) {
      // Operation closure: one slot carries a related pair, the others are
      // fixed; applying the operation must land on a related pair.
      int oi = static_cast<int>(rng.below(sig.ops.size()));
      const OpDecl& op = sig.ops[oi];
      int slots = 1 + static_cast<int>(op.aux.size());
      int slot = static_cast<int>(rng.below(slots));
      bool ok = true;
      Term mainA, mainB;
      std::vector<Term> auxA, auxB;
      auto fill = [&](SortId sort, int thisSlot, Term* ta, Term* tb) {
        std::pair<int, int> pr;
        if (thisSlot == slot &&
            draw_related(sig, rel, leastOf, sort, maxTermSize, rng, &pr)) {
          *ta = uni[pr.first];
          *tb = uni[pr.second];
          return;
        }
        Term t = enu.sample(sort, {}, maxTermSize, rng);
        if (!t.valid()) {
          ok = false;
          return;
        }
        *ta = t;
        *tb = t;
      };
      fill(op.mainSort, 0, &mainA, &mainB);
      for (std::size_t k = 0; k < op.aux.size() && ok; ++k) {
        Term ta, tb;
        fill(op.aux[k], 1 + static_cast<int>(k), &ta, &tb);
        auxA.push_back(ta);
        auxB.push_back(tb);
      }
      if (!ok) {
        rep.skipped++;
        continue;
      }
      Term A, B;
      try {
        A = normalize(sig, Term::opcall(oi, mainA, auxA));
        B = normalize(sig, Term::opcall(oi, mainB, auxB));
      } catch (const EvalError&) {
        rep.skipped++;
        continue;
      }
      if (!store.inUniverse(A) || !store.inUniverse(B)) {
        rep.skipped++;
        continue;
      }
      rep.checked++;
      if (!rel.related(A, B))
        rep.violations.push_back("operation " + op.name +
                                 " applied to related arguments gives an unrelated pair: " +
                                 print_term(sig, A) + "  vs  " + print_term(sig, B));
    } else {
      // Substitution: a related value pair pushed through one open body.
      if (binderSorts.empty()) {
        rep.skipped++;
        continue;
      }
      SortId bs = binderSorts[rng.below(binderSorts.size())];
      SortId bodySort = sig.sorts.empty() ? bs : static_cast<SortId>(rng.below(sig.sorts.size()));
      Term body = enu.sample(bodySort, {bs}, maxTermSize, rng);
      if (!body.valid()) {
        rep.skipped++;
        continue;
      }
      std::pair<int, int> pr;
      if (!draw_related(sig, rel, leastOf, bs, maxTermSize, rng, &pr)) {
        rep.skipped++;
        continue;
      }
      Term A = substitute(body, {uni[pr.first]});
      Term B = substitute(body, {uni[pr.second]});
      if (!store.inUniverse(A) || !store.inUniverse(B)) {
        rep.skipped++;
        continue;
      }
      rep.checked++;
      if (!rel.related(A, B))
        rep.violations.push_back(
            "substituting related values into " + print_term(sig, body, {"x"}) +
            " gives an unrelated pair: " + print_term(sig, A) + "  vs  " +
            print_term(sig, B));
    }
  }
  return rep;
}

CheckReport check_congruence(const Signature& sig, const TransitionStore& store,
                             const BisimRelation& rel, int maxTermSize, int samples,
                             std::uint64_t seed) {
  CheckReport rep;
  rep.samples = samples;
  TermEnumerator enu(sig);
  Rng rng(seed);
  const auto& uni = rel.universe();
  int n = static_cast<int>(uni.size());
  std::vector<SortId> leastOf(n);
  for (int i = 0; i < n; ++i) leastOf[i] = least_of(sig, uni[i]);

  for (int s = 0; s < samples; ++s) {
    if (sig.cons.empty()) {
      rep.skipped++;
      continue;
    }
    int ci = static_cast<int>(rng.below(sig.cons.size()));
    const ConDecl& con = sig.cons[ci];
    // Small arguments keep the composite within reach of the universe.
    int argBudget = con.args.empty()
                        ? maxTermSize
                        : std::max(1, (maxTermSize - 1) / static_cast<int>(con.args.size()));
    std::vector<Term> as, bs;
    std::vector<int> binders;
    bool ok = true;
    for (const ConArg& arg : con.args) {
      binders.push_back(static_cast<int>(arg.binders.size()));
      if (arg.binders.empty() && rng.below(2) == 0) {
        std::pair<int, int> pr;
        if (draw_related(sig, rel, leastOf, arg.sort, argBudget, rng, &pr)) {
          as.push_back(uni[pr.first]);
          bs.push_back(uni[pr.second]);
          continue;
        }
      }
      // Identity padding (always used at binder positions).
      Term t = enu.sample(arg.sort, arg.binders, argBudget, rng);
      if (!t.valid()) {
        ok = false;
        break;
      }
      as.push_back(t);
      bs.push_back(t);
    }
    if (!ok) {
      rep.skipped++;
      continue;
    }
    Term A = Term::con(ci, as, binders);
    Term B = Term::con(ci, bs, binders);
    if (!store.inUniverse(A) || !store.inUniverse(B)) {
      rep.skipped++;
      continue;
    }
    rep.checked++;
    if (!rel.related(A, B))
      rep.violations.push_back("constructor " + con.name +
                               " applied to related arguments gives an unrelated pair: " +
                               print_term(sig, A) + "  vs  " + print_term(sig, B));
  }
  return rep;
}

}  // namespace howebench
