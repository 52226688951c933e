#include "howebench/enumerate.hpp"

#include <algorithm>

namespace howebench {

namespace {

constexpr uint64_t kCountCap = 1ull << 62;

uint64_t satAdd(uint64_t a, uint64_t b) {
  uint64_t s = a + b;
  if (s < a || s > kCountCap) return kCountCap;
  return s;
}

uint64_t satMul(uint64_t a, uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kCountCap / b) return kCountCap;
  return a * b;
}

// All ways to write total as `parts` summands, each >= 1, lexicographic.
void compositions(int total, int parts, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    if (total >= 1) {
      cur.push_back(total);
      out.push_back(cur);
      cur.pop_back();
    }
    return;
  }
  for (int first = 1; first <= total - (parts - 1); ++first) {
    cur.push_back(first);
    compositions(total - first, parts - 1, cur, out);
    cur.pop_back();
  }
}

Ctx extendCtx(const Ctx& ctx, const Ctx& binders) {
  Ctx ext = ctx;
  ext.insert(ext.end(), binders.begin(), binders.end());
  return ext;
}

}  // namespace

const std::vector<Term>& TermEnumerator::exact(SortId sort, const Ctx& ctx, int size) {
  auto key = std::make_tuple(sort, ctx, size);
  auto it = memoTerms_.find(key);
  if (it != memoTerms_.end()) return it->second;

  std::vector<Term> out;
  if (size == 1) {
    for (size_t i = 0; i < ctx.size(); ++i) {
      if (ctx[ctx.size() - 1 - i] == sort) out.push_back(Term::var(static_cast<int>(i)));
    }
    for (size_t c = 0; c < sig_.cons.size(); ++c) {
      if (sig_.cons[c].result == sort && sig_.cons[c].args.empty())
        out.push_back(Term::con0(static_cast<int>(c)));
    }
  } else if (size > 1) {
    for (size_t c = 0; c < sig_.cons.size(); ++c) {
      const ConDecl& con = sig_.cons[c];
      if (con.result != sort || con.args.empty()) continue;
      int k = static_cast<int>(con.args.size());
      std::vector<std::vector<int>> splits;
      std::vector<int> cur;
      compositions(size - 1, k, cur, splits);
      for (const auto& split : splits) {
        // Gather per-argument candidate lists (any sort <= the declared one).
        std::vector<std::vector<Term>> lists(k);
        bool empty = false;
        for (int a = 0; a < k && !empty; ++a) {
          Ctx ext = extendCtx(ctx, con.args[a].binders);
          for (SortId s = 0; s < static_cast<SortId>(sig_.sorts.size()); ++s) {
            if (!sig_.sortLeq(s, con.args[a].sort)) continue;
            const auto& terms = exact(s, ext, split[a]);
            lists[a].insert(lists[a].end(), terms.begin(), terms.end());
          }
          if (lists[a].empty()) empty = true;
          std::sort(lists[a].begin(), lists[a].end());
        }
        if (empty) continue;
        std::vector<size_t> idx(k, 0);
        while (true) {
          std::vector<Term> args;
          args.reserve(k);
          for (int a = 0; a < k; ++a) args.push_back(lists[a][idx[a]]);
          std::vector<int> binders;
          binders.reserve(k);
          for (int a = 0; a < k; ++a)
            binders.push_back(static_cast<int>(con.args[a].binders.size()));
          out.push_back(Term::con(static_cast<int>(c), std::move(args), binders));
          int pos = k - 1;
          while (pos >= 0 && ++idx[pos] == lists[pos].size()) idx[pos--] = 0;
          if (pos < 0) break;
        }
      }
    }
  }
  return memoTerms_.emplace(std::move(key), std::move(out)).first->second;
}

uint64_t TermEnumerator::countAt(SortId sortUpper, const Ctx& ctx, int size) {
  uint64_t total = 0;
  for (SortId s = 0; s < static_cast<SortId>(sig_.sorts.size()); ++s) {
    if (sig_.sortLeq(s, sortUpper)) total = satAdd(total, countExact(s, ctx, size));
  }
  return total;
}

uint64_t TermEnumerator::countExact(SortId sort, const Ctx& ctx, int size) {
  auto key = std::make_tuple(sort, ctx, size);
  auto it = memoCount_.find(key);
  if (it != memoCount_.end()) return it->second;

  uint64_t total = 0;
  if (size == 1) {
    for (size_t i = 0; i < ctx.size(); ++i)
      if (ctx[ctx.size() - 1 - i] == sort) ++total;
    for (const ConDecl& con : sig_.cons)
      if (con.result == sort && con.args.empty()) ++total;
  } else if (size > 1) {
    for (const ConDecl& con : sig_.cons) {
      if (con.result != sort || con.args.empty()) continue;
      int k = static_cast<int>(con.args.size());
      std::vector<std::vector<int>> splits;
      std::vector<int> cur;
      compositions(size - 1, k, cur, splits);
      for (const auto& split : splits) {
        uint64_t prod = 1;
        for (int a = 0; a < k && prod > 0; ++a) {
          Ctx ext = extendCtx(ctx, con.args[a].binders);
          prod = satMul(prod, countAt(con.args[a].sort, ext, split[a]));
        }
        total = satAdd(total, prod);
      }
    }
  }
  memoCount_.emplace(std::move(key), total);
  return total;
}

std::vector<Term> TermEnumerator::upTo(SortId sort, const Ctx& ctx, int maxSize) {
  std::vector<Term> out;
  for (int size = 1; size <= maxSize; ++size) {
    std::vector<Term> layer;
    for (SortId s = 0; s < static_cast<SortId>(sig_.sorts.size()); ++s) {
      if (!sig_.sortLeq(s, sort)) continue;
      const auto& terms = exact(s, ctx, size);
      layer.insert(layer.end(), terms.begin(), terms.end());
    }
    std::sort(layer.begin(), layer.end());
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

uint64_t TermEnumerator::countUpTo(SortId sort, const Ctx& ctx, int maxSize) {
  uint64_t total = 0;
  for (int size = 1; size <= maxSize; ++size) total = satAdd(total, countAt(sort, ctx, size));
  return total;
}

Term TermEnumerator::sampleAt(SortId sortUpper, const Ctx& ctx, int size, uint64_t index) {
  for (SortId s = 0; s < static_cast<SortId>(sig_.sorts.size()); ++s) {
    if (!sig_.sortLeq(s, sortUpper)) continue;
    uint64_t c = countExact(s, ctx, size);
    if (index < c) return sampleExact(s, ctx, size, index);
    index -= c;
  }
  return Term();
}

Term TermEnumerator::sampleExact(SortId sort, const Ctx& ctx, int size, uint64_t index) {
  if (size == 1) {
    for (size_t i = 0; i < ctx.size(); ++i) {
      if (ctx[ctx.size() - 1 - i] == sort) {
        if (index == 0) return Term::var(static_cast<int>(i));
        --index;
      }
    }
    for (size_t c = 0; c < sig_.cons.size(); ++c) {
      if (sig_.cons[c].result == sort && sig_.cons[c].args.empty()) {
        if (index == 0) return Term::con0(static_cast<int>(c));
        --index;
      }
    }
    return Term();
  }
  for (size_t c = 0; c < sig_.cons.size(); ++c) {
    const ConDecl& con = sig_.cons[c];
    if (con.result != sort || con.args.empty()) continue;
    int k = static_cast<int>(con.args.size());
    std::vector<std::vector<int>> splits;
    std::vector<int> cur;
    compositions(size - 1, k, cur, splits);
    for (const auto& split : splits) {
      std::vector<uint64_t> counts(k);
      uint64_t prod = 1;
      for (int a = 0; a < k; ++a) {
        Ctx ext = extendCtx(ctx, con.args[a].binders);
        counts[a] = countAt(con.args[a].sort, ext, split[a]);
        prod = satMul(prod, counts[a]);
      }
      if (prod == 0) continue;
      if (index < prod) {
        // Mixed-radix decomposition, first argument most significant.
        std::vector<Term> args(k);
        for (int a = k - 1; a >= 0; --a) {
          uint64_t digit = index % counts[a];
          index /= counts[a];
          Ctx ext = extendCtx(ctx, con.args[a].binders);
          args[a] = sampleAt(con.args[a].sort, ext, split[a], digit);
        }
        std::vector<int> binders;
        binders.reserve(k);
        for (int a = 0; a < k; ++a)
          binders.push_back(static_cast<int>(con.args[a].binders.size()));
        return Term::con(static_cast<int>(c), std::move(args), binders);
      }
      index -= prod;
    }
  }
  return Term();
}

Term TermEnumerator::sample(SortId sort, const Ctx& ctx, int maxSize, Rng& rng) {
  uint64_t total = countUpTo(sort, ctx, maxSize);
  if (total == 0) return Term();
  uint64_t index = rng.below(total);
  for (int size = 1; size <= maxSize; ++size) {
    uint64_t c = countAt(sort, ctx, size);
    if (index < c) return sampleAt(sort, ctx, size, index);
    index -= c;
  }
  return Term();
}

std::vector<Term> enumerate_terms(const Signature& sig, SortId sort, const Ctx& ctx,
                                  int maxSize) {
  TermEnumerator e(sig);
  return e.upTo(sort, ctx, maxSize);
}

}  // namespace howebench
