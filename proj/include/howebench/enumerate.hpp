#pragma once

#include <cstdint>
#include <map>
#include <tuple>

#include "howebench/signature.hpp"

namespace howebench {

// Deterministic pseudo-random stream (splitmix64); stable across platforms,
// unlike the standard distributions.
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed) {}
  uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }
};

// Memoized enumeration and counting of normal-form terms by exact node count.
class TermEnumerator {
 public:
  explicit TermEnumerator(const Signature& sig) : sig_(sig) {}

  // All terms of least sort <= sort in ctx with 1 <= size <= maxSize,
  // in canonical order (size, then variables by index, then constructors in
  // declaration order, recursively).
  std::vector<Term> upTo(SortId sort, const Ctx& ctx, int maxSize);

  // Number of such terms, saturating at 2^62.
  uint64_t countUpTo(SortId sort, const Ctx& ctx, int maxSize);

  // Uniform draw among the countUpTo terms; invalid Term if none exist.
  Term sample(SortId sort, const Ctx& ctx, int maxSize, Rng& rng);

 private:
  const Signature& sig_;
  std::map<std::tuple<SortId, Ctx, int>, std::vector<Term>> memoTerms_;
  std::map<std::tuple<SortId, Ctx, int>, uint64_t> memoCount_;

  // Least sort exactly `sort`, size exactly `size`.
  const std::vector<Term>& exact(SortId sort, const Ctx& ctx, int size);
  uint64_t countExact(SortId sort, const Ctx& ctx, int size);
  uint64_t countAt(SortId sortUpper, const Ctx& ctx, int size);
  Term sampleExact(SortId sort, const Ctx& ctx, int size, uint64_t index);
  Term sampleAt(SortId sortUpper, const Ctx& ctx, int size, uint64_t index);
};

// One-shot convenience wrapper around TermEnumerator::upTo.
std::vector<Term> enumerate_terms(const Signature& sig, SortId sort, const Ctx& ctx,
                                  int maxSize);

}  // namespace howebench
