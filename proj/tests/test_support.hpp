#pragma once

#include <random>
#include <set>
#include <vector>

#include "castellan/castling.hpp"

namespace castellan::test {

inline castling::CastlingTuple tup(std::initializer_list<long> entries) {
  std::vector<Int> raw;
  for (long k : entries) raw.emplace_back(k);
  return castling::CastlingTuple::canonicalize(std::move(raw));
}

/// Residual written out directly from the displayed equation, independent
/// of the library's implementation: works on the raw (uncanonicalized)
/// entry list, counting 1-entries in j and the product.
inline Int raw_residual(const Int& l, const Int& alpha,
                        const std::vector<Int>& raw) {
  Int sumsq = 0, product = 1;
  for (const Int& k : raw) {
    sumsq += k * k;
    product *= k;
  }
  return alpha * (l - alpha) + sumsq - Int(static_cast<long>(raw.size())) + 1 -
         l * product;
}

/// Brute-force oracle: all sorted tuples with entries in [2, entry_max]
/// and length <= j_max (plus the empty tuple) whose raw residual vanishes.
/// Intentionally a plain nested scan with no pruning.
inline std::set<std::vector<Int>> naive_box_solutions(long l, long alpha,
                                                      long entry_max,
                                                      std::size_t j_max) {
  std::set<std::vector<Int>> found;
  std::vector<Int> stack;
  const Int ll(l), aa(alpha);
  auto scan = [&](auto&& self, long lo, std::size_t remaining) -> void {
    if (raw_residual(ll, aa, stack) == 0) found.insert(stack);
    if (remaining == 0) return;
    for (long v = lo; v <= entry_max; ++v) {
      stack.emplace_back(v);
      self(self, v, remaining - 1);
      stack.pop_back();
    }
  };
  scan(scan, 2, j_max);
  return found;
}

inline Rat random_rational(std::mt19937& rng, int lo = -6, int hi = 6,
                           int max_den = 4) {
  std::uniform_int_distribution<int> numer(lo, hi);
  std::uniform_int_distribution<int> denom(1, max_den);
  Rat r(numer(rng), denom(rng));
  r.canonicalize();
  return r;
}

}  // namespace castellan::test
