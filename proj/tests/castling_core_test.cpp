#include <doctest.h>

#include <algorithm>
#include <deque>
#include <map>
#include <random>

#include "castellan/castling.hpp"
#include "test_support.hpp"

using namespace castellan;
using namespace castellan::castling;
using castellan::test::raw_residual;
using castellan::test::tup;

namespace {

std::vector<Int> raw(std::initializer_list<long> entries) {
  std::vector<Int> out;
  for (long k : entries) out.emplace_back(k);
  return out;
}

/// All tuples reachable from the root within `max_moves` castling moves,
/// following the no-undo convention (never castling back to the previous
/// tuple). Entries above `entry_cap` (when nonzero) are not expanded.
std::map<CastlingTuple, CastlingTuple> reachable(const CastlingParams& params,
                                                 std::size_t max_moves,
                                                 long entry_cap = 0) {
  std::map<CastlingTuple, CastlingTuple> parent;  // tuple -> predecessor
  const CastlingTuple root = root_tuple(params);
  parent.emplace(root, root);
  std::deque<std::pair<CastlingTuple, std::size_t>> queue{{root, 0}};
  while (!queue.empty()) {
    auto [t, dist] = queue.front();
    queue.pop_front();
    if (dist == max_moves) continue;
    for (const CastlingMove& move : neighbors(params, t)) {
      if (move.after == parent.at(t)) continue;  // undo
      if (entry_cap > 0 && move.after.max_or_one() > entry_cap) continue;
      if (parent.emplace(move.after, t).second) {
        queue.emplace_back(move.after, dist + 1);
      }
    }
  }
  return parent;
}

}  // namespace

TEST_CASE("canonicalize sorts, strips 1s and validates") {
  CHECK(CastlingTuple::canonicalize(raw({5, 2, 1})) == tup({2, 5}));
  CHECK(CastlingTuple::canonicalize(raw({1})) == CastlingTuple{});
  CHECK(CastlingTuple::canonicalize(raw({13, 34, 1325})) == tup({13, 34, 1325}));
  CHECK(CastlingTuple::canonicalize(raw({1, 1, 1})).empty());
  CHECK_THROWS_AS(CastlingTuple::canonicalize(raw({0, 2})),
                  std::invalid_argument);
  CHECK_THROWS_AS(CastlingTuple::canonicalize(raw({-3})), std::invalid_argument);
}

TEST_CASE("params validation") {
  CHECK_THROWS_AS(CastlingParams(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(CastlingParams(5, 0), std::invalid_argument);
  CHECK_THROWS_AS(CastlingParams(5, 3), std::invalid_argument);
  CHECK(CastlingParams(5, 2).beta() == 3);
}

TEST_CASE("residual on pinned examples") {
  CHECK(residual(CastlingParams(3, 1), tup({2, 5})) == 0);
  CHECK(residual(CastlingParams(3, 1), CastlingTuple{}) == 0);
  CHECK(residual(CastlingParams(14, 7), tup({2, 2})) == 0);
  CHECK(residual(CastlingParams(3, 1), tup({2, 2})) == -3);
  // Append preserves solutions, so the append target of the (4,2) root is
  // itself a solution: 2*2 + 4 + 49 - 2 + 1 - 4*14 = 0.
  CHECK(residual(CastlingParams(4, 2), tup({2, 7})) == 0);
}

TEST_CASE("residual is invariant under appended 1-entries") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> entry(2, 50);
  std::uniform_int_distribution<int> len(0, 4), ones(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const CastlingParams params(3 + trial % 8, 1 + (trial % 8) / 3);
    std::vector<Int> entries;
    for (int i = len(rng); i > 0; --i) entries.emplace_back(entry(rng));
    const Int base = raw_residual(params.l, params.alpha, entries);
    std::vector<Int> padded = entries;
    for (int i = ones(rng); i > 0; --i) padded.emplace_back(1);
    CHECK(raw_residual(params.l, params.alpha, padded) == base);
    CHECK(residual(params, CastlingTuple::canonicalize(padded)) == base);
  }
}

TEST_CASE("castle on pinned examples") {
  const CastlingParams p31(3, 1);
  CHECK(castle(p31, tup({2}), MoveKind::Append).after == tup({2, 5}));
  CHECK(castle(p31, tup({2, 5}), MoveKind::AtPosition, 0).after == tup({5, 13}));
  CHECK(castle(p31, tup({5, 13}), MoveKind::Append).after ==
        tup({5, 13, 194}));

  const CastlingMove strip = castle(p31, tup({2, 5}), MoveKind::AtPosition, 1);
  CHECK(strip.after == tup({2}));
  CHECK(strip.new_value == 1);

  CHECK_THROWS_AS(castle(p31, tup({7}), MoveKind::AtPosition, 0),
                  NonPositiveResult);
  CHECK_THROWS_AS(castle(p31, tup({2, 13}), MoveKind::AtPosition, 1),
                  NonPositiveResult);
  CHECK_THROWS_AS(castle(p31, tup({2, 5}), MoveKind::AtPosition, 2),
                  std::invalid_argument);

  const CastlingMove loop = castle(CastlingParams(4, 2), tup({2}),
                                   MoveKind::AtPosition, 0);
  CHECK(loop.self_loop);
  CHECK(loop.after == tup({2}));
}

TEST_CASE("neighbors are deterministic, deduplicated, unfiltered") {
  const CastlingParams p31(3, 1);
  const auto moves = neighbors(p31, tup({2, 5}));
  REQUIRE(moves.size() == 3);
  CHECK(moves[0].after == tup({5, 13}));
  CHECK(moves[1].after == tup({2}));
  CHECK(moves[2].after == tup({2, 5, 29}));

  // (4,2) root: the position move l - 2 = 2 is a self-loop, only the
  // append survives; its target is a solution (neighbors would keep it
  // either way, they never filter by solution-ness).
  const auto from_root = neighbors(CastlingParams(4, 2), tup({2}));
  REQUIRE(from_root.size() == 1);
  CHECK(from_root[0].after == tup({2, 7}));

  const auto from_empty = neighbors(p31, CastlingTuple{});
  REQUIRE(from_empty.size() == 1);
  CHECK(from_empty[0].after == tup({2}));

  // Equal entries collapse to a single move.
  const auto doubled = neighbors(CastlingParams(14, 7), tup({2, 2}));
  REQUIRE(doubled.size() == 2);
  CHECK(doubled[0].after == tup({2, 26}));
  CHECK(doubled[1].after == tup({2, 2, 55}));
}

TEST_CASE("reduce_to_root follows the descent") {
  const CastlingParams p31(3, 1);
  const ReductionTrace trace = reduce_to_root(p31, tup({13, 34, 1325}));
  REQUIRE(trace.reached());
  REQUIRE(trace.moves.size() == 5);
  CHECK(trace.moves[0].after == tup({13, 34}));
  CHECK(trace.moves[1].after == tup({5, 13}));
  CHECK(trace.moves[2].after == tup({2, 5}));
  CHECK(trace.moves[3].after == tup({2}));
  CHECK(trace.moves[4].after == CastlingTuple{});
  Int last_max = trace.start.max_or_one();
  for (const CastlingMove& move : trace.moves) {
    CHECK(residual(p31, move.after) == 0);
    CHECK(move.after.max_or_one() < last_max);
    last_max = move.after.max_or_one();
  }

  const ReductionTrace below = reduce_to_root(CastlingParams(14, 7), tup({2, 2}));
  CHECK(below.outcome == ReductionOutcome::NotReachable);
  CHECK(below.reason.find("entry below alpha") != std::string::npos);

  const ReductionTrace fixed = reduce_to_root(CastlingParams(5, 2), tup({2}));
  CHECK(fixed.reached());
  CHECK(fixed.moves.empty());

  CHECK(reduce_to_root(p31, tup({2, 2})).outcome ==
        ReductionOutcome::NotSolution);

  // The flip partner of the root descends in one move.
  const ReductionTrace flip = reduce_to_root(CastlingParams(5, 2), tup({3}));
  CHECK(flip.reached());
  CHECK(flip.moves.size() == 1);
}

TEST_CASE("castling preserves solutions and the descent bounds hold") {
  for (const auto& [l, alpha] : std::vector<std::pair<int, int>>{
           {3, 1}, {4, 1}, {5, 2}, {6, 3}}) {
    const CastlingParams params(l, alpha);
    const auto nodes = reachable(params, 8);
    for (const auto& [t, pred] : nodes) {
      CHECK(residual(params, t) == 0);
      for (const Int& k : t.entries()) CHECK(k >= params.alpha);

      if (t.length() >= 2) {
        // 0 < l k_1 ... k_{j-1} - k_j < k_j on every reachable tuple.
        const Int& top = t.entries().back();
        const Int partner = params.l * (t.product() / top) - top;
        CHECK(partner > 0);
        CHECK(partner < top);
      }

      for (const CastlingMove& move : neighbors(params, t)) {
        CHECK(residual(params, move.after) == 0);
        CHECK(move.new_value > 0);
        // Involution: castling the new entry goes straight back.
        if (move.new_value > 1) {
          const auto& entries = move.after.entries();
          const std::size_t where = static_cast<std::size_t>(
              std::find(entries.begin(), entries.end(), move.new_value) -
              entries.begin());
          REQUIRE(where < entries.size());
          const CastlingMove back =
              castle(params, move.after, MoveKind::AtPosition, where);
          CHECK(back.after == t);
        } else {
          // The computed entry was 1: undoing is the append.
          CHECK(castle(params, move.after, MoveKind::Append).after == t);
        }
        // New entries that grow the maximum are the unique largest.
        if (move.after.max_or_one() > t.max_or_one()) {
          CHECK(move.new_value == move.after.max_or_one());
          CHECK(std::count(move.after.entries().begin(),
                           move.after.entries().end(),
                           move.new_value) == 1);
        }
      }

      CHECK(reduce_to_root(params, t).reached());
    }
  }
}

TEST_CASE("reduce agrees with brute-force enumeration") {
  // Every solution in the box either descends to the root or has an entry
  // below alpha; for alpha = 1 the classification says all of them descend.
  const auto solutions = test::naive_box_solutions(3, 1, 300, 4);
  const CastlingParams params(3, 1);
  const auto nodes = reachable(params, 32, 300);
  CHECK(solutions.size() == nodes.size());
  for (const auto& entries : solutions) {
    const CastlingTuple t = CastlingTuple::canonicalize(entries);
    CHECK(reduce_to_root(params, t).reached());
    CHECK(nodes.contains(t));
  }
}
