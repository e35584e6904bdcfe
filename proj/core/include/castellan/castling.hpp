#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "castellan/integers.hpp"

namespace castellan::castling {

/// Castling at a position would produce a non-positive entry; the tuple
/// cannot be castled there within positive tuples.
class NonPositiveResult : public Error {
 public:
  explicit NonPositiveResult(const std::string& what) : Error(what) {}
};

/// The pair (l, alpha) fixing the equation. beta = l - alpha is derived.
struct CastlingParams {
  Int l;
  Int alpha;

  CastlingParams(Int l_, Int alpha_);

  Int beta() const { return l - alpha; }
};

/// Canonical sorted multiset of integers >= 2. Entries equal to 1 are
/// identified away: appending a 1 changes neither the residual nor any
/// castling product, so the canonical form strips all of them.
class CastlingTuple {
 public:
  CastlingTuple() = default;

  /// Sorts ascending and removes 1-entries. Rejects entries <= 0.
  static CastlingTuple canonicalize(std::vector<Int> raw);

  const std::vector<Int>& entries() const { return entries_; }
  std::size_t length() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Largest entry, with the empty tuple counting as 1 (its display form).
  Int max_or_one() const { return entries_.empty() ? Int(1) : entries_.back(); }

  Int product() const;      // empty product = 1
  Int sum_squares() const;  // empty sum = 0

  /// Sum of (k^2 - 1) over entries: the dimension of the bundle fiber
  /// carrying the structure group described by this tuple.
  Int fiber_dimension() const;

  /// "2,5" (empty tuple prints as "1").
  std::string str() const;
  /// "2x5" (empty tuple prints as "1"); used by DOT/CSV exports.
  std::string label() const;

  bool operator==(const CastlingTuple& other) const = default;
  /// Lexicographic on entries; used for deterministic orderings.
  bool operator<(const CastlingTuple& other) const {
    return entries_ < other.entries_;
  }

 private:
  std::vector<Int> entries_;
};

enum class MoveKind { AtPosition, Append };

/// One castling transform: replaces the entry at `position` by
/// l * (product of the others) - entry, or appends l * (product) - 1.
/// Applying the inverse move to `after` returns `before`.
struct CastlingMove {
  MoveKind kind = MoveKind::Append;
  std::size_t position = 0;  // 0-based index into before's entries (AtPosition)
  CastlingTuple before;
  CastlingTuple after;
  Int new_value;         // computed entry, before re-canonicalization
  bool self_loop = false;  // after == before (flagged, never an error)
};

/// Exact residual of the equation: alpha*(l-alpha) + sum k_i^2 - j + 1
/// - l * prod k_i, with empty sum 0 and empty product 1. Zero iff the
/// tuple is a solution.
Int residual(const CastlingParams& params, const CastlingTuple& t);

bool is_solution(const CastlingParams& params, const CastlingTuple& t);

/// The base solution: the empty tuple when alpha = 1 (the j = 1 solution
/// k = 1 canonicalizes to it), the one-entry tuple (alpha) otherwise.
CastlingTuple root_tuple(const CastlingParams& params);

/// Performs one castling transform. For AtPosition the new entry is
/// l * prod_{m != position} k_m - k_position (which reduces to l - k_1 when
/// j = 1); Append computes l * prod k_m - 1, i.e. the same formula applied
/// to a virtual trailing 1. Throws NonPositiveResult when the computed
/// entry is <= 0.
CastlingMove castle(const CastlingParams& params, const CastlingTuple& t,
                    MoveKind kind, std::size_t position = 0);

/// All castling moves out of `t`, one per canonical position plus the
/// append, in that order. Moves at equal entries collapse to one, and
/// self-loops are removed. Does NOT filter by solution-ness.
std::vector<CastlingMove> neighbors(const CastlingParams& params,
                                    const CastlingTuple& t);

enum class ReductionOutcome { ReachedRoot, NotSolution, NotReachable };

/// Record of a descent from a tuple towards the root. When the outcome is
/// ReachedRoot every intermediate tuple has residual 0 and the maximum
/// entry strictly decreases along the move sequence.
struct ReductionTrace {
  CastlingTuple start;
  std::vector<CastlingMove> moves;
  ReductionOutcome outcome = ReductionOutcome::NotSolution;
  std::string reason;  // evidence for NotReachable

  bool reached() const { return outcome == ReductionOutcome::ReachedRoot; }
  const CastlingTuple& final_tuple() const {
    return moves.empty() ? start : moves.back().after;
  }
};

/// Decides reachability from the root by repeated descent: castle at the
/// largest position (last index among equals) while j >= 2, apply
/// k -> l - k at j = 1 when it strictly decreases. Non-solutions report
/// NotSolution; solutions with an entry below alpha, or for which the
/// strict decrease of the maximum ever fails, report NotReachable with
/// the evidence. Termination is forced by the strict-decrease check.
ReductionTrace reduce_to_root(const CastlingParams& params,
                              const CastlingTuple& t);

}  // namespace castellan::castling
