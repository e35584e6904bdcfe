#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "castellan/castling.hpp"

namespace castellan::search {

/// classify_partition needs an exhausted report.
class RequiresExhaustive : public Error {
 public:
  explicit RequiresExhaustive(const std::string& what) : Error(what) {}
};

inline constexpr std::uint64_t kDefaultStepBudget = 200'000'000;

/// Bounded box of candidate tuples: lengths 1..j_max (plus the empty tuple
/// in full-box mode), entries non-decreasing within [entry_min, entry_max].
/// Candidates are canonical, so the effective lower bound is max(2, entry_min).
struct SearchBox {
  castling::CastlingParams params;
  std::size_t j_max = 1;
  Int entry_min = 1;
  Int entry_max;
  bool cube = false;

  /// The cube of the no-small-solutions conjecture: entries <= alpha - 1.
  static SearchBox cube_box(const castling::CastlingParams& params,
                            std::size_t j_max);
};

enum class Tag { InCube, Reachable, Anomalous };

std::string tag_name(Tag tag);

struct TaggedSolution {
  castling::CastlingTuple tuple;
  Tag tag = Tag::Anomalous;
};

struct SearchReport {
  SearchBox box;
  std::vector<TaggedSolution> solutions;  // sorted by (length, entries)
  bool exhausted = false;
  std::uint64_t steps = 0;
};

/// Exhaustively enumerates solutions in the box. The last coordinate is
/// never scanned: for a fixed prefix the residual is a monic quadratic in
/// the final entry, so its integer roots are solved for directly. Prefix
/// extension stops once both quadratic roots are provably out of range
/// (large root exceeds entry_max, small root falls below the sorted-prefix
/// floor). A step budget turns the report partial (exhausted = false)
/// instead of running away.
SearchReport search(const SearchBox& box,
                    std::uint64_t step_budget = kDefaultStepBudget);

struct PartitionResult {
  bool holds = false;
  std::vector<castling::CastlingTuple> witnesses;
};

/// Checks that the solutions split into reachable-from-root and inside-the-
/// cube; any Anomalous tuple is a witness against the classification.
PartitionResult classify_partition(const SearchReport& report);

std::string report_json(const SearchReport& report);

}  // namespace castellan::search
