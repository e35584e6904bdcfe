#include "castellan/search.hpp"

#include <algorithm>

#include "castellan/json_io.hpp"

namespace castellan::search {

using castling::CastlingParams;
using castling::CastlingTuple;
using castling::ReductionOutcome;

SearchBox SearchBox::cube_box(const CastlingParams& params,
                              std::size_t j_max) {
  SearchBox box{params, j_max};
  box.entry_min = 1;
  box.entry_max = params.alpha - 1;
  box.cube = true;
  return box;
}

std::string tag_name(Tag tag) {
  switch (tag) {
    case Tag::InCube: return "in_cube";
    case Tag::Reachable: return "reachable";
    case Tag::Anomalous: return "anomalous";
  }
  return "anomalous";
}

namespace {

struct Enumerator {
  const SearchBox& box;
  const Int lo;            // max(2, entry_min)
  const Int alpha_beta;    // alpha * (l - alpha)
  std::uint64_t budget;
  std::uint64_t steps = 0;
  bool cut = false;
  std::vector<CastlingTuple> found;

  Enumerator(const SearchBox& b, std::uint64_t step_budget)
      : box(b),
        lo(std::max(Int(2), b.entry_min)),
        alpha_beta(b.params.alpha * b.params.beta()),
        budget(step_budget) {}

  bool tick() {
    if (++steps > budget) cut = true;
    return !cut;
  }

  void record(std::vector<Int> entries) {
    found.push_back(CastlingTuple::canonicalize(std::move(entries)));
  }

  /// Emits every solution whose last entry completes `prefix` to a sorted
  /// tuple of length j. The residual in the last entry x is
  /// x^2 - (l*P) x + C with P the prefix product and
  /// C = alpha*beta + sum(prefix^2) - j + 1, so solutions are exactly the
  /// integer roots in [max(lo, last prefix entry), entry_max].
  void solve_last(std::size_t j, std::vector<Int>& prefix, const Int& product,
                  const Int& sumsq) {
    if (!tick()) return;
    const Int floor = prefix.empty() ? lo : std::max(lo, prefix.back());
    const Int lp = box.params.l * product;
    const Int c = alpha_beta + sumsq - Int(static_cast<unsigned long>(j)) + 1;
    Int disc = lp * lp - 4 * c;
    if (disc < 0) return;
    if (mpz_perfect_square_p(disc.get_mpz_t()) == 0) return;
    Int root;
    mpz_sqrt(root.get_mpz_t(), disc.get_mpz_t());
    for (int sign : {-1, +1}) {
      Int numer = lp + sign * root;
      if (sign > 0 && root == 0) continue;  // double root emitted once
      if (numer % 2 != 0) continue;
      Int x = numer / 2;
      if (x < floor || x > box.entry_max) continue;
      prefix.push_back(x);
      record(prefix);
      prefix.pop_back();
    }
  }

  /// Extends the sorted prefix at positions 1..j-1; the j-th entry is
  /// always solved for. Pruning: with t mid slots still open and the next
  /// value v, the first j-1 entries have product >= P * v^t, so the large
  /// quadratic root exceeds l*P*v^t/2; once that passes entry_max the only
  /// hope is the small root, which needs v^2 (l 2^(j-2) - j) <= alpha*beta.
  /// Both conditions are monotone in v, so the loop breaks.
  void extend(std::size_t j, std::vector<Int>& prefix, const Int& product,
              const Int& sumsq) {
    if (cut) return;
    if (prefix.size() + 1 == j) {
      solve_last(j, prefix, product, sumsq);
      return;
    }
    const std::size_t mid_slots = j - 1 - prefix.size();
    const Int small_root_coeff =
        box.params.l * (Int(1) << (j - 2)) - Int(static_cast<unsigned long>(j));
    for (Int v = prefix.empty() ? lo : std::max(lo, prefix.back());
         v <= box.entry_max; ++v) {
      if (!tick()) return;
      Int min_product = product;
      for (std::size_t i = 0; i < mid_slots; ++i) min_product *= v;
      const bool large_root_dead = box.params.l * min_product > 2 * box.entry_max;
      const bool small_root_dead = v * v * small_root_coeff > alpha_beta;
      if (large_root_dead && small_root_dead) break;
      prefix.push_back(v);
      extend(j, prefix, product * v, sumsq + v * v);
      prefix.pop_back();
      if (cut) return;
    }
  }
};

}  // namespace

SearchReport search(const SearchBox& box, std::uint64_t step_budget) {
  if (box.j_max < 1) {
    throw std::invalid_argument("j_max must be >= 1");
  }
  // An empty cube (alpha = 1 gives entry_max = 0) is legal: no candidates.
  if (!box.cube && box.entry_min > box.entry_max) {
    throw std::invalid_argument("entry_min must be <= entry_max");
  }

  Enumerator en(box, step_budget);

  // The empty tuple is a candidate of the full box scan (it is the
  // canonical form of all-1 tuples) but not of the cube, whose conjecture
  // quantifies over j >= 1.
  if (!box.cube && castling::is_solution(box.params, CastlingTuple{})) {
    en.found.push_back(CastlingTuple{});
  }
  if (box.entry_max >= en.lo) {
    for (std::size_t j = 1; j <= box.j_max && !en.cut; ++j) {
      std::vector<Int> prefix;
      en.extend(j, prefix, Int(1), Int(0));
    }
  }

  SearchReport report{box, {}, !en.cut, en.steps};
  std::sort(en.found.begin(), en.found.end(),
            [](const CastlingTuple& a, const CastlingTuple& b) {
              if (a.length() != b.length()) return a.length() < b.length();
              return a < b;
            });
  for (CastlingTuple& t : en.found) {
    if (!castling::is_solution(box.params, t)) {
      throw InvariantViolation("search emitted a non-solution: " + t.str());
    }
    TaggedSolution tagged;
    if (castling::reduce_to_root(box.params, t).reached()) {
      tagged.tag = Tag::Reachable;
    } else {
      bool in_cube = true;
      for (const Int& k : t.entries()) {
        if (k > box.params.alpha - 1) { in_cube = false; break; }
      }
      tagged.tag = in_cube ? Tag::InCube : Tag::Anomalous;
    }
    tagged.tuple = std::move(t);
    report.solutions.push_back(std::move(tagged));
  }
  return report;
}

PartitionResult classify_partition(const SearchReport& report) {
  if (!report.exhausted) {
    throw RequiresExhaustive("classification needs an exhausted report");
  }
  PartitionResult result{true, {}};
  for (const TaggedSolution& s : report.solutions) {
    if (s.tag == Tag::Anomalous) {
      result.holds = false;
      result.witnesses.push_back(s.tuple);
    }
  }
  return result;
}

std::string report_json(const SearchReport& report) {
  nlohmann::json doc;
  doc["box"]["l"] = int_to_json(report.box.params.l);
  doc["box"]["alpha"] = int_to_json(report.box.params.alpha);
  doc["box"]["j_max"] = report.box.j_max;
  doc["box"]["entry_min"] = int_to_json(report.box.entry_min);
  doc["box"]["entry_max"] = int_to_json(report.box.entry_max);
  doc["box"]["cube"] = report.box.cube;
  nlohmann::json solutions = nlohmann::json::array();
  for (const TaggedSolution& s : report.solutions) {
    nlohmann::json item;
    item["tuple"] = tuple_to_json(s.tuple);
    item["tag"] = tag_name(s.tag);
    solutions.push_back(std::move(item));
  }
  doc["solutions"] = std::move(solutions);
  doc["exhausted"] = report.exhausted;
  return doc.dump(2) + "\n";
}

}  // namespace castellan::search
