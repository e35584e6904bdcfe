#include "castellan/castling.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace castellan::castling {

CastlingParams::CastlingParams(Int l_, Int alpha_)
    : l(std::move(l_)), alpha(std::move(alpha_)) {
  if (l < 3) {
    throw std::invalid_argument("l must be >= 3, got " + to_string(l));
  }
  if (alpha < 1 || alpha > l - alpha) {
    throw std::invalid_argument("alpha must satisfy 1 <= alpha <= l - alpha, got l=" +
                                to_string(l) + " alpha=" + to_string(alpha));
  }
}

CastlingTuple CastlingTuple::canonicalize(std::vector<Int> raw) {
  for (const Int& k : raw) {
    if (k <= 0) {
      throw std::invalid_argument("tuple entries must be positive, got " +
                                  to_string(k));
    }
  }
  std::erase(raw, Int(1));
  std::sort(raw.begin(), raw.end());
  CastlingTuple t;
  t.entries_ = std::move(raw);
  return t;
}

Int CastlingTuple::product() const {
  Int p = 1;
  for (const Int& k : entries_) p *= k;
  return p;
}

Int CastlingTuple::sum_squares() const {
  Int s = 0;
  for (const Int& k : entries_) s += k * k;
  return s;
}

Int CastlingTuple::fiber_dimension() const {
  Int s = 0;
  for (const Int& k : entries_) s += k * k - 1;
  return s;
}

std::string CastlingTuple::str() const {
  if (entries_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i > 0) os << ',';
    os << entries_[i];
  }
  return os.str();
}

std::string CastlingTuple::label() const {
  if (entries_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i > 0) os << 'x';
    os << entries_[i];
  }
  return os.str();
}

Int residual(const CastlingParams& params, const CastlingTuple& t) {
  Int j(static_cast<unsigned long>(t.length()));
  return params.alpha * params.beta() + t.sum_squares() - j + 1 -
         params.l * t.product();
}

bool is_solution(const CastlingParams& params, const CastlingTuple& t) {
  return residual(params, t) == 0;
}

CastlingTuple root_tuple(const CastlingParams& params) {
  if (params.alpha == 1) return CastlingTuple{};
  return CastlingTuple::canonicalize({params.alpha});
}

CastlingMove castle(const CastlingParams& params, const CastlingTuple& t,
                    MoveKind kind, std::size_t position) {
  CastlingMove move;
  move.kind = kind;
  move.before = t;

  std::vector<Int> next = t.entries();
  if (kind == MoveKind::AtPosition) {
    if (position >= t.length()) {
      throw std::invalid_argument("castle position out of range");
    }
    move.position = position;
    Int others = 1;
    for (std::size_t i = 0; i < t.length(); ++i) {
      if (i != position) others *= t.entries()[i];
    }
    move.new_value = params.l * others - t.entries()[position];
    if (move.new_value <= 0) {
      throw NonPositiveResult("castling at position " +
                              std::to_string(position + 1) + " of " + t.str() +
                              " yields " + to_string(move.new_value));
    }
    next[position] = move.new_value;
  } else {
    move.new_value = params.l * t.product() - 1;
    // l >= 3 and a positive product make this >= 2; never non-positive.
    next.push_back(move.new_value);
  }
  move.after = CastlingTuple::canonicalize(std::move(next));
  move.self_loop = (move.after == move.before);
  return move;
}

std::vector<CastlingMove> neighbors(const CastlingParams& params,
                                    const CastlingTuple& t) {
  std::vector<CastlingMove> moves;
  std::set<CastlingTuple> seen;
  for (std::size_t i = 0; i < t.length(); ++i) {
    if (i > 0 && t.entries()[i] == t.entries()[i - 1]) continue;  // equal entry
    CastlingMove move = castle(params, t, MoveKind::AtPosition, i);
    if (move.self_loop) continue;
    if (seen.insert(move.after).second) moves.push_back(std::move(move));
  }
  CastlingMove append = castle(params, t, MoveKind::Append);
  if (!append.self_loop && seen.insert(append.after).second) {
    moves.push_back(std::move(append));
  }
  return moves;
}

ReductionTrace reduce_to_root(const CastlingParams& params,
                              const CastlingTuple& t) {
  ReductionTrace trace;
  trace.start = t;

  if (!is_solution(params, t)) {
    trace.outcome = ReductionOutcome::NotSolution;
    return trace;
  }
  for (const Int& k : t.entries()) {
    if (k < params.alpha) {
      trace.outcome = ReductionOutcome::NotReachable;
      trace.reason = "entry below alpha: " + to_string(k);
      return trace;
    }
  }

  const CastlingTuple root = root_tuple(params);
  CastlingTuple current = t;
  while (!(current == root)) {
    const std::size_t j = current.length();
    // j = 0 only happens at the alpha = 1 root, already handled above.
    const std::size_t pos = j - 1;  // largest entry; last index among equals
    const Int before_max = current.max_or_one();
    CastlingMove move;
    try {
      move = castle(params, current, MoveKind::AtPosition, pos);
    } catch (const NonPositiveResult&) {
      trace.outcome = ReductionOutcome::NotReachable;
      trace.reason = "descent stuck at " + current.str() +
                     ": castling the maximum is non-positive";
      return trace;
    }
    if (move.after.max_or_one() >= before_max) {
      trace.outcome = ReductionOutcome::NotReachable;
      trace.reason = "descent stuck at " + current.str() +
                     ": maximum does not decrease";
      return trace;
    }
    if (!is_solution(params, move.after)) {
      throw InvariantViolation("residual drift during descent: " +
                               move.after.str() + " from " + current.str());
    }
    current = move.after;
    trace.moves.push_back(std::move(move));
  }
  trace.outcome = ReductionOutcome::ReachedRoot;
  return trace;
}

}  // namespace castellan::castling
