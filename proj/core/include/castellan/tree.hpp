#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "castellan/castling.hpp"

namespace castellan::tree {

/// Node count passed the configured cap: the bounds are too loose.
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

inline constexpr std::size_t kDefaultNodeBudget = 500000;

struct EnumerationConfig {
  castling::CastlingParams params;
  std::size_t max_depth = 0;
  Int max_entry;  // bounds each entry, not the product
  bool include_quotients = true;
  std::size_t node_budget = kDefaultNodeBudget;
};

enum class QuotientKind { Projective, Grassmannian };

/// Annotation for the quotient obtained by removing one entry k_s from a
/// solution node: the remaining manifold carries a Grassmannian structure
/// of type (beta, alpha) with beta = l * prod_{i != s} k_i - k_s and
/// alpha = k_s, degenerating to a projective structure exactly when
/// beta = 1.
struct GeometryLabel {
  Int removed;  // k_s
  castling::CastlingTuple remaining;
  QuotientKind kind = QuotientKind::Grassmannian;
  Int beta;
  Int alpha;

  /// "GL(13)⊗GL(2)"; empty for projective labels.
  std::string gl_string() const;
};

/// One label per distinct removable entry, ascending by entry value.
std::vector<GeometryLabel> annotate_quotients(
    const castling::CastlingParams& params, const castling::CastlingTuple& t);

struct TreeNode {
  castling::CastlingTuple tuple;
  std::size_t depth = 0;
  std::optional<castling::CastlingMove> parent_move;  // absent for the root
  Int fiber_dimension;
  std::vector<GeometryLabel> quotients;

  bool has_parent() const { return parent_move.has_value(); }
  const castling::CastlingTuple& parent_tuple() const {
    return parent_move->before;
  }
  /// Product-of-PL descriptor of the structure group, e.g. "PL(2)xPL(5)";
  /// "1" for the trivial group at the root.
  std::string structure_group() const;
};

/// Solution tree rooted at the base solution. Nodes are deduplicated by
/// canonical tuple and sorted by (depth, lexicographic entries); each
/// non-root node's parent is the unique neighbor with smaller maximum.
struct CastlingTree {
  EnumerationConfig config;
  std::vector<TreeNode> nodes;

  const TreeNode* find(const castling::CastlingTuple& t) const;
  const TreeNode& root() const { return nodes.front(); }
};

/// Breadth-first enumeration from the root. Children are the non-self-loop
/// castling moves with strictly larger maximum whose entries all fit under
/// max_entry. Depth counts the castling moves needed to descend to a tuple
/// of canonical length <= 1, so both one-entry base solutions sit at depth
/// 0. Throws BudgetExceeded when the node budget is passed.
CastlingTree enumerate(const EnumerationConfig& config);

/// Exports are byte-stable for a fixed tree.
std::string export_dot(const CastlingTree& tree);
std::string export_json(const CastlingTree& tree);
std::string export_csv(const CastlingTree& tree);

/// Inverse of export_json (modulo the node budget, which is not stored).
CastlingTree tree_from_json(const std::string& text);

}  // namespace castellan::tree
