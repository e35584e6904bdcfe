#include <doctest.h>

#include <set>

#include "castellan/tree.hpp"
#include "test_support.hpp"

using namespace castellan;
using namespace castellan::tree;
using castling::CastlingParams;
using castling::CastlingTuple;
using castellan::test::tup;

namespace {

CastlingTree enumerate31(long max_entry, std::size_t max_depth) {
  EnumerationConfig config{CastlingParams(3, 1)};
  config.max_entry = max_entry;
  config.max_depth = max_depth;
  return enumerate(config);
}

std::set<CastlingTuple> node_set(const CastlingTree& tree) {
  std::set<CastlingTuple> out;
  for (const TreeNode& node : tree.nodes) out.insert(node.tuple);
  return out;
}

}  // namespace

TEST_CASE("enumerate reproduces the depth-6 spine") {
  const auto tree = enumerate31(100, 6);
  const auto nodes = node_set(tree);
  for (const CastlingTuple& t :
       {CastlingTuple{}, tup({2}), tup({2, 5}), tup({5, 13}), tup({13, 34}),
        tup({34, 89})}) {
    CHECK(nodes.contains(t));
  }
}

TEST_CASE("enumerate reproduces the depth-4 nodes") {
  const auto tree = enumerate31(15000, 4);
  const auto nodes = node_set(tree);
  for (const CastlingTuple& t :
       {tup({2, 5, 29}), tup({5, 29, 433}), tup({2, 29, 169}),
        tup({13, 34, 1325}), tup({29, 169, 14701})}) {
    CHECK(nodes.contains(t));
  }
}

TEST_CASE("enumerate with unit entry bound yields the bare root") {
  const auto tree = enumerate31(1, 0);
  REQUIRE(tree.nodes.size() == 1);
  CHECK(tree.nodes[0].tuple.empty());
  CHECK(tree.nodes[0].depth == 0);
  CHECK_FALSE(tree.nodes[0].has_parent());
}

TEST_CASE("the entry bound applies per entry") {
  const auto nodes = node_set(enumerate31(1000, 4));
  CHECK(nodes.contains(tup({2, 169, 985})));
  CHECK_FALSE(nodes.contains(tup({29, 169, 14701})));
}

TEST_CASE("quotient annotations carry the removed-entry geometry") {
  const CastlingParams params(3, 1);

  const auto pair = annotate_quotients(params, tup({2, 5}));
  REQUIRE(pair.size() == 2);
  CHECK(pair[0].removed == 2);
  CHECK(pair[0].remaining == tup({5}));
  CHECK(pair[0].kind == QuotientKind::Grassmannian);
  CHECK(pair[0].beta == 13);
  CHECK(pair[0].alpha == 2);
  CHECK(pair[0].gl_string() == "GL(13)⊗GL(2)");
  CHECK(pair[1].removed == 5);
  CHECK(pair[1].remaining == tup({2}));
  CHECK(pair[1].kind == QuotientKind::Projective);

  const auto deep = annotate_quotients(params, tup({13, 34, 1325}));
  REQUIRE(deep.size() == 3);
  CHECK(deep[1].removed == 34);
  CHECK(deep[1].remaining == tup({13, 1325}));
  CHECK(deep[1].beta == 51641);
  CHECK(deep[1].alpha == 34);

  const auto wide = annotate_quotients(params, tup({2, 29, 169}));
  CHECK(wide[0].remaining == tup({29, 169}));
  CHECK(wide[0].beta == 14701);
  CHECK(wide[0].alpha == 2);

  // Equal entries collapse to one label.
  CHECK(annotate_quotients(CastlingParams(14, 7), tup({2, 2})).size() == 1);
}

TEST_CASE("annotated pairs are castling partners") {
  const CastlingParams params(3, 1);
  const auto tree = enumerate31(2000, 64);
  for (const TreeNode& node : tree.nodes) {
    for (const GeometryLabel& label : node.quotients) {
      std::vector<Int> with_beta = label.remaining.entries();
      with_beta.push_back(label.beta);
      CHECK(castling::is_solution(
          params, CastlingTuple::canonicalize(std::move(with_beta))));
      std::vector<Int> with_removed = label.remaining.entries();
      with_removed.push_back(label.removed);
      CHECK(castling::is_solution(
          params, CastlingTuple::canonicalize(std::move(with_removed))));
    }
  }
}

TEST_CASE("depth counts descent moves to the base level") {
  const auto tree = enumerate31(20000, 5);
  CHECK(tree.find(tup({34, 89}))->depth == 4);
  CHECK(tree.find(tup({13, 34, 1325}))->depth == 4);
  CHECK(tree.find(tup({2}))->depth == 0);
  for (const TreeNode& node : tree.nodes) {
    const auto trace =
        castling::reduce_to_root(tree.config.params, node.tuple);
    REQUIRE(trace.reached());
    std::size_t moves_to_base = 0;
    for (const auto& move : trace.moves) {
      if (node.tuple.length() <= 1) break;
      ++moves_to_base;
      if (move.after.length() <= 1) break;
    }
    CHECK(node.depth == moves_to_base);
    // Every node except the roots closes with one extra base-level move.
    CHECK(trace.moves.size() == node.depth + (node.tuple.empty() ? 0 : 1));
  }
}

TEST_CASE("nodes keep residual zero, bounded entries, and parent links") {
  const auto tree = enumerate31(15000, 4);
  for (const TreeNode& node : tree.nodes) {
    CHECK(castling::is_solution(tree.config.params, node.tuple));
    for (const Int& k : node.tuple.entries()) {
      CHECK(k >= tree.config.params.alpha);
      CHECK(k <= tree.config.max_entry);
    }
    if (node.has_parent()) {
      CHECK(node.parent_move->after == node.tuple);
      CHECK(node.parent_tuple().max_or_one() < node.tuple.max_or_one());
      CHECK(tree.find(node.parent_tuple()) != nullptr);
    } else {
      CHECK(node.tuple == castling::root_tuple(tree.config.params));
    }
    CHECK(node.fiber_dimension == node.tuple.fiber_dimension());
  }
}

TEST_CASE("completeness against the brute-force box scan") {
  const auto tree = enumerate31(500, 64);
  std::set<CastlingTuple> enumerated = node_set(tree);
  std::set<CastlingTuple> scanned;
  for (const auto& entries : test::naive_box_solutions(3, 1, 500, 4)) {
    scanned.insert(CastlingTuple::canonicalize(entries));
  }
  CHECK(enumerated == scanned);
}

TEST_CASE("exports are deterministic and stable") {
  const auto tree = enumerate31(100, 2);
  const auto again = enumerate31(100, 2);
  CHECK(export_json(tree) == export_json(again));
  CHECK(export_dot(tree) == export_dot(again));
  CHECK(export_csv(tree) == export_csv(again));
}

TEST_CASE("dot export shows the red spine and blue quotients") {
  const std::string dot = export_dot(enumerate31(100, 2));
  CHECK(dot.find("\"1\"") != std::string::npos);
  CHECK(dot.find("\"2\"") != std::string::npos);
  CHECK(dot.find("\"2x5\"") != std::string::npos);
  CHECK(dot.find("<u>5</u> [GL(13)⊗GL(2)]") != std::string::npos);
  CHECK(dot.find("\"1\" -> \"2\";") != std::string::npos);
  CHECK(dot.find("style=dashed") != std::string::npos);
}

TEST_CASE("csv export lists one row per node") {
  const std::string csv = export_csv(enumerate31(100, 2));
  CHECK(csv.rfind("depth,tuple,fiber_dim,quotients\n", 0) == 0);
  CHECK(csv.find("1,2x5,27,5:GL(13)⊗GL(2)|2:projective") !=
        std::string::npos);
}

TEST_CASE("json export round-trips") {
  const auto tree = enumerate31(15000, 4);
  const std::string text = export_json(tree);
  const CastlingTree parsed = tree_from_json(text);
  CHECK(export_json(parsed) == text);
  REQUIRE(parsed.nodes.size() == tree.nodes.size());
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    CHECK(parsed.nodes[i].tuple == tree.nodes[i].tuple);
    CHECK(parsed.nodes[i].depth == tree.nodes[i].depth);
    CHECK(parsed.nodes[i].fiber_dimension == tree.nodes[i].fiber_dimension);
  }
}

TEST_CASE("node budget is enforced") {
  EnumerationConfig config{CastlingParams(3, 1)};
  config.max_entry = 1000000;
  config.max_depth = 12;
  config.node_budget = 3;
  CHECK_THROWS_AS(enumerate(config), BudgetExceeded);
}

TEST_CASE("alpha >= 2 trees seed both base solutions at depth zero") {
  EnumerationConfig config{CastlingParams(5, 2)};
  config.max_entry = 100;
  config.max_depth = 2;
  const auto tree = enumerate(config);
  const auto* root = tree.find(tup({2}));
  const auto* flip = tree.find(tup({3}));
  REQUIRE(root != nullptr);
  REQUIRE(flip != nullptr);
  CHECK(root->depth == 0);
  CHECK(flip->depth == 0);
  CHECK_FALSE(root->has_parent());
  CHECK(flip->has_parent());
  CHECK(tree.find(tup({2, 9}))->depth == 1);
  CHECK(tree.find(tup({3, 14}))->depth == 1);
}
