#include "castellan/tree.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "castellan/json_io.hpp"

namespace castellan::tree {

using castling::CastlingMove;
using castling::CastlingParams;
using castling::CastlingTuple;
using nlohmann::json;

std::string GeometryLabel::gl_string() const {
  if (kind == QuotientKind::Projective) return {};
  return "GL(" + to_string(beta) + ")⊗GL(" + to_string(alpha) + ")";
}

std::vector<GeometryLabel> annotate_quotients(const CastlingParams& params,
                                              const CastlingTuple& t) {
  std::vector<GeometryLabel> labels;
  const Int total = t.product();
  for (std::size_t s = 0; s < t.length(); ++s) {
    const Int& k = t.entries()[s];
    if (s > 0 && k == t.entries()[s - 1]) continue;  // equal entries: one label
    std::vector<Int> rest = t.entries();
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(s));
    GeometryLabel label;
    label.removed = k;
    label.remaining = CastlingTuple::canonicalize(std::move(rest));
    label.beta = params.l * (total / k) - k;
    label.alpha = k;
    label.kind =
        label.beta == 1 ? QuotientKind::Projective : QuotientKind::Grassmannian;
    labels.push_back(std::move(label));
  }
  return labels;
}

std::string TreeNode::structure_group() const {
  if (tuple.empty()) return "1";
  std::ostringstream os;
  const auto& ks = tuple.entries();
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (i > 0) os << 'x';
    os << "PL(" << ks[i] << ')';
  }
  return os.str();
}

const TreeNode* CastlingTree::find(const CastlingTuple& t) const {
  for (const TreeNode& node : nodes) {
    if (node.tuple == t) return &node;
  }
  return nullptr;
}

CastlingTree enumerate(const EnumerationConfig& config) {
  if (config.max_entry < config.params.alpha) {
    throw std::invalid_argument("max_entry must be >= alpha");
  }

  CastlingTree tree{config, {}};
  std::map<CastlingTuple, std::size_t> index;

  const CastlingTuple root = castling::root_tuple(config.params);
  TreeNode root_node;
  root_node.tuple = root;
  root_node.depth = 0;
  root_node.fiber_dimension = root.fiber_dimension();
  index.emplace(root, 0);
  tree.nodes.push_back(std::move(root_node));

  std::deque<std::size_t> frontier{0};
  while (!frontier.empty()) {
    const std::size_t at = frontier.front();
    frontier.pop_front();
    const CastlingTuple current = tree.nodes[at].tuple;
    const std::size_t current_depth = tree.nodes[at].depth;
    const Int current_max = current.max_or_one();

    for (CastlingMove& move : castling::neighbors(config.params, current)) {
      const CastlingTuple& child = move.after;
      if (child.max_or_one() <= current_max) continue;  // descent parent
      if (!child.empty() && child.entries().back() > config.max_entry) continue;
      // One-entry tuples still belong to the base level of the tree.
      const std::size_t child_depth =
          current_depth + (child.length() >= 2 ? 1 : 0);
      if (child_depth > config.max_depth) continue;
      if (index.contains(child)) continue;
      if (!castling::is_solution(config.params, child)) {
        throw InvariantViolation("castling move left the solution set: " +
                                 child.str());
      }
      if (tree.nodes.size() >= config.node_budget) {
        throw BudgetExceeded("node budget of " +
                             std::to_string(config.node_budget) + " exceeded");
      }
      TreeNode node;
      node.tuple = child;
      node.depth = child_depth;
      node.fiber_dimension = node.tuple.fiber_dimension();
      node.parent_move = std::move(move);
      index.emplace(child, tree.nodes.size());
      frontier.push_back(tree.nodes.size());
      tree.nodes.push_back(std::move(node));
    }
  }

  if (config.include_quotients) {
    for (TreeNode& node : tree.nodes) {
      node.quotients = annotate_quotients(config.params, node.tuple);
    }
  }

  std::sort(tree.nodes.begin(), tree.nodes.end(),
            [](const TreeNode& a, const TreeNode& b) {
              if (a.depth != b.depth) return a.depth < b.depth;
              return a.tuple < b.tuple;
            });
  return tree;
}

namespace {

json label_to_json(const GeometryLabel& label) {
  json j;
  j["removed"] = int_to_json(label.removed);
  j["remaining"] = tuple_to_json(label.remaining);
  if (label.kind == QuotientKind::Projective) {
    j["kind"] = "projective";
    j["beta"] = nullptr;
    j["alpha"] = nullptr;
  } else {
    j["kind"] = "grassmannian";
    j["beta"] = int_to_json(label.beta);
    j["alpha"] = int_to_json(label.alpha);
  }
  return j;
}

GeometryLabel label_from_json(const CastlingParams& params, const json& j) {
  GeometryLabel label;
  label.removed = int_from_json(j.at("removed"));
  label.remaining = tuple_from_json(j.at("remaining"));
  label.alpha = label.removed;
  label.beta = params.l * label.remaining.product() - label.removed;
  label.kind = j.at("kind") == "projective" ? QuotientKind::Projective
                                            : QuotientKind::Grassmannian;
  return label;
}

}  // namespace

std::string export_json(const CastlingTree& tree) {
  json doc;
  doc["params"]["l"] = int_to_json(tree.config.params.l);
  doc["params"]["alpha"] = int_to_json(tree.config.params.alpha);
  json nodes = json::array();
  for (const TreeNode& node : tree.nodes) {
    json n;
    n["tuple"] = tuple_to_json(node.tuple);
    n["depth"] = node.depth;
    n["fiber_dim"] = int_to_json(node.fiber_dimension);
    n["parent"] =
        node.has_parent() ? tuple_to_json(node.parent_tuple()) : json(nullptr);
    json quotients = json::array();
    for (const GeometryLabel& label : node.quotients) {
      quotients.push_back(label_to_json(label));
    }
    n["quotients"] = std::move(quotients);
    nodes.push_back(std::move(n));
  }
  doc["nodes"] = std::move(nodes);
  return doc.dump(2) + "\n";
}

CastlingTree tree_from_json(const std::string& text) {
  const json doc = json::parse(text);
  CastlingParams params(int_from_json(doc.at("params").at("l")),
                        int_from_json(doc.at("params").at("alpha")));
  EnumerationConfig config{params};
  config.max_entry = params.alpha;

  CastlingTree tree{config, {}};
  bool any_quotients = false;
  for (const json& n : doc.at("nodes")) {
    TreeNode node;
    node.tuple = tuple_from_json(n.at("tuple"));
    node.depth = n.at("depth").get<std::size_t>();
    node.fiber_dimension = int_from_json(n.at("fiber_dim"));
    if (!n.at("parent").is_null()) {
      CastlingTuple parent = tuple_from_json(n.at("parent"));
      // Recover the move from parent to child: the new value is the unique
      // entry of the child exceeding the parent's maximum.
      CastlingMove move;
      move.before = parent;
      move.after = node.tuple;
      move.new_value = node.tuple.max_or_one();
      move.kind = node.tuple.length() > parent.length()
                      ? castling::MoveKind::Append
                      : castling::MoveKind::AtPosition;
      node.parent_move = std::move(move);
    }
    for (const json& q : n.at("quotients")) {
      node.quotients.push_back(label_from_json(params, q));
      any_quotients = true;
    }
    if (!node.tuple.empty()) {
      const Int& top = node.tuple.entries().back();
      if (top > tree.config.max_entry) tree.config.max_entry = top;
    }
    tree.config.max_depth = std::max(tree.config.max_depth, node.depth);
    tree.nodes.push_back(std::move(node));
  }
  tree.config.include_quotients = any_quotients;
  return tree;
}

std::string export_csv(const CastlingTree& tree) {
  std::ostringstream os;
  os << "depth,tuple,fiber_dim,quotients\n";
  for (const TreeNode& node : tree.nodes) {
    os << node.depth << ',' << node.tuple.label() << ','
       << node.fiber_dimension << ',';
    for (std::size_t i = 0; i < node.quotients.size(); ++i) {
      const GeometryLabel& label = node.quotients[i];
      if (i > 0) os << '|';
      os << label.remaining.label() << ':';
      if (label.kind == QuotientKind::Projective) {
        os << "projective";
      } else {
        os << label.gl_string();
      }
    }
    os << '\n';
  }
  return os.str();
}

std::string export_dot(const CastlingTree& tree) {
  std::ostringstream os;
  os << "digraph castling {\n";
  os << "  node [shape=plaintext];\n";
  for (const TreeNode& node : tree.nodes) {
    const std::string id = node.tuple.label();
    os << "  \"" << id << "\" [label=<<u>" << id
       << "</u>> fontcolor=red];\n";
  }
  for (const TreeNode& node : tree.nodes) {
    if (!node.has_parent()) continue;
    os << "  \"" << node.parent_tuple().label() << "\" -> \""
       << node.tuple.label() << "\";\n";
  }
  std::map<std::string, bool> declared;
  for (const TreeNode& node : tree.nodes) {
    for (const GeometryLabel& label : node.quotients) {
      if (label.kind == QuotientKind::Projective) {
        // The remaining tuple is itself a solution on the descent path.
        if (tree.find(label.remaining) != nullptr) {
          os << "  \"" << node.tuple.label() << "\" -> \""
             << label.remaining.label() << "\" [style=dashed color=blue];\n";
          continue;
        }
      }
      const std::string id = "q:" + label.remaining.label() + ":" +
                             to_string(label.beta) + ":" +
                             to_string(label.alpha);
      if (!declared[id]) {
        declared[id] = true;
        os << "  \"" << id << "\" [label=<<u>" << label.remaining.label()
           << "</u> [" << label.gl_string() << "]> fontcolor=blue];\n";
      }
      os << "  \"" << node.tuple.label() << "\" -> \"" << id
         << "\" [style=dashed color=blue];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace castellan::tree
