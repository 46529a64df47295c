#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cwq/expr.hpp"
#include "cwq/graph.hpp"
#include "cwq/treedecomp.hpp"

namespace cwq {

// Monochromatic dominated partition of the evaluated graph together with a
// tree decomposition of its quotient. Bags hold part ids.
//
// Invariants (checked by verify_result):
//   * every part is monochromatic and dominated in G;
//   * `tree` is a tree decomposition of G / partition of width <= k - 1;
//   * the bag at `rainbow_node` meets every colour in use;
//   * for every used colour, the nodes whose bags contain a part of that
//     colour induce a nonempty subtree.
struct DecompositionResult {
  int k = 1;
  Partition partition;
  std::map<PartId, Color> part_colors;
  TreeDecomposition tree;
  TreeNode rainbow_node = 0;
  // Audit trail: node created for a union -> (left rainbow node, right rainbow node).
  std::map<TreeNode, std::pair<TreeNode, TreeNode>> union_children;

  friend bool operator==(const DecompositionResult&, const DecompositionResult&) = default;
};

// Structural recursion over a strict expression (explicit stack).
// Leaf parts are named after their vertex; a part formed by a join merging
// several same-coloured parts is named "merge(<colour>,<n>)".
// Throws ContractError if the expression is not strict.
DecompositionResult decompose(const CwExpr& e);

struct PropertyCheck {
  std::string name;
  bool passed = true;
  std::string witness;
};

struct VerificationReport {
  std::vector<PropertyCheck> checks;

  bool all_passed() const;
  const PropertyCheck& at(const std::string& name) const;
};

// Independent re-check of every DecompositionResult invariant against g,
// recomputing colours, domination and the quotient from scratch.
// Check names: partition, part_colors, monochromatic, dominated, tree, td1,
// td2, width, rainbow, color_subtrees.
VerificationReport verify_result(const ColoredGraph& g, const DecompositionResult& r);

}  // namespace cwq
