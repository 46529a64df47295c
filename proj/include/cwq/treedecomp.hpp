#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cwq/graph.hpp"

namespace cwq {

using Bag = std::set<VertexId>;
using TreeNode = std::size_t;

// Tree over nodes 0..bags.size()-1 with one bag per node. Bags may be empty.
struct TreeDecomposition {
  std::vector<Bag> bags;
  std::vector<std::pair<TreeNode, TreeNode>> edges;

  std::size_t node_count() const noexcept { return bags.size(); }
  friend bool operator==(const TreeDecomposition&, const TreeDecomposition&) = default;
};

// |E| = |V| - 1, connected, no loops or repeated edges, at least one node.
bool is_tree(const TreeDecomposition& td);

// Throws InputError on an empty decomposition.
int width(const TreeDecomposition& td);

struct TdReport {
  bool td1 = true;  // every vertex occupies a nonempty connected set of nodes
  bool td2 = true;  // every edge sits in some bag
  std::string td1_witness;
  std::string td2_witness;
  int width = -1;

  bool valid() const noexcept { return td1 && td2; }
};

// Throws InputError when td is not a tree or a bag holds a non-vertex.
TdReport validate_td(const Graph& g, const TreeDecomposition& td);

// Nodes whose predicate holds induce a nonempty connected subtree.
// Assumes td is a tree.
template <class Pred>
bool nodes_form_subtree(const TreeDecomposition& td, Pred&& holds);

// --- exact oracles -------------------------------------------------------

struct TreewidthOptions {
  // Largest kernel handed to the exhaustive search (after exact reductions).
  std::size_t cap = 12;
  // Apply the simplicial / almost-simplicial reduction rules first.
  bool reduce = true;
};

// Reads CWQ_ORACLE_CAP if set, else `fallback`.
std::size_t oracle_cap_from_env(std::size_t fallback);

// Exact treewidth. Throws CapExceeded if the irreducible kernel is larger than
// options.cap, InputError on the empty graph.
int brute_treewidth(const Graph& g, const TreewidthOptions& options = {});

struct MinorOptions {
  std::size_t max_pattern = 8;   // |V(h)|
  std::size_t max_host = 64;     // |V(g)| before reduction
  std::size_t max_kernel = 40;   // |V(g)| after reduction
  std::uint64_t max_steps = 50'000'000;
};

// Branch sets realising h as a minor of g, keyed by h-vertex.
using BranchSets = std::map<VertexId, VertexSet>;

// Exhaustive search for an h-minor; returns a model of it in g if one exists.
// Throws CapExceeded past any configured limit.
std::optional<BranchSets> find_minor(const Graph& g, const Graph& h, const MinorOptions& options = {});

inline bool has_minor(const Graph& g, const Graph& h, const MinorOptions& options = {}) {
  return find_minor(g, h, options).has_value();
}

// Checks disjoint, connected, nonempty branch sets with every h-edge realised.
bool is_minor_model(const Graph& g, const Graph& h, const BranchSets& model, std::string* why = nullptr);

// --- template implementation ---------------------------------------------

template <class Pred>
bool nodes_form_subtree(const TreeDecomposition& td, Pred&& holds) {
  const std::size_t n = td.node_count();
  std::vector<bool> member(n, false);
  std::size_t count = 0;
  for (TreeNode t = 0; t < n; ++t) {
    if (holds(t)) {
      member[t] = true;
      ++count;
    }
  }
  if (count == 0) return false;
  std::vector<std::vector<TreeNode>> adj(n);
  for (auto [a, b] : td.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  TreeNode start = 0;
  while (!member[start]) ++start;
  std::vector<bool> seen(n, false);
  std::vector<TreeNode> stack{start};
  seen[start] = true;
  std::size_t reached = 0;
  while (!stack.empty()) {
    TreeNode t = stack.back();
    stack.pop_back();
    ++reached;
    for (TreeNode w : adj[t]) {
      if (member[w] && !seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return reached == count;
}

}  // namespace cwq
