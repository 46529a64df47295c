#include "cwq/treedecomp.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>

#include "cwq/errors.hpp"

namespace cwq {

bool is_tree(const TreeDecomposition& td) {
  const std::size_t n = td.node_count();
  if (n == 0 || td.edges.size() != n - 1) return false;
  std::set<std::pair<TreeNode, TreeNode>> seen;
  for (auto [a, b] : td.edges) {
    if (a >= n || b >= n || a == b) return false;
    if (!seen.insert(std::minmax(a, b)).second) return false;
  }
  return nodes_form_subtree(td, [](TreeNode) { return true; });
}

int width(const TreeDecomposition& td) {
  if (td.bags.empty()) throw InputError("width of an empty tree decomposition");
  std::size_t largest = 0;
  for (const auto& bag : td.bags) largest = std::max(largest, bag.size());
  return static_cast<int>(largest) - 1;
}

TdReport validate_td(const Graph& g, const TreeDecomposition& td) {
  if (!is_tree(td)) throw InputError("decomposition tree is not a tree");
  for (TreeNode t = 0; t < td.node_count(); ++t) {
    for (const auto& v : td.bags[t]) {
      if (!g.has_vertex(v)) throw InputError("bag " + std::to_string(t) + " holds non-vertex '" + v + "'");
    }
  }
  TdReport report;
  report.width = width(td);
  for (const auto& v : g.vertices()) {
    bool ok = nodes_form_subtree(td, [&](TreeNode t) { return td.bags[t].count(v) != 0; });
    if (!ok) {
      report.td1 = false;
      report.td1_witness = "vertex '" + v + "' does not occupy a nonempty subtree";
      break;
    }
  }
  for (const auto& [u, v] : g.edges()) {
    bool hosted = std::any_of(td.bags.begin(), td.bags.end(),
                              [&](const Bag& b) { return b.count(u) != 0 && b.count(v) != 0; });
    if (!hosted) {
      report.td2 = false;
      report.td2_witness = "edge " + u + "-" + v + " is in no bag";
      break;
    }
  }
  return report;
}

std::size_t oracle_cap_from_env(std::size_t fallback) {
  if (const char* raw = std::getenv("CWQ_ORACLE_CAP")) {
    char* end = nullptr;
    unsigned long value = std::strtoul(raw, &end, 10);
    if (end != raw && *end == '\0') return static_cast<std::size_t>(value);
  }
  return fallback;
}

namespace {

constexpr std::size_t kHardKernelLimit = 26;

// Mutable adjacency used by the reduction rules.
struct WorkGraph {
  std::vector<std::set<std::size_t>> adj;
  std::vector<bool> alive;

  explicit WorkGraph(const Graph& g) : adj(g.vertex_count()), alive(g.vertex_count(), true) {
    for (std::size_t u = 0; u < g.vertex_count(); ++u) {
      for (std::size_t v : g.neighbors(u)) adj[u].insert(v);
    }
  }

  void remove(std::size_t v) {
    for (std::size_t w : adj[v]) adj[w].erase(v);
    adj[v].clear();
    alive[v] = false;
  }

  bool is_clique(const std::set<std::size_t>& s) const {
    for (auto a = s.begin(); a != s.end(); ++a) {
      for (auto b = std::next(a); b != s.end(); ++b) {
        if (!adj[*a].count(*b)) return false;
      }
    }
    return true;
  }

  std::size_t alive_count() const { return static_cast<std::size_t>(std::count(alive.begin(), alive.end(), true)); }

  // Largest minimum degree over subgraphs; a lower bound on treewidth.
  int degeneracy() const {
    std::vector<std::size_t> deg(adj.size());
    std::vector<bool> gone(adj.size());
    std::size_t left = 0;
    for (std::size_t v = 0; v < adj.size(); ++v) {
      deg[v] = adj[v].size();
      gone[v] = !alive[v];
      if (alive[v]) ++left;
    }
    int best = 0;
    while (left > 0) {
      std::size_t pick = adj.size();
      for (std::size_t v = 0; v < adj.size(); ++v) {
        if (!gone[v] && (pick == adj.size() || deg[v] < deg[pick])) pick = v;
      }
      best = std::max(best, static_cast<int>(deg[pick]));
      gone[pick] = true;
      --left;
      for (std::size_t w : adj[pick]) {
        if (!gone[w]) --deg[w];
      }
    }
    return best;
  }
};

// One pass of the simplicial and almost-simplicial rules. Maintains
// tw(original) = max(low, tw(current)).
bool reduce_once(WorkGraph& w, int& low) {
  for (std::size_t v = 0; v < w.adj.size(); ++v) {
    if (!w.alive[v]) continue;
    const auto& nbrs = w.adj[v];
    if (w.is_clique(nbrs)) {
      low = std::max(low, static_cast<int>(nbrs.size()));
      w.remove(v);
      return true;
    }
    if (static_cast<int>(nbrs.size()) > low) continue;
    for (std::size_t special : nbrs) {
      std::set<std::size_t> rest = nbrs;
      rest.erase(special);
      if (!w.is_clique(rest)) continue;
      // Contract v into `special`.
      for (std::size_t x : rest) {
        w.adj[special].insert(x);
        w.adj[x].insert(special);
      }
      w.remove(v);
      return true;
    }
  }
  return false;
}

int exhaustive_treewidth(const std::vector<std::uint32_t>& adj) {
  const std::size_t m = adj.size();
  const std::uint32_t full = m == 32 ? ~0u : ((1u << m) - 1);
  std::vector<std::int8_t> tw(std::size_t{1} << m, 0);
  tw[0] = -1;
  // Q(S, v): vertices outside S ∪ {v} reachable from v through S.
  auto q_size = [&](std::uint32_t s, std::size_t v) {
    std::uint32_t reach = 1u << v;
    std::uint32_t frontier = reach;
    std::uint32_t nbrs = 0;
    while (frontier) {
      std::uint32_t step = 0;
      for (std::uint32_t f = frontier; f; f &= f - 1) step |= adj[std::countr_zero(f)];
      nbrs |= step;
      frontier = step & s & ~reach;
      reach |= frontier;
    }
    return std::popcount(nbrs & ~s & ~(1u << v) & full);
  };
  for (std::uint32_t s = 1; s <= full && s != 0; ++s) {
    int best = 127;
    for (std::uint32_t bits = s; bits; bits &= bits - 1) {
      std::size_t v = static_cast<std::size_t>(std::countr_zero(bits));
      std::uint32_t rest = s & ~(1u << v);
      best = std::min(best, std::max<int>(tw[rest], q_size(rest, v)));
    }
    tw[s] = static_cast<std::int8_t>(best);
    if (s == full) break;
  }
  return tw[full];
}

}  // namespace

int brute_treewidth(const Graph& g, const TreewidthOptions& options) {
  if (g.empty()) throw InputError("treewidth of the empty graph");
  WorkGraph work(g);
  int low = 0;
  if (options.reduce) {
    low = work.degeneracy();
    for (;;) {
      if (reduce_once(work, low)) continue;
      int bound = work.degeneracy();
      if (bound > low) {
        low = bound;
        continue;
      }
      break;
    }
  }
  std::vector<std::size_t> kernel;
  for (std::size_t v = 0; v < work.adj.size(); ++v) {
    if (work.alive[v]) kernel.push_back(v);
  }
  if (kernel.empty()) return low;
  const std::size_t cap = std::min(options.cap, kHardKernelLimit);
  if (kernel.size() > cap) {
    throw CapExceeded("treewidth oracle: kernel has " + std::to_string(kernel.size()) + " vertices, cap is " +
                      std::to_string(cap));
  }
  std::vector<std::uint32_t> adj(kernel.size(), 0);
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    for (std::size_t j = 0; j < kernel.size(); ++j) {
      if (work.adj[kernel[i]].count(kernel[j])) adj[i] |= 1u << j;
    }
  }
  return std::max(low, exhaustive_treewidth(adj));
}

}  // namespace cwq
