#include <algorithm>
#include <bit>

#include "cwq/errors.hpp"
#include "cwq/treedecomp.hpp"

namespace cwq {

namespace {

using Mask = std::uint64_t;

Mask bit(std::size_t i) { return Mask{1} << i; }

// Host graph after minor-preserving reductions. Each surviving vertex stands
// for the set of original vertices contracted into it.
struct Kernel {
  std::vector<std::set<std::size_t>> adj;
  std::vector<bool> alive;
  std::vector<VertexSet> represents;
};

Kernel reduce_host(const Graph& g, std::size_t min_pattern_degree) {
  Kernel k;
  const std::size_t n = g.vertex_count();
  k.adj.resize(n);
  k.alive.assign(n, true);
  k.represents.resize(n);
  for (std::size_t u = 0; u < n; ++u) {
    k.represents[u].insert(g.id(u));
    for (std::size_t v : g.neighbors(u)) k.adj[u].insert(v);
  }
  auto drop = [&](std::size_t v) {
    for (std::size_t w : k.adj[v]) k.adj[w].erase(v);
    k.adj[v].clear();
    k.alive[v] = false;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (!k.alive[v]) continue;
      const std::size_t deg = k.adj[v].size();
      // A vertex of degree <= 1 can only pad a branch set or host a pattern
      // vertex of degree <= 1.
      if (min_pattern_degree >= 2 && deg <= 1) {
        drop(v);
        changed = true;
      } else if (min_pattern_degree >= 3 && deg == 2) {
        // Suppress: contract v into its smaller neighbour.
        std::size_t a = *k.adj[v].begin();
        std::size_t b = *std::next(k.adj[v].begin());
        k.represents[a].insert(k.represents[v].begin(), k.represents[v].end());
        drop(v);
        k.adj[a].insert(b);
        k.adj[b].insert(a);
        changed = true;
      }
    }
  }
  return k;
}

class MinorSearch {
 public:
  MinorSearch(std::vector<Mask> host_adj, const Graph& h, std::uint64_t max_steps)
      : host_(std::move(host_adj)), h_(h), max_steps_(max_steps) {
    n_ = host_.size();
    all_ = n_ == 64 ? ~Mask{0} : bit(n_) - 1;
    branch_.assign(h.vertex_count(), 0);
    order_ = placement_order(h);
  }

  bool run() { return place(0, 0); }

  const std::vector<Mask>& branch_sets() const { return branch_; }

 private:
  // Highest-degree pattern vertex first, then the vertex with most placed
  // neighbours so adjacency requirements prune early.
  static std::vector<std::size_t> placement_order(const Graph& h) {
    const std::size_t p = h.vertex_count();
    std::vector<std::size_t> order;
    std::vector<bool> placed(p, false);
    for (std::size_t step = 0; step < p; ++step) {
      std::size_t best = p;
      std::size_t best_links = 0;
      for (std::size_t v = 0; v < p; ++v) {
        if (placed[v]) continue;
        std::size_t links = 0;
        for (std::size_t w : h.neighbors(v)) links += placed[w] ? 1 : 0;
        if (best == p || links > best_links ||
            (links == best_links && h.neighbors(v).size() > h.neighbors(best).size())) {
          best = v;
          best_links = links;
        }
      }
      placed[best] = true;
      order.push_back(best);
    }
    return order;
  }

  Mask open_neighborhood(Mask set) const {
    Mask out = 0;
    for (Mask s = set; s; s &= s - 1) out |= host_[std::countr_zero(s)];
    return out & ~set;
  }

  bool place(std::size_t t, Mask used) {
    if (t == order_.size()) return true;
    const std::size_t u = order_[t];
    std::vector<Mask> must_touch;
    for (std::size_t w : h_.neighbors(u)) {
      if (branch_[w] != 0) must_touch.push_back(open_neighborhood(branch_[w]));
    }
    const Mask free = all_ & ~used;
    const std::size_t still_needed = order_.size() - t - 1;
    for (Mask roots = free; roots; roots &= roots - 1) {
      const std::size_t r = static_cast<std::size_t>(std::countr_zero(roots));
      const Mask above = ~(bit(r + 1) - 1) & free;  // candidates with index > r
      auto accept = [&](Mask x) {
        if (++steps_ > max_steps_) throw CapExceeded("minor search exceeded its step budget");
        if (static_cast<std::size_t>(std::popcount(free & ~x)) < still_needed) return false;
        for (Mask need : must_touch) {
          if ((need & x) == 0) return false;
        }
        branch_[u] = x;
        if (place(t + 1, used | x)) return true;
        branch_[u] = 0;
        return false;
      };
      if (enumerate(bit(r), host_[r] & above, above, accept)) return true;
    }
    return false;
  }

  // Connected sets containing `current` grown only through `allowed`; each set
  // is produced once (exclusive-neighbourhood extension).
  template <class Accept>
  bool enumerate(Mask current, Mask extension, Mask allowed, Accept& accept) {
    if (accept(current)) return true;
    const Mask closed = current | open_neighborhood(current);
    while (extension) {
      const std::size_t w = static_cast<std::size_t>(std::countr_zero(extension));
      extension &= extension - 1;
      const Mask exclusive = host_[w] & allowed & ~closed;
      if (enumerate(current | bit(w), extension | exclusive, allowed, accept)) return true;
    }
    return false;
  }

  std::vector<Mask> host_;
  const Graph& h_;
  std::uint64_t max_steps_;
  std::uint64_t steps_ = 0;
  std::size_t n_ = 0;
  Mask all_ = 0;
  std::vector<Mask> branch_;
  std::vector<std::size_t> order_;
};

}  // namespace

std::optional<BranchSets> find_minor(const Graph& g, const Graph& h, const MinorOptions& options) {
  if (h.vertex_count() > options.max_pattern) {
    throw CapExceeded("minor search: pattern has " + std::to_string(h.vertex_count()) + " vertices, cap is " +
                      std::to_string(options.max_pattern));
  }
  if (g.vertex_count() > options.max_host) {
    throw CapExceeded("minor search: host has " + std::to_string(g.vertex_count()) + " vertices, cap is " +
                      std::to_string(options.max_host));
  }
  if (h.empty()) return BranchSets{};

  std::size_t min_degree = g.vertex_count() + h.vertex_count();
  for (std::size_t v = 0; v < h.vertex_count(); ++v) min_degree = std::min(min_degree, h.neighbors(v).size());
  Kernel kernel = reduce_host(g, min_degree);

  std::vector<std::size_t> keep;
  for (std::size_t v = 0; v < kernel.alive.size(); ++v) {
    if (kernel.alive[v]) keep.push_back(v);
  }
  if (keep.size() < h.vertex_count()) return std::nullopt;
  const std::size_t cap = std::min<std::size_t>(options.max_kernel, 63);
  if (keep.size() > cap) {
    throw CapExceeded("minor search: reduced host has " + std::to_string(keep.size()) + " vertices, cap is " +
                      std::to_string(cap));
  }

  std::vector<Mask> adj(keep.size(), 0);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (std::size_t j = 0; j < keep.size(); ++j) {
      if (kernel.adj[keep[i]].count(keep[j])) adj[i] |= bit(j);
    }
  }
  MinorSearch search(std::move(adj), h, options.max_steps);
  if (!search.run()) return std::nullopt;

  BranchSets model;
  for (std::size_t u = 0; u < h.vertex_count(); ++u) {
    VertexSet members;
    for (Mask m = search.branch_sets()[u]; m; m &= m - 1) {
      const auto& rep = kernel.represents[keep[static_cast<std::size_t>(std::countr_zero(m))]];
      members.insert(rep.begin(), rep.end());
    }
    model.emplace(h.id(u), std::move(members));
  }
  return model;
}

bool is_minor_model(const Graph& g, const Graph& h, const BranchSets& model, std::string* why) {
  auto fail = [&](std::string message) {
    if (why) *why = std::move(message);
    return false;
  };
  if (model.size() != h.vertex_count()) return fail("model does not have one branch set per pattern vertex");
  std::set<VertexId> used;
  for (const auto& v : h.vertices()) {
    auto it = model.find(v);
    if (it == model.end()) return fail("no branch set for '" + v + "'");
    const VertexSet& set = it->second;
    if (set.empty()) return fail("branch set of '" + v + "' is empty");
    for (const auto& x : set) {
      if (!g.has_vertex(x)) return fail("branch set of '" + v + "' holds non-vertex '" + x + "'");
      if (!used.insert(x).second) return fail("vertex '" + x + "' lies in two branch sets");
    }
    if (!is_connected_subset(g, set)) return fail("branch set of '" + v + "' is not connected");
  }
  for (const auto& [a, b] : h.edges()) {
    const VertexSet& sa = model.at(a);
    const VertexSet& sb = model.at(b);
    bool touching = false;
    for (const auto& x : sa) {
      std::size_t xi = g.index_of(x);
      for (std::size_t y : g.neighbors(xi)) {
        if (sb.count(g.id(y))) {
          touching = true;
          break;
        }
      }
      if (touching) break;
    }
    if (!touching) return fail("branch sets of '" + a + "' and '" + b + "' are not adjacent");
  }
  return true;
}

}  // namespace cwq
