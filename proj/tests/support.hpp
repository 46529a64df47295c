// Independent reference implementations used as test oracles. They share no
// code with the library beyond the Graph container itself.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cwq/decomposer.hpp"
#include "cwq/graph.hpp"

namespace cwq::testing {

inline Graph make_graph(std::vector<std::string> vertices, std::vector<Edge> edges) {
  return Graph(std::move(vertices), edges);
}

inline Graph path_graph(std::size_t n, const std::string& prefix = "p") {
  std::vector<std::string> vs;
  std::vector<Edge> es;
  for (std::size_t i = 0; i < n; ++i) {
    vs.push_back(prefix + std::to_string(i));
    if (i > 0) es.emplace_back(vs[i - 1], vs[i]);
  }
  return Graph(vs, es);
}

inline Graph cycle_graph(std::size_t n, const std::string& prefix = "v") {
  std::vector<std::string> vs;
  std::vector<Edge> es;
  for (std::size_t i = 0; i < n; ++i) vs.push_back(prefix + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) es.emplace_back(vs[i], vs[(i + 1) % n]);
  return Graph(vs, es);
}

inline Graph clique_graph(std::size_t n, const std::string& prefix = "k") {
  std::vector<std::string> vs;
  std::vector<Edge> es;
  for (std::size_t i = 0; i < n; ++i) {
    vs.push_back(prefix + std::to_string(i));
    for (std::size_t j = 0; j < i; ++j) es.emplace_back(vs[j], vs[i]);
  }
  return Graph(vs, es);
}

inline Graph grid_graph(std::size_t rows, std::size_t cols) {
  std::vector<std::string> vs;
  std::vector<Edge> es;
  auto name = [](std::size_t r, std::size_t c) { return "g" + std::to_string(r) + "_" + std::to_string(c); };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      vs.push_back(name(r, c));
      if (r > 0) es.emplace_back(name(r - 1, c), name(r, c));
      if (c > 0) es.emplace_back(name(r, c - 1), name(r, c));
    }
  }
  return Graph(vs, es);
}

// Erdos-Renyi graph on vertices "x0".."x<n-1>".
inline Graph random_graph(std::mt19937_64& rng, std::size_t n, double p) {
  std::vector<std::string> vs;
  std::vector<Edge> es;
  std::bernoulli_distribution coin(p);
  for (std::size_t i = 0; i < n; ++i) vs.push_back("x" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (coin(rng)) es.emplace_back(vs[i], vs[j]);
    }
  }
  return Graph(vs, es);
}

// Adjacency matrix by vertex index, read through the public edge list only.
inline std::vector<std::vector<bool>> adjacency_matrix(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<bool>> a(n, std::vector<bool>(n, false));
  for (const auto& [u, v] : g.edges()) {
    const auto i = static_cast<std::size_t>(std::find(g.vertices().begin(), g.vertices().end(), u) - g.vertices().begin());
    const auto j = static_cast<std::size_t>(std::find(g.vertices().begin(), g.vertices().end(), v) - g.vertices().begin());
    a[i][j] = a[j][i] = true;
  }
  return a;
}

// Floyd-Warshall; nullopt = unreachable.
inline std::vector<std::vector<std::optional<std::size_t>>> floyd_warshall(const Graph& g) {
  const std::size_t n = g.vertex_count();
  const auto a = adjacency_matrix(g);
  std::vector<std::vector<std::optional<std::size_t>>> d(n, std::vector<std::optional<std::size_t>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (a[i][j]) d[i][j] = 1;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (d[i][k] && d[k][j] && (!d[i][j] || *d[i][k] + *d[k][j] < *d[i][j])) d[i][j] = *d[i][k] + *d[k][j];
      }
    }
  }
  return d;
}

// Treewidth as the minimum over all elimination orderings of the largest
// eliminated degree. Factorial; keep n <= 8.
inline int permutation_treewidth(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return -1;
  const auto base = adjacency_matrix(g);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  int best = static_cast<int>(n) - 1;
  do {
    auto a = base;
    std::vector<bool> gone(n, false);
    int worst = 0;
    for (std::size_t v : order) {
      std::vector<std::size_t> nb;
      for (std::size_t w = 0; w < n; ++w) {
        if (!gone[w] && w != v && a[v][w]) nb.push_back(w);
      }
      worst = std::max(worst, static_cast<int>(nb.size()));
      if (worst >= best) break;
      for (std::size_t x : nb) {
        for (std::size_t y : nb) {
          if (x != y) a[x][y] = true;
        }
      }
      gone[v] = true;
    }
    best = std::min(best, worst);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

// Tries every assignment of g-vertices to h-vertices or to nothing.
// (|h| + 1)^|g| candidates; keep it small.
inline bool brute_has_minor(const Graph& g, const Graph& h) {
  const std::size_t n = g.vertex_count();
  const std::size_t p = h.vertex_count();
  if (p == 0) return true;
  const auto ga = adjacency_matrix(g);
  const auto ha = adjacency_matrix(h);
  std::vector<std::size_t> label(n, 0);  // 0 = unused, else h index + 1
  auto connected = [&](std::size_t u) {
    std::vector<std::size_t> members;
    for (std::size_t x = 0; x < n; ++x) {
      if (label[x] == u + 1) members.push_back(x);
    }
    if (members.empty()) return false;
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{members[0]};
    seen[members[0]] = true;
    std::size_t count = 0;
    while (!stack.empty()) {
      std::size_t x = stack.back();
      stack.pop_back();
      ++count;
      for (std::size_t y = 0; y < n; ++y) {
        if (ga[x][y] && !seen[y] && label[y] == u + 1) {
          seen[y] = true;
          stack.push_back(y);
        }
      }
    }
    return count == members.size();
  };
  while (true) {
    bool ok = true;
    for (std::size_t u = 0; u < p && ok; ++u) ok = connected(u);
    for (std::size_t u = 0; u < p && ok; ++u) {
      for (std::size_t w = u + 1; w < p && ok; ++w) {
        if (!ha[u][w]) continue;
        bool touch = false;
        for (std::size_t x = 0; x < n && !touch; ++x) {
          for (std::size_t y = 0; y < n && !touch; ++y) {
            touch = label[x] == u + 1 && label[y] == w + 1 && ga[x][y];
          }
        }
        ok = touch;
      }
    }
    if (ok) return true;
    std::size_t pos = 0;
    while (pos < n && label[pos] == p) label[pos++] = 0;
    if (pos == n) return false;
    ++label[pos];
  }
}

// Naive restatement of every DecompositionResult invariant; returns the names
// of the violated ones.
inline std::set<std::string> naive_violations(const ColoredGraph& g, const DecompositionResult& r) {
  std::set<std::string> bad;
  const auto& parts = r.partition.parts();
  const std::size_t nodes = r.tree.bags.size();
  // Partition covers V exactly once.
  std::map<VertexId, int> hits;
  for (const auto& [id, members] : parts) {
    if (members.empty()) bad.insert("partition");
    for (const auto& v : members) ++hits[v];
  }
  for (const auto& v : g.graph.vertices()) {
    if (hits[v] != 1) bad.insert("partition");
  }
  if (hits.size() != g.graph.vertex_count()) bad.insert("partition");
  auto owner = [&](const VertexId& v) -> std::string {
    for (const auto& [id, members] : parts) {
      if (members.count(v)) return id;
    }
    return {};
  };
  // Colours.
  for (const auto& [id, members] : parts) {
    std::set<Color> cs;
    for (const auto& v : members) cs.insert(g.color.at(v));
    if (cs.size() != 1) bad.insert("monochromatic");
    auto it = r.part_colors.find(id);
    if (it == r.part_colors.end() || !cs.count(it->second)) bad.insert("part_colors");
  }
  if (r.part_colors.size() != parts.size()) bad.insert("part_colors");
  // Domination by scanning every candidate centre.
  const auto a = adjacency_matrix(g.graph);
  const auto& vs = g.graph.vertices();
  for (const auto& [id, members] : parts) {
    bool found = false;
    for (std::size_t c = 0; c < vs.size() && !found; ++c) {
      found = std::all_of(members.begin(), members.end(), [&](const VertexId& v) {
        const auto i = static_cast<std::size_t>(std::find(vs.begin(), vs.end(), v) - vs.begin());
        return i == c || a[i][c];
      });
    }
    if (!found) bad.insert("dominated");
  }
  // Tree: n-1 edges and connected.
  std::vector<std::vector<std::size_t>> tadj(nodes);
  bool tree = nodes > 0 && r.tree.edges.size() + 1 == nodes;
  for (auto [x, y] : r.tree.edges) {
    if (x >= nodes || y >= nodes || x == y) {
      tree = false;
      continue;
    }
    tadj[x].push_back(y);
    tadj[y].push_back(x);
  }
  auto connected_among = [&](const std::vector<bool>& in) {
    std::size_t start = nodes;
    std::size_t count = 0;
    for (std::size_t t = 0; t < nodes; ++t) {
      if (in[t]) {
        ++count;
        if (start == nodes) start = t;
      }
    }
    if (count == 0) return false;
    std::vector<bool> seen(nodes, false);
    std::vector<std::size_t> stack{start};
    seen[start] = true;
    std::size_t reached = 0;
    while (!stack.empty()) {
      std::size_t t = stack.back();
      stack.pop_back();
      ++reached;
      for (std::size_t w : tadj[t]) {
        if (in[w] && !seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    return reached == count;
  };
  if (tree) tree = connected_among(std::vector<bool>(nodes, true));
  if (!tree) bad.insert("tree");
  // TD1 / TD2 over the quotient.
  if (tree && !bad.count("partition")) {
    for (const auto& [id, members] : parts) {
      std::vector<bool> in(nodes);
      for (std::size_t t = 0; t < nodes; ++t) in[t] = r.tree.bags[t].count(id) > 0;
      if (!connected_among(in)) bad.insert("td1");
    }
    for (const auto& [u, v] : g.graph.edges()) {
      const auto pu = owner(u);
      const auto pv = owner(v);
      if (pu == pv) continue;
      bool hosted = false;
      for (const auto& bag : r.tree.bags) hosted = hosted || (bag.count(pu) && bag.count(pv));
      if (!hosted) bad.insert("td2");
    }
    for (const auto& bag : r.tree.bags) {
      for (const auto& p : bag) {
        if (!parts.count(p)) bad.insert("td1");
      }
    }
  }
  std::size_t biggest = 0;
  for (const auto& bag : r.tree.bags) biggest = std::max(biggest, bag.size());
  if (nodes == 0 || static_cast<int>(biggest) > g.k) bad.insert("width");
  // Rainbow and colour subtrees use actual vertex colours.
  auto part_color = [&](const PartId& p) -> std::optional<Color> {
    auto it = parts.find(p);
    if (it == parts.end()) return std::nullopt;
    return g.color.at(*it->second.begin());
  };
  std::set<Color> used;
  for (const auto& [v, c] : g.color) used.insert(c);
  if (r.rainbow_node >= nodes) {
    bad.insert("rainbow");
  } else {
    for (Color c : used) {
      bool present = false;
      for (const auto& p : r.tree.bags[r.rainbow_node]) present = present || part_color(p) == c;
      if (!present) bad.insert("rainbow");
    }
  }
  if (tree) {
    for (Color c : used) {
      std::vector<bool> in(nodes);
      for (std::size_t t = 0; t < nodes; ++t) {
        in[t] = std::any_of(r.tree.bags[t].begin(), r.tree.bags[t].end(),
                            [&](const PartId& p) { return part_color(p) == c; });
      }
      if (!connected_among(in)) bad.insert("color_subtrees");
    }
  }
  return bad;
}

}  // namespace cwq::testing
