#pragma once

#include <map>
#include <set>
#include <vector>

#include "cwq/graph.hpp"

namespace cwq::detail {

// Bottom-up evaluation state. Subtrees of an expression are vertex-disjoint,
// so a single adjacency table serves all of them; a Sub only records which
// vertices of its subtree carry which colour.
class Evaluation {
 public:
  struct Sub {
    std::map<Color, std::vector<std::size_t>> by_color;  // only nonempty classes
    std::size_t size = 0;

    bool uses(Color c) const { return by_color.count(c) != 0; }
  };

  Sub leaf(const VertexId& id, Color c) {
    ids_.push_back(id);
    color_.push_back(c);
    adjacency_.emplace_back();
    Sub s;
    s.by_color[c].push_back(ids_.size() - 1);
    s.size = 1;
    return s;
  }

  static Sub unite(Sub a, Sub b) {
    if (a.size < b.size) std::swap(a, b);
    for (auto& [c, vs] : b.by_color) {
      auto& dst = a.by_color[c];
      dst.insert(dst.end(), vs.begin(), vs.end());
    }
    a.size += b.size;
    return a;
  }

  void recolor(Sub& s, Color from, Color to) {
    auto it = s.by_color.find(from);
    if (it == s.by_color.end()) return;
    std::vector<std::size_t> moved = std::move(it->second);
    s.by_color.erase(it);
    for (std::size_t v : moved) color_[v] = to;
    auto& dst = s.by_color[to];
    dst.insert(dst.end(), moved.begin(), moved.end());
  }

  // Returns the number of edges that were not already present.
  std::size_t join(const Sub& s, Color a, Color b) {
    auto ia = s.by_color.find(a);
    auto ib = s.by_color.find(b);
    if (ia == s.by_color.end() || ib == s.by_color.end()) return 0;
    std::size_t added = 0;
    for (std::size_t u : ia->second) {
      for (std::size_t v : ib->second) {
        if (adjacency_[u].insert(v).second) {
          adjacency_[v].insert(u);
          ++added;
        }
      }
    }
    return added;
  }

  // Pure renaming of colour `from` to an unused colour `to` (and vice versa).
  void swap_colors(Sub& s, Color a, Color b) {
    auto ia = s.by_color.find(a);
    auto ib = s.by_color.find(b);
    std::vector<std::size_t> va, vb;
    if (ia != s.by_color.end()) va = std::move(ia->second);
    if (ib != s.by_color.end()) vb = std::move(ib->second);
    s.by_color.erase(a);
    s.by_color.erase(b);
    for (std::size_t v : va) color_[v] = b;
    for (std::size_t v : vb) color_[v] = a;
    if (!va.empty()) s.by_color[b] = std::move(va);
    if (!vb.empty()) s.by_color[a] = std::move(vb);
  }

  const std::vector<VertexId>& ids() const { return ids_; }

  // Throws InputError on duplicate ids or colours outside 1..k.
  ColoredGraph finish(int k) const {
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < ids_.size(); ++u) {
      for (std::size_t v : adjacency_[u]) {
        if (u < v) edges.emplace_back(ids_[u], ids_[v]);
      }
    }
    std::map<VertexId, Color> colouring;
    for (std::size_t v = 0; v < ids_.size(); ++v) colouring.emplace(ids_[v], color_[v]);
    return ColoredGraph(Graph(ids_, edges), k, std::move(colouring));
  }

 private:
  std::vector<VertexId> ids_;
  std::vector<Color> color_;
  std::vector<std::set<std::size_t>> adjacency_;
};

}  // namespace cwq::detail
