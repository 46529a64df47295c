#include "cwq/graph.hpp"

#include <algorithm>
#include <deque>

#include "cwq/errors.hpp"

namespace cwq {

std::size_t Distance::value() const {
  if (!value_) throw InputError("distance is INFINITE");
  return *value_;
}

std::string Distance::to_string() const { return value_ ? std::to_string(*value_) : "INFINITE"; }

Graph::Graph(std::vector<VertexId> vertices, const std::vector<Edge>& edges) : vertices_(std::move(vertices)) {
  std::sort(vertices_.begin(), vertices_.end());
  if (auto dup = std::adjacent_find(vertices_.begin(), vertices_.end()); dup != vertices_.end()) {
    throw InputError("duplicate vertex id '" + *dup + "'");
  }
  adjacency_.resize(vertices_.size());
  for (const auto& [u, v] : edges) {
    if (u == v) throw InputError("loop at vertex '" + u + "'");
    auto a = find(u);
    auto b = find(v);
    if (!a) throw InputError("edge endpoint '" + u + "' is not a vertex");
    if (!b) throw InputError("edge endpoint '" + v + "' is not a vertex");
    adjacency_[*a].push_back(*b);
    adjacency_[*b].push_back(*a);
  }
  for (auto& nbrs : adjacency_) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    edge_count_ += nbrs.size();
  }
  edge_count_ /= 2;
}

std::optional<std::size_t> Graph::find(std::string_view v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_.begin());
}

bool Graph::has_vertex(std::string_view v) const { return find(v).has_value(); }

std::size_t Graph::index_of(std::string_view v) const {
  if (auto i = find(v)) return *i;
  throw InputError("unknown vertex '" + std::string(v) + "'");
}

bool Graph::adjacent(std::size_t a, std::size_t b) const {
  const auto& nbrs = adjacency_.at(a);
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

bool Graph::adjacent(std::string_view a, std::string_view b) const { return adjacent(index_of(a), index_of(b)); }

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (std::size_t u = 0; u < vertices_.size(); ++u) {
    for (std::size_t v : adjacency_[u]) {
      if (u < v) out.emplace_back(vertices_[u], vertices_[v]);
    }
  }
  return out;
}

Graph Graph::induced(const VertexSet& keep) const {
  std::vector<VertexId> vs;
  for (const auto& v : keep) {
    index_of(v);
    vs.push_back(v);
  }
  std::vector<Edge> es;
  for (auto& e : edges()) {
    if (keep.count(e.first) && keep.count(e.second)) es.push_back(std::move(e));
  }
  return Graph(std::move(vs), es);
}

ColoredGraph::ColoredGraph(Graph g, int palette, std::map<VertexId, Color> colouring)
    : graph(std::move(g)), k(palette), color(std::move(colouring)) {
  if (k < 1) throw InputError("palette size must be positive");
  if (color.size() != graph.vertex_count()) throw InputError("colouring is not total on the vertex set");
  for (const auto& [v, c] : color) {
    if (!graph.has_vertex(v)) throw InputError("coloured vertex '" + v + "' is not in the graph");
    if (c < 1 || c > k) throw InputError("colour " + std::to_string(c) + " of '" + v + "' is outside 1.." + std::to_string(k));
  }
}

std::set<Color> ColoredGraph::used_colors() const {
  std::set<Color> used;
  for (const auto& [v, c] : color) used.insert(c);
  return used;
}

Partition::Partition(std::map<PartId, VertexSet> parts) : parts_(std::move(parts)) {
  std::set<VertexId> seen;
  for (const auto& [id, members] : parts_) {
    if (members.empty()) throw InputError("part '" + id + "' is empty");
    for (const auto& v : members) {
      if (!seen.insert(v).second) throw InputError("vertex '" + v + "' lies in two parts");
    }
  }
}

Partition Partition::singletons(const Graph& g) {
  std::map<PartId, VertexSet> parts;
  for (const auto& v : g.vertices()) parts.emplace(v, VertexSet{v});
  return Partition(std::move(parts));
}

Partition Partition::whole(const Graph& g, PartId id) {
  if (g.empty()) throw InputError("cannot form a one-part partition of the empty graph");
  return Partition({{std::move(id), VertexSet(g.vertices().begin(), g.vertices().end())}});
}

const VertexSet& Partition::part(const PartId& id) const {
  auto it = parts_.find(id);
  if (it == parts_.end()) throw InputError("unknown part '" + id + "'");
  return it->second;
}

void Partition::validate_for(const Graph& g) const {
  std::size_t covered = 0;
  for (const auto& [id, members] : parts_) {
    for (const auto& v : members) {
      if (!g.has_vertex(v)) throw InputError("part '" + id + "' contains non-vertex '" + v + "'");
    }
    covered += members.size();
  }
  if (covered != g.vertex_count()) throw InputError("partition does not cover every vertex");
}

std::map<VertexId, PartId> Partition::owners() const {
  std::map<VertexId, PartId> out;
  for (const auto& [id, members] : parts_) {
    for (const auto& v : members) out.emplace(v, id);
  }
  return out;
}

std::vector<Distance> bfs_distances(const Graph& g, std::span<const std::size_t> sources) {
  std::vector<Distance> dist(g.vertex_count(), Distance::infinite());
  std::deque<std::size_t> queue;
  for (std::size_t s : sources) {
    if (dist.at(s).is_infinite()) {
      dist[s] = Distance(0);
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    const std::size_t next = dist[u].value() + 1;
    for (std::size_t w : g.neighbors(u)) {
      if (dist[w].is_infinite()) {
        dist[w] = Distance(next);
        queue.push_back(w);
      }
    }
  }
  return dist;
}

DistanceMatrix::DistanceMatrix(const Graph& g) : n_(g.vertex_count()), rows_(n_ * n_, Distance::infinite()) {
  for (std::size_t s = 0; s < n_; ++s) {
    const std::size_t src[] = {s};
    auto row = bfs_distances(g, src);
    std::copy(row.begin(), row.end(), rows_.begin() + static_cast<std::ptrdiff_t>(s * n_));
  }
}

namespace {

std::vector<std::size_t> indices_of(const Graph& g, const VertexSet& s) {
  std::vector<std::size_t> out;
  out.reserve(s.size());
  for (const auto& v : s) out.push_back(g.index_of(v));
  return out;
}

}  // namespace

Distance distance(const Graph& g, std::string_view u, std::string_view v) {
  const std::size_t src[] = {g.index_of(u)};
  const std::size_t dst = g.index_of(v);
  return bfs_distances(g, src)[dst];
}

Distance set_distance(const Graph& g, const VertexSet& s, const VertexSet& t) {
  if (s.empty() || t.empty()) throw InputError("set_distance needs nonempty sets");
  auto sources = indices_of(g, s);
  auto targets = indices_of(g, t);
  auto dist = bfs_distances(g, sources);
  Distance best = Distance::infinite();
  for (std::size_t v : targets) best = std::min(best, dist[v]);
  return best;
}

Distance weak_diameter(const Graph& g, const VertexSet& s) {
  if (s.empty()) throw InputError("weak_diameter needs a nonempty set");
  auto members = indices_of(g, s);
  Distance worst(0);
  for (std::size_t u : members) {
    const std::size_t src[] = {u};
    auto dist = bfs_distances(g, src);
    for (std::size_t v : members) worst = std::max(worst, dist[v]);
    if (worst.is_infinite()) break;
  }
  return worst;
}

VertexSet closed_neighborhood(const Graph& g, const VertexSet& s, double radius) {
  if (radius < 0) throw InputError("neighbourhood radius must be nonnegative");
  auto dist = bfs_distances(g, indices_of(g, s));
  VertexSet out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (dist[v].within(radius)) out.insert(g.id(v));
  }
  return out;
}

std::optional<VertexId> dominating_vertex(const Graph& g, const VertexSet& s) {
  auto members = indices_of(g, s);
  for (std::size_t w = 0; w < g.vertex_count(); ++w) {
    bool covers = std::all_of(members.begin(), members.end(),
                              [&](std::size_t m) { return m == w || g.adjacent(w, m); });
    if (covers) return g.id(w);
  }
  return std::nullopt;
}

Quotient quotient(const Graph& g, const Partition& p) {
  p.validate_for(g);
  Quotient q;
  q.projection = p.owners();
  std::vector<VertexId> parts;
  for (const auto& [id, members] : p.parts()) parts.push_back(id);
  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges()) {
    const auto& pu = q.projection.at(u);
    const auto& pv = q.projection.at(v);
    if (pu != pv) edges.emplace_back(pu, pv);
  }
  q.graph = Graph(std::move(parts), edges);
  return q;
}

bool is_monochromatic(const ColoredGraph& cg, const Partition& p) {
  p.validate_for(cg.graph);
  for (const auto& [id, members] : p.parts()) {
    const Color first = cg.color.at(*members.begin());
    for (const auto& v : members) {
      if (cg.color.at(v) != first) return false;
    }
  }
  return true;
}

std::map<PartId, Color> induced_coloring(const ColoredGraph& cg, const Partition& p) {
  if (!is_monochromatic(cg, p)) throw ContractError("induced colouring needs a monochromatic partition");
  std::map<PartId, Color> out;
  for (const auto& [id, members] : p.parts()) out.emplace(id, cg.color.at(*members.begin()));
  return out;
}

std::vector<VertexSet> connected_components(const Graph& g) {
  std::vector<VertexSet> out;
  std::vector<bool> seen(g.vertex_count(), false);
  for (std::size_t s = 0; s < g.vertex_count(); ++s) {
    if (seen[s]) continue;
    VertexSet comp;
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      comp.insert(g.id(u));
      for (std::size_t w : g.neighbors(u)) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

bool is_connected_subset(const Graph& g, const VertexSet& s) {
  if (s.empty()) return false;
  auto members = indices_of(g, s);
  std::vector<bool> inside(g.vertex_count(), false);
  for (std::size_t m : members) inside[m] = true;
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<std::size_t> stack{members.front()};
  seen[members.front()] = true;
  std::size_t reached = 0;
  while (!stack.empty()) {
    std::size_t u = stack.back();
    stack.pop_back();
    ++reached;
    for (std::size_t w : g.neighbors(u)) {
      if (inside[w] && !seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return reached == members.size();
}

}  // namespace cwq
