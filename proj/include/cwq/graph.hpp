#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cwq {

using VertexId = std::string;
using VertexSet = std::set<VertexId>;
using Color = int;
using Edge = std::pair<VertexId, VertexId>;

// Shortest-path length, or the distinguished value INFINITE when no path exists.
class Distance {
 public:
  constexpr Distance() noexcept = default;  // zero
  constexpr explicit Distance(std::size_t value) noexcept : value_(value) {}

  static constexpr Distance infinite() noexcept {
    Distance d;
    d.value_.reset();
    return d;
  }

  constexpr bool is_finite() const noexcept { return value_.has_value(); }
  constexpr bool is_infinite() const noexcept { return !value_.has_value(); }

  // Throws InputError on INFINITE.
  std::size_t value() const;

  std::string to_string() const;

  friend constexpr bool operator==(const Distance&, const Distance&) = default;
  friend constexpr std::strong_ordering operator<=>(const Distance& a, const Distance& b) noexcept {
    if (a.is_infinite() || b.is_infinite()) {
      return a.is_infinite() == b.is_infinite() ? std::strong_ordering::equal
             : a.is_infinite()                  ? std::strong_ordering::greater
                                                : std::strong_ordering::less;
    }
    return *a.value_ <=> *b.value_;
  }

  // INFINITE absorbs.
  friend constexpr Distance operator+(const Distance& a, const Distance& b) noexcept {
    if (a.is_infinite() || b.is_infinite()) return infinite();
    return Distance(*a.value_ + *b.value_);
  }

  // Exact comparison against a real radius; INFINITE is never within range.
  constexpr bool within(double radius) const noexcept {
    return is_finite() && static_cast<double>(*value_) <= radius;
  }

 private:
  std::optional<std::size_t> value_ = std::size_t{0};
};

// Simple undirected graph over string vertex ids. Vertices are kept in
// lexicographic order and every iteration order derives from it.
class Graph {
 public:
  Graph() = default;
  // Throws InputError on duplicate vertices, loops, or unknown endpoints.
  // Repeated edges collapse to one.
  Graph(std::vector<VertexId> vertices, const std::vector<Edge>& edges);

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  bool empty() const noexcept { return vertices_.empty(); }

  const std::vector<VertexId>& vertices() const noexcept { return vertices_; }
  const VertexId& id(std::size_t index) const { return vertices_.at(index); }
  bool has_vertex(std::string_view v) const;
  std::optional<std::size_t> find(std::string_view v) const;
  // Throws InputError for unknown ids.
  std::size_t index_of(std::string_view v) const;

  std::span<const std::size_t> neighbors(std::size_t index) const { return adjacency_.at(index); }
  bool adjacent(std::size_t a, std::size_t b) const;
  bool adjacent(std::string_view a, std::string_view b) const;

  // Canonical edge list: smaller endpoint first, sorted.
  std::vector<Edge> edges() const;

  Graph induced(const VertexSet& keep) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<VertexId> vertices_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::size_t edge_count_ = 0;
};

// A graph with a total colouring on 1..k.
struct ColoredGraph {
  Graph graph;
  int k = 1;
  std::map<VertexId, Color> color;

  ColoredGraph() = default;
  // Throws InputError if the colouring is not total or leaves 1..k.
  ColoredGraph(Graph g, int palette, std::map<VertexId, Color> colouring);

  std::set<Color> used_colors() const;

  friend bool operator==(const ColoredGraph&, const ColoredGraph&) = default;
};

using PartId = std::string;

// Disjoint nonempty vertex sets keyed by stable part ids.
class Partition {
 public:
  Partition() = default;
  // Throws InputError on empty or overlapping parts.
  explicit Partition(std::map<PartId, VertexSet> parts);

  static Partition singletons(const Graph& g);
  static Partition whole(const Graph& g, PartId id = "V");

  const std::map<PartId, VertexSet>& parts() const noexcept { return parts_; }
  std::size_t size() const noexcept { return parts_.size(); }
  const VertexSet& part(const PartId& id) const;

  // Throws InputError unless the parts cover exactly V(g).
  void validate_for(const Graph& g) const;

  // vertex -> owning part
  std::map<VertexId, PartId> owners() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::map<PartId, VertexSet> parts_;
};

// All-pairs BFS distances, indexed by vertex position in the graph.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(const Graph& g);

  Distance operator()(std::size_t a, std::size_t b) const { return rows_[a * n_ + b]; }
  std::size_t size() const noexcept { return n_; }

 private:
  std::size_t n_ = 0;
  std::vector<Distance> rows_;
};

// BFS layers from a set of sources; unreachable vertices are INFINITE.
std::vector<Distance> bfs_distances(const Graph& g, std::span<const std::size_t> sources);

Distance distance(const Graph& g, std::string_view u, std::string_view v);
Distance set_distance(const Graph& g, const VertexSet& s, const VertexSet& t);
// Measured in the whole graph, not in g[s].
Distance weak_diameter(const Graph& g, const VertexSet& s);
VertexSet closed_neighborhood(const Graph& g, const VertexSet& s, double radius);

// Smallest witness v with s ⊆ N[v], if any. v need not lie in s.
std::optional<VertexId> dominating_vertex(const Graph& g, const VertexSet& s);
inline bool is_dominated(const Graph& g, const VertexSet& s) { return dominating_vertex(g, s).has_value(); }

struct Quotient {
  Graph graph;                               // vertices are part ids
  std::map<VertexId, PartId> projection;     // vertex -> part
};

Quotient quotient(const Graph& g, const Partition& p);

bool is_monochromatic(const ColoredGraph& cg, const Partition& p);
// Throws ContractError when some part is not monochromatic.
std::map<PartId, Color> induced_coloring(const ColoredGraph& cg, const Partition& p);

// Connected components in vertex order; each component is sorted.
std::vector<VertexSet> connected_components(const Graph& g);
bool is_connected_subset(const Graph& g, const VertexSet& s);

}  // namespace cwq
