#include "cwq/generators.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "cwq/errors.hpp"

namespace cwq {

namespace {

Edge canonical(const VertexId& u, const VertexId& v) { return u < v ? Edge{u, v} : Edge{v, u}; }

std::string edge_name(const Edge& e) { return e.first + "-" + e.second; }

std::map<Edge, std::size_t> canonical_times(const Graph& base, const std::map<Edge, std::size_t>& times) {
  std::map<Edge, std::size_t> out;
  for (const auto& [e, count] : times) {
    if (!base.has_vertex(e.first) || !base.has_vertex(e.second) || !base.adjacent(e.first, e.second)) {
      throw InputError("subdivision count given for non-edge " + edge_name(e));
    }
    if (!out.emplace(canonical(e.first, e.second), count).second) {
      throw InputError("subdivision count given twice for edge " + edge_name(e));
    }
  }
  for (const auto& e : base.edges()) {
    if (!out.count(e)) throw InputError("no subdivision count for edge " + edge_name(e));
  }
  return out;
}

}  // namespace

SubdivisionSpec SubdivisionSpec::uniform(const Graph& base, std::size_t count) {
  SubdivisionSpec spec{base, {}};
  for (const auto& e : base.edges()) spec.times.emplace(e, count);
  return spec;
}

VertexId subdivision_vertex(const VertexId& u, const VertexId& v, std::size_t i) {
  const Edge e = canonical(u, v);
  return e.first + "-" + e.second + "." + std::to_string(i);
}

std::vector<VertexId> subdivision_path(const VertexId& u, const VertexId& v, std::size_t count) {
  std::vector<VertexId> path{u};
  for (std::size_t d = 1; d <= count; ++d) path.push_back(subdivision_vertex(u, v, u < v ? d : count + 1 - d));
  path.push_back(v);
  return path;
}

Graph subdivide(const SubdivisionSpec& spec) {
  const auto times = canonical_times(spec.base, spec.times);
  std::vector<VertexId> vertices = spec.base.vertices();
  std::vector<Edge> edges;
  for (const auto& [e, count] : times) {
    const auto path = subdivision_path(e.first, e.second, count);
    vertices.insert(vertices.end(), path.begin() + 1, path.end() - 1);
    for (std::size_t s = 0; s + 1 < path.size(); ++s) edges.emplace_back(path[s], path[s + 1]);
  }
  return Graph(std::move(vertices), edges);
}

Graph complete_graph(std::size_t n) {
  std::vector<VertexId> vertices;
  std::vector<Edge> edges;
  for (std::size_t a = 1; a <= n; ++a) {
    vertices.push_back(std::to_string(a));
    for (std::size_t b = a + 1; b <= n; ++b) edges.emplace_back(std::to_string(a), std::to_string(b));
  }
  return Graph(std::move(vertices), edges);
}

// --- paths ---------------------------------------------------------------

CwExpr gen_path(std::span<const VertexId> vertices, int n, Color i, Color j, Color k) {
  if (vertices.size() < 2) throw InputError("a path needs at least two vertices");
  for (Color c : {i, j, k}) {
    if (c < 1 || c > n) throw InputError("colour " + std::to_string(c) + " outside 1.." + std::to_string(n));
  }
  if (j == i) throw InputError("path hypothesis violated: j must differ from i");
  if (j == k) throw InputError("path hypothesis violated: j must differ from k");
  Color spare = 0;
  for (Color c = 1; c <= n && spare == 0; ++c) {
    if (c != i && c != j && c != k) spare = c;
  }
  if (spare == 0) throw InputError("path hypothesis violated: no colour of 1..n outside {i, j, k}");
  if (VertexSet(vertices.begin(), vertices.end()).size() != vertices.size()) {
    throw InputError("path vertices must be distinct");
  }

  // The newest vertex carries a temporary colour, alternating between the
  // spare colour and j so that the last one ends on j. Once its successor is
  // joined on, it is recoloured to k.
  const std::size_t m = vertices.size() - 1;
  auto active = [&](std::size_t t) { return (m - t) % 2 == 0 ? j : spare; };
  // Recolouring into k needs k in use; when x is not coloured k the first
  // interior vertex takes k directly instead.
  const Color first = (i != k && m >= 2) ? k : active(1);

  ExprPtr e = make_join(i, first, make_union(make_leaf(vertices[0], i), make_leaf(vertices[1], first)));
  Color previous = first;
  for (std::size_t t = 2; t <= m; ++t) {
    const Color current = active(t);
    e = make_join(current, previous, make_union(e, make_leaf(vertices[t], current)));
    if (previous != k) e = make_recolor(previous, k, e);
    previous = current;
  }
  return CwExpr{n, e};
}

CwExpr gen_path(const VertexId& x, const VertexId& y, std::size_t length, int n, Color i, Color j, Color k) {
  if (length < 1) throw InputError("path length must be at least 1");
  if (x == y) throw InputError("path endpoints must differ");
  const auto vertices = subdivision_path(x, y, length - 1);
  return gen_path(std::span<const VertexId>(vertices), n, i, j, k);
}

// --- spiders ---------------------------------------------------------------

CwExpr gen_spider_on(const VertexId& center, std::span<const std::vector<VertexId>> legs) {
  const std::size_t t = legs.size();
  if (t < 3) throw InputError("a spider needs t >= 3 legs");
  const int palette = static_cast<int>(t) + 3;
  const Color interior = static_cast<Color>(t) + 1;
  const Color tip = static_cast<Color>(t) + 2;  // leg vertex next to the centre

  bool has_tip = false;       // some leg has length >= 2
  bool has_interior = false;  // some leg has length >= 3
  ExprPtr e;
  for (std::size_t l = 0; l < t; ++l) {
    if (legs[l].empty()) throw InputError("spider legs must have length at least 1");
    const Color leaf = static_cast<Color>(l) + 1;
    ExprPtr leg = legs[l].size() == 1
                      ? make_leaf(legs[l][0], leaf)
                      : gen_path(std::span<const VertexId>(legs[l]), palette, leaf, tip, interior).root;
    has_tip = has_tip || legs[l].size() >= 2;
    has_interior = has_interior || legs[l].size() >= 3;
    e = e ? make_union(e, leg) : leg;
  }

  // With no interior vertex yet the centre can take the final colour at once.
  const Color hub = has_interior ? static_cast<Color>(t) + 3 : interior;
  e = make_union(e, make_leaf(center, hub));
  if (has_tip) e = make_join(hub, tip, e);
  for (std::size_t l = 0; l < t; ++l) {
    if (legs[l].size() == 1) e = make_join(hub, static_cast<Color>(l) + 1, e);
  }
  if (hub != interior) e = make_recolor(hub, interior, e);
  if (has_tip) e = make_recolor(tip, interior, e);
  return CwExpr{palette, e};
}

CwExpr gen_spider(std::size_t t, std::span<const std::size_t> leg_lengths) {
  if (t < 3) throw InputError("a spider needs t >= 3 legs");
  if (leg_lengths.size() != t) throw InputError("expected " + std::to_string(t) + " leg lengths");
  std::vector<std::vector<VertexId>> legs(t);
  for (std::size_t l = 0; l < t; ++l) {
    if (leg_lengths[l] < 1) throw InputError("spider legs must have length at least 1");
    const std::string prefix = "leg" + std::to_string(l + 1) + ".";
    for (std::size_t d = leg_lengths[l]; d >= 1; --d) legs[l].push_back(prefix + std::to_string(d));
  }
  return gen_spider_on("r", legs);
}

// --- subdivided cliques ------------------------------------------------------

CwExpr gen_subdivided_clique(std::size_t n, const std::map<Edge, std::size_t>& times) {
  if (n < 4) throw InputError("subdivided clique needs n >= 4");
  const auto counts = canonical_times(complete_graph(n), times);
  auto name = [](std::size_t a) { return std::to_string(a); };
  auto count = [&](std::size_t a, std::size_t b) { return counts.at(canonical(name(a), name(b))); };

  // Spider around vertex n whose legs are the subdivided edges a-n.
  std::vector<std::vector<VertexId>> legs;
  for (std::size_t a = 1; a < n; ++a) {
    auto path = subdivision_path(name(a), name(n), count(a, n));
    path.pop_back();
    legs.push_back(std::move(path));
  }
  CwExpr spider = gen_spider_on(name(n), legs);
  ExprPtr e = spider.root;

  const int palette = static_cast<int>(n) + 2;
  const Color rest = static_cast<Color>(n);
  const Color near_a = rest + 1;
  const Color near_b = rest + 2;
  for (std::size_t a = 1; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const auto path = subdivision_path(name(a), name(b), count(a, b));
      const std::vector<VertexId> inner(path.begin() + 1, path.end() - 1);
      const auto ca = static_cast<Color>(a);
      const auto cb = static_cast<Color>(b);
      if (inner.empty()) {
        e = make_join(ca, cb, e);
      } else if (inner.size() == 1) {
        e = make_union(e, make_leaf(inner[0], near_a));
        e = make_join(ca, near_a, e);
        e = make_join(cb, near_a, e);
        e = make_recolor(near_a, rest, e);
      } else {
        e = make_union(e, gen_path(std::span<const VertexId>(inner), palette, near_a, near_b, rest).root);
        e = make_join(ca, near_a, e);
        e = make_join(cb, near_b, e);
        e = make_recolor(near_a, rest, e);
        e = make_recolor(near_b, rest, e);
      }
    }
  }
  return CwExpr{palette, e};
}

CwExpr gen_subdivided_clique(std::size_t n, std::size_t times) {
  if (n < 4) throw InputError("subdivided clique needs n >= 4");
  return gen_subdivided_clique(n, SubdivisionSpec::uniform(complete_graph(n), times).times);
}

// --- minor models ------------------------------------------------------------

namespace {

// Subdivided path of every h-edge in the source, from e.first to e.second.
std::map<Edge, std::vector<VertexId>> trace_subdivision(const Graph& h, const Graph& s) {
  std::vector<bool> branch(s.vertex_count(), false);
  for (const auto& v : h.vertices()) {
    auto idx = s.find(v);
    if (!idx) throw InputError("branch vertex '" + v + "' is missing from the subdivision");
    branch[*idx] = true;
  }
  for (std::size_t x = 0; x < s.vertex_count(); ++x) {
    if (!branch[x] && s.neighbors(x).size() != 2) {
      throw InputError("subdivision vertex '" + s.id(x) + "' does not have degree 2");
    }
  }
  std::map<Edge, std::vector<VertexId>> paths;
  std::size_t covered = h.vertex_count();
  for (const auto& v : h.vertices()) {
    const std::size_t start = s.index_of(v);
    for (std::size_t first : s.neighbors(start)) {
      std::vector<VertexId> path{v};
      std::size_t previous = start;
      std::size_t current = first;
      while (!branch[current]) {
        path.push_back(s.id(current));
        auto nb = s.neighbors(current);
        const std::size_t next = nb[0] == previous ? nb[1] : nb[0];
        previous = current;
        current = next;
      }
      const VertexId& u = s.id(current);
      path.push_back(u);
      if (u == v) throw InputError("subdivided path from '" + v + "' returns to itself");
      if (!h.adjacent(v, u)) throw InputError("subdivision joins '" + v + "' and '" + u + "', which are not adjacent");
      if (v > u) continue;  // traced again from the smaller end
      if (!paths.emplace(Edge{v, u}, path).second) {
        throw InputError("edge " + v + "-" + u + " is subdivided along more than one path");
      }
      covered += path.size() - 2;
    }
  }
  for (const auto& e : h.edges()) {
    if (!paths.count(e)) throw InputError("edge " + edge_name(e) + " has no subdivided path");
  }
  if (covered != s.vertex_count()) throw InputError("subdivision has vertices off every subdivided path");
  return paths;
}

bool meets(const VertexSet& a, const VertexSet& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia == *ib) return true;
    if (*ia < *ib) ++ia;
    else ++ib;
  }
  return false;
}

VertexSet image(const QiMap& f, const VertexSet& s) {
  VertexSet out;
  for (const auto& x : s) out.insert(f.f.at(x));
  return out;
}

}  // namespace

MinorModelResult build_minor_model(const Graph& h, const Graph& g, const QiMap& f, double c) {
  if (!(c >= 1)) throw InputError("minor model needs c >= 1");
  if (!(f.target == g)) throw InputError("map does not land in the given graph");
  const Graph& s = f.source;
  const auto paths = trace_subdivision(h, s);

  const double radius = c * (c + 1);
  const double needed = 4 * radius;
  for (const auto& [e, path] : paths) {
    const auto length = static_cast<double>(path.size() - 1);
    if (length < needed) {
      throw InputError("edge " + edge_name(e) + " is subdivided " + std::to_string(path.size() - 2) +
                       " times; at least 4c(c+1) - 1 = " + std::to_string(needed - 1) + " are required");
    }
  }
  QiMap at_c = f;
  at_c.c = c;
  const QiReport qi = check_qi(at_c);
  if (!qi.qi1) throw InputError("map fails QI1 at c = " + std::to_string(c));

  MinorModelResult out;
  MinorModelFacts& facts = out.facts;
  facts.radius = radius;
  facts.required_separation = 2 * radius;
  facts.min_branch_separation = Distance::infinite();
  facts.min_path_separation = Distance::infinite();

  for (const auto& v : h.vertices()) facts.source_branch_sets[v] = closed_neighborhood(s, {v}, radius);
  const auto skip = static_cast<std::size_t>(std::ceil(radius));
  for (const auto& [e, path] : paths) {
    facts.source_edge_paths[e] = VertexSet(path.begin() + static_cast<std::ptrdiff_t>(skip),
                                           path.end() - static_cast<std::ptrdiff_t>(skip));
  }

  for (auto a = facts.source_branch_sets.begin(); a != facts.source_branch_sets.end(); ++a) {
    for (auto b = std::next(a); b != facts.source_branch_sets.end(); ++b) {
      const Distance d = set_distance(s, a->second, b->second);
      facts.min_branch_separation = std::min(facts.min_branch_separation, d);
      if (d.is_finite() && static_cast<double>(d.value()) < 2 * radius) {
        throw ContractError("dist(X_" + a->first + ", X_" + b->first + ") = " + d.to_string() + " < 2c(c+1)");
      }
    }
  }
  for (auto a = facts.source_edge_paths.begin(); a != facts.source_edge_paths.end(); ++a) {
    for (auto b = std::next(a); b != facts.source_edge_paths.end(); ++b) {
      const Distance d = set_distance(s, a->second, b->second);
      facts.min_path_separation = std::min(facts.min_path_separation, d);
      if (d.is_finite() && static_cast<double>(d.value()) < 2 * radius) {
        throw ContractError("dist(P_" + edge_name(a->first) + ", P_" + edge_name(b->first) + ") = " +
                            d.to_string() + " < 2c(c+1)");
      }
    }
  }

  for (const auto& [v, x] : facts.source_branch_sets) out.model.branch_sets[v] = closed_neighborhood(g, image(f, x), c);
  for (const auto& [e, p] : facts.source_edge_paths) out.model.edge_paths[e] = closed_neighborhood(g, image(f, p), c);
  if (auto problem = check_minor_model(g, h, out.model)) throw ContractError("minor model invariant: " + *problem);
  return out;
}

std::optional<std::string> check_minor_model(const Graph& g, const Graph& h, const MinorModel& model) {
  if (model.branch_sets.size() != h.vertex_count()) return "branch sets do not match the pattern vertices";
  const auto edges = h.edges();
  if (model.edge_paths.size() != edges.size()) return "edge paths do not match the pattern edges";
  for (const auto& v : h.vertices()) {
    auto it = model.branch_sets.find(v);
    if (it == model.branch_sets.end()) return "no branch set for '" + v + "'";
    if (it->second.empty()) return "branch set of '" + v + "' is empty";
    for (const auto& x : it->second) {
      if (!g.has_vertex(x)) return "branch set of '" + v + "' holds non-vertex '" + x + "'";
    }
    if (!is_connected_subset(g, it->second)) return "branch set of '" + v + "' is not connected";
  }
  for (const auto& e : edges) {
    auto it = model.edge_paths.find(e);
    if (it == model.edge_paths.end()) return "no edge path for " + edge_name(e);
    if (it->second.empty()) return "edge path of " + edge_name(e) + " is empty";
    for (const auto& x : it->second) {
      if (!g.has_vertex(x)) return "edge path of " + edge_name(e) + " holds non-vertex '" + x + "'";
    }
    if (!is_connected_subset(g, it->second)) return "edge path of " + edge_name(e) + " is not connected";
  }
  for (auto a = model.branch_sets.begin(); a != model.branch_sets.end(); ++a) {
    for (auto b = std::next(a); b != model.branch_sets.end(); ++b) {
      if (meets(a->second, b->second)) return "branch sets of '" + a->first + "' and '" + b->first + "' intersect";
    }
  }
  for (auto a = model.edge_paths.begin(); a != model.edge_paths.end(); ++a) {
    for (auto b = std::next(a); b != model.edge_paths.end(); ++b) {
      if (meets(a->second, b->second)) {
        return "edge paths of " + edge_name(a->first) + " and " + edge_name(b->first) + " intersect";
      }
    }
  }
  for (const auto& [e, p] : model.edge_paths) {
    for (const auto& [v, x] : model.branch_sets) {
      const bool endpoint = v == e.first || v == e.second;
      if (meets(p, x) != endpoint) {
        return "edge path of " + edge_name(e) + (endpoint ? " misses" : " meets") + " branch set of '" + v + "'";
      }
    }
  }
  return std::nullopt;
}

BranchSets contract_model(const Graph& g, const Graph& h, const MinorModel& model) {
  if (auto problem = check_minor_model(g, h, model)) throw ContractError("minor model invariant: " + *problem);
  BranchSets out = model.branch_sets;
  for (const auto& [e, p] : model.edge_paths) {
    const VertexSet& from = model.branch_sets.at(e.first);
    const VertexSet& to = model.branch_sets.at(e.second);
    // BFS inside P'_e from its part in X'_a until X'_b is reached.
    std::map<VertexId, VertexId> parent;
    std::deque<VertexId> queue;
    for (const auto& x : p) {
      if (from.count(x)) {
        parent.emplace(x, x);
        queue.push_back(x);
      }
    }
    std::optional<VertexId> reached;
    while (!queue.empty() && !reached) {
      const VertexId x = queue.front();
      queue.pop_front();
      for (std::size_t yi : g.neighbors(g.index_of(x))) {
        const VertexId& y = g.id(yi);
        if (!p.count(y) || parent.count(y)) continue;
        parent.emplace(y, x);
        if (to.count(y)) {
          reached = y;
          break;
        }
        queue.push_back(y);
      }
    }
    if (!reached) throw ContractError("edge path of " + edge_name(e) + " does not link its branch sets");
    for (VertexId x = parent.at(*reached); !from.count(x); x = parent.at(x)) out[e.first].insert(x);
  }
  return out;
}

}  // namespace cwq
