#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "cwq/expr.hpp"
#include "cwq/graph.hpp"
#include "cwq/quasi_iso.hpp"
#include "cwq/treedecomp.hpp"

namespace cwq {

// --- subdivisions --------------------------------------------------------

// Per-edge subdivision counts. Keys are canonical edges (smaller id first).
struct SubdivisionSpec {
  Graph base;
  std::map<Edge, std::size_t> times;

  // Every edge subdivided `count` times.
  static SubdivisionSpec uniform(const Graph& base, std::size_t count);
};

// Name of the i-th fresh vertex (1-based) on edge {u, v}, counted from the
// lexicographically smaller endpoint: "<u>-<v>.<i>".
VertexId subdivision_vertex(const VertexId& u, const VertexId& v, std::size_t i);

// Vertices of the subdivided u-v path from u to v, endpoints included.
std::vector<VertexId> subdivision_path(const VertexId& u, const VertexId& v, std::size_t count);

// Throws InputError unless `times` covers exactly E(base).
Graph subdivide(const SubdivisionSpec& spec);

Graph complete_graph(std::size_t n);  // vertices "1".."n"

// --- expression builders -------------------------------------------------

// Path through `vertices` in order: the first coloured i, the last coloured j,
// the rest coloured k, over palette n. Needs at least two vertices,
// j != i, j != k, some colour of 1..n outside {i, j, k}, all colours in 1..n.
CwExpr gen_path(std::span<const VertexId> vertices, int n, Color i, Color j, Color k);

// Path of the given length from x to y whose interior vertices are named as
// in subdivision_path(x, y, length - 1).
CwExpr gen_path(const VertexId& x, const VertexId& y, std::size_t length, int n, Color i, Color j, Color k);

// Spider with centre "r" and leg l (1-based) of length leg_lengths[l-1];
// vertices of leg l are "leg<l>.<d>" at distance d from the centre. Leaf l is
// coloured l, every other vertex t+1. Palette t+3. Needs t >= 3.
CwExpr gen_spider(std::size_t t, std::span<const std::size_t> leg_lengths);

// Spider over caller-chosen names. legs[l] lists leg l+1 from its leaf towards
// the centre (the centre itself excluded). Same colouring and palette as above.
CwExpr gen_spider_on(const VertexId& center, std::span<const std::vector<VertexId>> legs);

// The subdivision of K_n given by `times` (keys over vertices "1".."n").
// Branch vertex a < n keeps colour a; every other vertex gets colour n.
// Palette n + 2. Needs n >= 4.
CwExpr gen_subdivided_clique(std::size_t n, const std::map<Edge, std::size_t>& times);
CwExpr gen_subdivided_clique(std::size_t n, std::size_t times);

// --- minor models ----------------------------------------------------------

struct MinorModel {
  std::map<VertexId, VertexSet> branch_sets;  // X'_v
  std::map<Edge, VertexSet> edge_paths;       // P'_e

  friend bool operator==(const MinorModel&, const MinorModel&) = default;
};

// Distance facts about the source-side sets, recorded for inspection.
struct MinorModelFacts {
  double radius = 0;                 // c(c+1)
  double required_separation = 0;    // 2c(c+1)
  Distance min_branch_separation;    // min dist(X_v, X_v')
  Distance min_path_separation;      // min dist(P_e, P_e') over distinct edges
  std::map<VertexId, VertexSet> source_branch_sets;  // X_v
  std::map<Edge, VertexSet> source_edge_paths;       // P_e
};

struct MinorModelResult {
  MinorModel model;
  MinorModelFacts facts;
};

// For f mapping a subdivision of h into g (f.target == g) with QI1 at
// parameter c: X_v is the closed c(c+1)-ball around branch vertex v, P_e the
// middle segment of the subdivided path of e starting ceil(c(c+1)) steps from
// each end, and the model sets are closed c-balls around their images.
// Throws InputError when the source is not a subdivision of h, some edge is
// subdivided fewer than 4c(c+1) - 1 times, or QI1 fails; ContractError when
// an asserted invariant does not hold, naming the offending pair.
MinorModelResult build_minor_model(const Graph& h, const Graph& g, const QiMap& f, double c);

// Reports the first violated model invariant, if any.
std::optional<std::string> check_minor_model(const Graph& g, const Graph& h, const MinorModel& model);

// Turns a model into branch sets of an h-minor: each X'_v, extended for every
// edge vw with v < w by the interior of a shortest X'_v-X'_w path in P'_vw.
BranchSets contract_model(const Graph& g, const Graph& h, const MinorModel& model);

}  // namespace cwq
