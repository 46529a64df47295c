#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "cwq/graph.hpp"

namespace cwq {

// A vertex map f: V(source) -> V(target) with its claimed parameter c.
struct QiMap {
  Graph source;
  Graph target;
  std::map<VertexId, VertexId> f;
  double c = 1.0;
};

// Throws InputError unless f is total on the source and lands in the target.
void validate_map(const QiMap& m);

// Sends every vertex to its part in G / p, with c = (largest weak diameter of a part) + 1.
// Throws InputError when a part has infinite weak diameter.
QiMap projection_map(const Graph& g, const Partition& p);

QiMap identity_map(const Graph& g, double c = 1.0);

struct VertexPair {
  VertexId x;
  VertexId y;
};

struct QiReport {
  bool qi1 = true;
  bool qi2 = true;
  // Smallest margins over finite pairs; negative means violated.
  //   lower: d_H(f x, f y) - (d_G(x, y) / c - c)
  //   upper: (c d_G(x, y) + c) - d_H(f x, f y)
  std::optional<double> lower_margin;
  std::optional<VertexPair> lower_witness;
  std::optional<double> upper_margin;
  std::optional<VertexPair> upper_witness;
  // Pair whose distances disagree on being finite.
  std::optional<VertexPair> infinity_mismatch;
  // Largest distance from a target vertex to the image, and where.
  Distance worst_cover;
  std::optional<VertexId> worst_cover_vertex;

  bool passed() const noexcept { return qi1 && qi2; }
};

// Exhaustive check of both conditions. INFINITE distances must match: a pair
// disconnected on one side must be disconnected on the other.
QiReport check_qi(const QiMap& m);

struct PartQiReport {
  bool passed = true;
  int c = 0;  // weak-diameter bound used
  // Over finite pairs with r = d_G and r' = d_{G/P}:
  //   r / (c + 1) - 1 <= r' <= r
  std::optional<VertexPair> lower_violation;
  std::optional<VertexPair> upper_violation;
  // Extremal pairs: largest r - r' and smallest (c+1)(r'+1) - r.
  std::optional<VertexPair> most_contracted;
  std::size_t max_contraction = 0;
  std::optional<VertexPair> tightest_lower;
  std::optional<long long> min_lower_slack;
};

// Throws InputError on a part of infinite weak diameter. When c_override is
// set, checks the window for that c instead of the measured one.
PartQiReport check_partqi_tight(const Graph& g, const Partition& p, std::optional<int> c_override = std::nullopt);

}  // namespace cwq
