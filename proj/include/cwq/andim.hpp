#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cwq/graph.hpp"
#include "cwq/quasi_iso.hpp"

namespace cwq {

// n + 1 collections of vertex sets, meant to be r-disjoint within each
// collection and of weak diameter at most `bound`.
struct CoverFamily {
  int n = 0;
  std::vector<std::vector<VertexSet>> collections;
  double r = 1;
  double bound = 0;

  friend bool operator==(const CoverFamily&, const CoverFamily&) = default;
};

// d(r) = slope * r. Throws InputError unless slope > 0.
class ControlDilation {
 public:
  explicit ControlDilation(double slope);
  double slope() const noexcept { return slope_; }
  double operator()(double r) const noexcept { return slope_ * r; }

 private:
  double slope_;
};

struct CoverReport {
  bool well_formed = true;  // n matches, sets nonempty and inside V(g)
  bool cf1 = true;          // sets cover V(g)
  bool cf2 = true;          // distinct sets of one collection are at distance > r
  bool cf3 = true;          // every set has weak diameter <= bound
  std::string witness;      // first failure, human readable
  Distance max_weak_diameter;

  bool passed() const noexcept { return well_formed && cf1 && cf2 && cf3; }
};

CoverReport validate_cover(const Graph& g, const CoverFamily& cf);

// Preimage family of a cover of m.target, on m.source.
//
// Preconditions (InputError naming the failed one): r >= 1; m satisfies QI1
// with its parameter c; cf validates on the target at scale r' = c r + c with
// bound d'(r'). The result has scale r and bound d(r) = c d'(2cr) + c^2 r.
// After checking c d'(r') + c^2 <= d(r) it revalidates the result at the
// tighter bound and throws ContractError if anything fails.
CoverFamily pullback_cover(const QiMap& m, const CoverFamily& cf, double r, const ControlDilation& d_prime);

// One collection whose sets are the connected components.
CoverFamily component_cover(const Graph& g, double r);

// Two collections from BFS bands of width floor(r) + 1 around the smallest
// vertex of each component; within a band, vertices at distance <= r are
// merged. Valid at scale r with bound = largest observed weak diameter.
CoverFamily banded_cover(const Graph& g, double r);

}  // namespace cwq
