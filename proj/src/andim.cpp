#include "cwq/andim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cwq/errors.hpp"

namespace cwq {

ControlDilation::ControlDilation(double slope) : slope_(slope) {
  if (!(slope > 0)) throw InputError("dilation slope must be positive");
}

CoverReport validate_cover(const Graph& g, const CoverFamily& cf) {
  CoverReport report;
  auto note = [&](std::string message) {
    if (report.witness.empty()) report.witness = std::move(message);
  };
  if (cf.n < 0 || cf.collections.size() != static_cast<std::size_t>(cf.n) + 1) {
    report.well_formed = false;
    note("family declares n = " + std::to_string(cf.n) + " but has " + std::to_string(cf.collections.size()) +
         " collections");
  }
  for (std::size_t i = 0; i < cf.collections.size(); ++i) {
    for (const auto& set : cf.collections[i]) {
      if (set.empty()) {
        report.well_formed = false;
        note("collection " + std::to_string(i) + " holds an empty set");
      }
      for (const auto& v : set) {
        if (!g.has_vertex(v)) {
          report.well_formed = false;
          note("collection " + std::to_string(i) + " holds non-vertex '" + v + "'");
        }
      }
    }
  }
  if (!report.well_formed) {
    report.cf1 = report.cf2 = report.cf3 = false;
    return report;
  }

  VertexSet covered;
  for (const auto& collection : cf.collections) {
    for (const auto& set : collection) covered.insert(set.begin(), set.end());
  }
  for (const auto& v : g.vertices()) {
    if (!covered.count(v)) {
      report.cf1 = false;
      note("CF1: vertex '" + v + "' is not covered");
      break;
    }
  }

  for (std::size_t i = 0; i < cf.collections.size(); ++i) {
    const auto& collection = cf.collections[i];
    for (std::size_t a = 0; a < collection.size(); ++a) {
      for (std::size_t b = a + 1; b < collection.size(); ++b) {
        const Distance d = set_distance(g, collection[a], collection[b]);
        if (d.within(cf.r)) {
          report.cf2 = false;
          note("CF2: sets " + std::to_string(a) + " and " + std::to_string(b) + " of collection " +
               std::to_string(i) + " are at distance " + d.to_string());
        }
      }
    }
  }

  for (std::size_t i = 0; i < cf.collections.size(); ++i) {
    for (std::size_t a = 0; a < cf.collections[i].size(); ++a) {
      const Distance d = weak_diameter(g, cf.collections[i][a]);
      report.max_weak_diameter = std::max(report.max_weak_diameter, d);
      if (!d.within(cf.bound)) {
        report.cf3 = false;
        note("CF3: set " + std::to_string(a) + " of collection " + std::to_string(i) + " has weak diameter " +
             d.to_string());
      }
    }
  }
  return report;
}

CoverFamily pullback_cover(const QiMap& m, const CoverFamily& cf, double r, const ControlDilation& d_prime) {
  if (!(r >= 1)) throw InputError("scale hypothesis: r must be at least 1");
  const QiReport qi = check_qi(m);
  if (!qi.qi1) throw InputError("QI hypothesis: the map fails QI1 at c = " + std::to_string(m.c));
  const double c = m.c;
  const double r_target = c * r + c;

  CoverFamily target = cf;
  target.r = r_target;
  target.bound = d_prime(r_target);
  const CoverReport target_report = validate_cover(m.target, target);
  if (!target_report.passed()) {
    throw InputError("target cover hypothesis: fails at scale " + std::to_string(r_target) + ": " +
                     target_report.witness);
  }

  CoverFamily out;
  out.n = cf.n;
  out.r = r;
  out.bound = c * d_prime(2 * c * r) + c * c * r;
  const double tight = c * d_prime(r_target) + c * c;
  if (!(tight <= out.bound)) {
    throw ContractError("bound chain fails: c d'(cr + c) + c^2 = " + std::to_string(tight) + " > d(r) = " +
                        std::to_string(out.bound));
  }

  std::map<VertexId, std::vector<VertexId>> preimage;
  for (const auto& [x, y] : m.f) preimage[y].push_back(x);
  for (const auto& collection : cf.collections) {
    auto& mapped = out.collections.emplace_back();
    for (const auto& set : collection) {
      VertexSet pulled;
      for (const auto& y : set) {
        auto it = preimage.find(y);
        if (it != preimage.end()) pulled.insert(it->second.begin(), it->second.end());
      }
      if (!pulled.empty()) mapped.push_back(std::move(pulled));
    }
  }

  CoverFamily tight_family = out;
  tight_family.bound = tight;
  const CoverReport check = validate_cover(m.source, tight_family);
  if (!check.passed()) throw ContractError("pulled-back cover fails revalidation: " + check.witness);
  return out;
}

CoverFamily component_cover(const Graph& g, double r) {
  CoverFamily cf;
  cf.n = 0;
  cf.r = r;
  cf.collections.emplace_back();
  Distance widest;
  for (auto& component : connected_components(g)) {
    widest = std::max(widest, weak_diameter(g, component));
    cf.collections[0].push_back(std::move(component));
  }
  cf.bound = static_cast<double>(widest.value());
  return cf;
}

CoverFamily banded_cover(const Graph& g, double r) {
  if (!(r >= 0)) throw InputError("scale must be nonnegative");
  const std::size_t n = g.vertex_count();
  const auto width = static_cast<std::size_t>(std::floor(r)) + 1;

  std::vector<std::size_t> band(n, 0);
  for (const auto& component : connected_components(g)) {
    const std::size_t root = g.index_of(*component.begin());
    const auto layers = bfs_distances(g, std::span<const std::size_t>(&root, 1));
    for (const auto& v : component) {
      const std::size_t x = g.index_of(v);
      band[x] = layers[x].value() / width;
    }
  }

  // Union vertices of one band that lie within distance r of each other.
  std::vector<std::size_t> leader(n);
  std::iota(leader.begin(), leader.end(), 0);
  auto find = [&](std::size_t x) {
    while (leader[x] != x) x = leader[x] = leader[leader[x]];
    return x;
  };
  const DistanceMatrix dist(g);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (band[x] == band[y] && dist(x, y).within(r)) leader[find(y)] = find(x);
    }
  }

  std::map<std::size_t, VertexSet> groups;
  for (std::size_t x = 0; x < n; ++x) groups[find(x)].insert(g.id(x));

  CoverFamily cf;
  cf.n = 1;
  cf.r = r;
  cf.collections.resize(2);
  Distance widest;
  for (auto& [lead, set] : groups) {
    widest = std::max(widest, weak_diameter(g, set));
    cf.collections[band[lead] % 2].push_back(std::move(set));
  }
  cf.bound = static_cast<double>(widest.value());
  return cf;
}

}  // namespace cwq
