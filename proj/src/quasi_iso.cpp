#include "cwq/quasi_iso.hpp"

#include <algorithm>

#include "cwq/errors.hpp"

namespace cwq {

void validate_map(const QiMap& m) {
  if (!(m.c > 0)) throw InputError("quasi-isometry parameter must be positive");
  if (m.f.size() != m.source.vertex_count()) throw InputError("map is not total on the source");
  for (const auto& [x, y] : m.f) {
    if (!m.source.has_vertex(x)) throw InputError("map is defined on non-vertex '" + x + "'");
    if (!m.target.has_vertex(y)) throw InputError("map sends '" + x + "' to non-vertex '" + y + "'");
  }
}

QiMap projection_map(const Graph& g, const Partition& p) {
  Quotient q = quotient(g, p);
  std::size_t widest = 0;
  for (const auto& [id, members] : p.parts()) {
    Distance d = weak_diameter(g, members);
    if (d.is_infinite()) throw InputError("part '" + id + "' spans several components");
    widest = std::max(widest, d.value());
  }
  QiMap m;
  m.source = g;
  m.target = std::move(q.graph);
  m.f = std::move(q.projection);
  m.c = static_cast<double>(widest) + 1.0;
  return m;
}

QiMap identity_map(const Graph& g, double c) {
  QiMap m;
  m.source = g;
  m.target = g;
  for (const auto& v : g.vertices()) m.f.emplace(v, v);
  m.c = c;
  return m;
}

QiReport check_qi(const QiMap& m) {
  validate_map(m);
  QiReport report;
  const DistanceMatrix dg(m.source);
  const DistanceMatrix dh(m.target);
  const std::size_t n = m.source.vertex_count();
  std::vector<std::size_t> image(n);
  for (std::size_t x = 0; x < n; ++x) image[x] = m.target.index_of(m.f.at(m.source.id(x)));
  const double c = m.c;

  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      const Distance r = dg(x, y);
      const Distance s = dh(image[x], image[y]);
      if (r.is_infinite() || s.is_infinite()) {
        if (r.is_infinite() != s.is_infinite() && !report.infinity_mismatch) {
          report.qi1 = false;
          report.infinity_mismatch = VertexPair{m.source.id(x), m.source.id(y)};
        }
        continue;
      }
      const double rv = static_cast<double>(r.value());
      const double sv = static_cast<double>(s.value());
      // r/c - c <= s  <=>  r <= c s + c^2, compared in the multiplied form.
      const double lower = (c * sv + c * c - rv) / c;
      const double upper = c * rv + c - sv;
      if (!report.lower_margin || lower < *report.lower_margin) {
        report.lower_margin = lower;
        report.lower_witness = VertexPair{m.source.id(x), m.source.id(y)};
      }
      if (!report.upper_margin || upper < *report.upper_margin) {
        report.upper_margin = upper;
        report.upper_witness = VertexPair{m.source.id(x), m.source.id(y)};
      }
      if (rv > c * sv + c * c || sv > c * rv + c) report.qi1 = false;
    }
  }

  std::vector<std::size_t> sources(image.begin(), image.end());
  const auto cover = bfs_distances(m.target, sources);
  for (std::size_t t = 0; t < m.target.vertex_count(); ++t) {
    if (!report.worst_cover_vertex || cover[t] > report.worst_cover) {
      report.worst_cover = cover[t];
      report.worst_cover_vertex = m.target.id(t);
    }
    if (!cover[t].within(c)) report.qi2 = false;
  }
  return report;
}

PartQiReport check_partqi_tight(const Graph& g, const Partition& p, std::optional<int> c_override) {
  Quotient q = quotient(g, p);
  std::size_t widest = 0;
  for (const auto& [id, members] : p.parts()) {
    Distance d = weak_diameter(g, members);
    if (d.is_infinite()) throw InputError("part '" + id + "' has infinite weak diameter");
    widest = std::max(widest, d.value());
  }
  PartQiReport report;
  report.c = c_override ? *c_override : static_cast<int>(widest);
  const long long c1 = report.c + 1;

  const DistanceMatrix dg(g);
  const DistanceMatrix dq(q.graph);
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> image(n);
  for (std::size_t x = 0; x < n; ++x) image[x] = q.graph.index_of(q.projection.at(g.id(x)));

  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      const Distance r = dg(x, y);
      if (r.is_infinite()) continue;
      const Distance rq = dq(image[x], image[y]);
      const auto rv = static_cast<long long>(r.value());
      const auto sv = static_cast<long long>(rq.value());
      // r/(c+1) - 1 <= r'  <=>  r <= (c+1)(r'+1)
      const long long slack = c1 * (sv + 1) - rv;
      if (!report.min_lower_slack || slack < *report.min_lower_slack) {
        report.min_lower_slack = slack;
        report.tightest_lower = VertexPair{g.id(x), g.id(y)};
      }
      if (sv <= rv && static_cast<std::size_t>(rv - sv) > report.max_contraction) {
        report.max_contraction = static_cast<std::size_t>(rv - sv);
        report.most_contracted = VertexPair{g.id(x), g.id(y)};
      }
      if (slack < 0 && !report.lower_violation) {
        report.passed = false;
        report.lower_violation = VertexPair{g.id(x), g.id(y)};
      }
      if (sv > rv && !report.upper_violation) {
        report.passed = false;
        report.upper_violation = VertexPair{g.id(x), g.id(y)};
      }
    }
  }
  return report;
}

}  // namespace cwq
