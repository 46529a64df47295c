// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "cwq/andim.hpp"
#include "cwq/corpus.hpp"
#include "cwq/decomposer.hpp"
#include "cwq/errors.hpp"
#include "cwq/generators.hpp"
#include "cwq/quasi_iso.hpp"
#include "mutations.hpp"
#include "support.hpp"

using namespace cwq;
using namespace cwq::testing;

namespace {

constexpr std::uint64_t kCorpusSeed = 20240611;
constexpr std::size_t kCorpusSize = 500;
constexpr int kMaxK = 6;
constexpr std::size_t kMaxLeaves = 40;
constexpr std::size_t kQuotientOracleLimit = 12;
constexpr std::size_t kMinCoverTriples = 50;
constexpr int kMutationsPerKind = 40;

struct Instance {
  std::string label;
  CwExpr expr;
};

struct Outcome {
  bool ok = true;
  std::string detail;
  std::string first_failure;

  void fail(const std::string& why) {
    if (ok) first_failure = why;
    ok = false;
  }
};

int g_failures = 0;

void report(int id, const std::string& title, const Outcome& o) {
  std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " [" << o.detail << "]";
  if (!o.ok) std::cout << " first failure: " << o.first_failure;
  std::cout << std::endl;
  if (!o.ok) ++g_failures;
}

// Runs a criterion body, turning a stray exception into a FAIL line.
void run(int id, const std::string& title, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& ex) {
    o.fail(std::string("exception: ") + ex.what());
  }
  report(id, title, o);
}

Graph path_through(const std::vector<VertexId>& vs) {
  std::vector<Edge> es;
  for (std::size_t i = 0; i + 1 < vs.size(); ++i) es.emplace_back(vs[i], vs[i + 1]);
  return Graph(vs, es);
}

std::size_t colors_used(const ColoredGraph& g) {
  std::set<Color> cs;
  for (const auto& [v, c] : g.color) cs.insert(c);
  return cs.size();
}

std::vector<std::vector<std::size_t>> all_leg_lengths(std::size_t t, std::size_t max_len) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> legs(t, 1);
  while (true) {
    out.push_back(legs);
    std::size_t i = 0;
    while (i < t && legs[i] == max_len) legs[i++] = 1;
    if (i == t) break;
    ++legs[i];
  }
  return out;
}

Graph spider_graph(const std::vector<std::size_t>& legs) {
  std::vector<VertexId> vs{"r"};
  std::vector<Edge> es;
  for (std::size_t l = 1; l <= legs.size(); ++l) {
    VertexId prev = "r";
    for (std::size_t d = 1; d <= legs[l - 1]; ++d) {
      VertexId cur = "leg" + std::to_string(l) + "." + std::to_string(d);
      vs.push_back(cur);
      es.emplace_back(prev, cur);
      prev = cur;
    }
  }
  return Graph(vs, es);
}

// Subdivided K_n spelled out vertex by vertex.
Graph clique_graph_subdivided(std::size_t n, std::size_t count) {
  std::vector<VertexId> vs;
  std::vector<Edge> es;
  for (std::size_t a = 1; a <= n; ++a) vs.push_back(std::to_string(a));
  for (std::size_t a = 1; a <= n; ++a) {
    for (std::size_t b = a + 1; b <= n; ++b) {
      std::string u = std::to_string(a);
      std::string v = std::to_string(b);
      if (v < u) std::swap(u, v);
      std::string prev = u;
      for (std::size_t i = 1; i <= count; ++i) {
        std::string cur = u + "-" + v + "." + std::to_string(i);
        vs.push_back(cur);
        es.emplace_back(prev, cur);
        prev = cur;
      }
      es.emplace_back(prev, v);
    }
  }
  return Graph(vs, es);
}

std::vector<Instance> generator_instances() {
  std::vector<Instance> out;
  for (std::size_t len = 1; len <= 20; ++len) {
    out.push_back({"path length " + std::to_string(len), gen_path("x", "y", len, 3, 1, 2, 1)});
  }
  for (std::size_t t = 3; t <= 5; ++t) {
    for (const auto& legs : all_leg_lengths(t, 4)) {
      std::string label = "spider";
      for (auto l : legs) label += " " + std::to_string(l);
      out.push_back({label, gen_spider(t, legs)});
    }
  }
  for (std::size_t n : {4u, 5u}) {
    for (std::size_t count : {0u, 1u, 7u}) {
      out.push_back({"K" + std::to_string(n) + " x" + std::to_string(count), gen_subdivided_clique(n, count)});
    }
  }
  return out;
}

std::vector<Instance> full_corpus() {
  CorpusOptions opt;
  opt.seed = kCorpusSeed;
  opt.count = kCorpusSize;
  opt.max_k = kMaxK;
  opt.max_leaves = kMaxLeaves;
  std::vector<Instance> out;
  std::size_t i = 0;
  for (auto& e : generate_corpus(opt)) out.push_back({"random #" + std::to_string(i++), std::move(e)});
  for (auto& inst : generator_instances()) out.push_back(std::move(inst));
  return out;
}

struct Decomposed {
  const Instance* inst;
  ColoredGraph graph;
  DecompositionResult result;
};

}  // namespace

int main() {
  std::cout << "corpus seed " << kCorpusSeed << ", " << kCorpusSize << " random expressions (k <= " << kMaxK
            << ", leaves <= " << kMaxLeaves << ") plus generator outputs" << std::endl;
  const std::vector<Instance> corpus = full_corpus();
  std::vector<Decomposed> decomposed;
  decomposed.reserve(corpus.size());

  run(1, "decompose + verify_result on the corpus", [&] {
    Outcome o;
    std::size_t random_count = 0;
    std::size_t max_leaves = 0;
    int max_k = 0;
    for (const auto& inst : corpus) {
      if (inst.label.rfind("random", 0) == 0) {
        ++random_count;
        max_leaves = std::max(max_leaves, leaf_count(*inst.expr.root));
        max_k = std::max(max_k, inst.expr.k);
      }
      if (!validate_strict(inst.expr).strict_valid()) {
        o.fail(inst.label + " is not strict");
        continue;
      }
      Decomposed d{&inst, evaluate(inst.expr), decompose(inst.expr)};
      const VerificationReport rep = verify_result(d.graph, d.result);
      if (!rep.all_passed()) {
        for (const auto& c : rep.checks) {
          if (!c.passed) o.fail(inst.label + ": " + c.name + ": " + c.witness);
        }
      }
      if (!naive_violations(d.graph, d.result).empty()) o.fail(inst.label + ": reference checker disagrees");
      decomposed.push_back(std::move(d));
    }
    if (random_count < kCorpusSize) o.fail("corpus too small");
    if (max_k > kMaxK || max_leaves > kMaxLeaves) o.fail("corpus exceeds its size limits");
    o.detail = std::to_string(decomposed.size()) + " instances, " + std::to_string(random_count) +
               " random (max k " + std::to_string(max_k) + ", max leaves " + std::to_string(max_leaves) + ")";
    return o;
  });

  run(2, "tight partition quasi-isometry (c = 2) and projection QI at c = 3", [&] {
    Outcome o;
    long long min_slack = -1;
    std::size_t max_contraction = 0;
    for (const auto& d : decomposed) {
      const PartQiReport pq = check_partqi_tight(d.graph.graph, d.result.partition, 2);
      if (!pq.passed) o.fail(d.inst->label + ": window r/3 - 1 <= r' <= r violated");
      if (pq.min_lower_slack && (min_slack < 0 || *pq.min_lower_slack < min_slack)) min_slack = *pq.min_lower_slack;
      max_contraction = std::max(max_contraction, pq.max_contraction);
      QiMap m = projection_map(d.graph.graph, d.result.partition);
      m.c = 3;
      if (!check_qi(m).passed()) o.fail(d.inst->label + ": projection is not a 3-quasi-isometry");
    }
    o.detail = std::to_string(decomposed.size()) + " instances, exact integer comparison, min lower slack " +
               std::to_string(min_slack) + ", max contraction " + std::to_string(max_contraction);
    return o;
  });

  run(3, "quotient treewidth <= k - 1 (quotients up to 12 vertices)", [&] {
    Outcome o;
    std::size_t checked = 0;
    std::size_t cross_checked = 0;
    TreewidthOptions exact;
    exact.cap = kQuotientOracleLimit;
    exact.reduce = false;
    for (const auto& d : decomposed) {
      const Graph q = quotient(d.graph.graph, d.result.partition).graph;
      if (q.vertex_count() > kQuotientOracleLimit) continue;
      ++checked;
      const int tw = brute_treewidth(q, exact);
      if (tw > d.inst->expr.k - 1) {
        o.fail(d.inst->label + ": treewidth " + std::to_string(tw) + " > k - 1 = " + std::to_string(d.inst->expr.k - 1));
      }
      if (q.vertex_count() <= 8) {
        ++cross_checked;
        if (permutation_treewidth(q) != tw) o.fail(d.inst->label + ": oracles disagree");
      }
    }
    if (checked == 0) o.fail("no quotient small enough");
    o.detail = std::to_string(checked) + " quotients checked, " + std::to_string(cross_checked) +
               " also by elimination orderings";
    return o;
  });

  run(4, "generator fidelity", [&] {
    Outcome o;
    std::size_t count = 0;
    auto strict = [&](const CwExpr& e, const std::string& label) {
      ++count;
      if (!validate_strict(e).strict_valid()) o.fail(label + " not strict");
    };
    for (std::size_t len = 1; len <= 20; ++len) {
      const std::string label = "path length " + std::to_string(len);
      CwExpr e = gen_path("x", "y", len, 3, 1, 2, 1);
      strict(e, label);
      const ColoredGraph g = evaluate(e);
      if (!(g.graph == path_through(subdivision_path("x", "y", len - 1)))) o.fail(label + " wrong graph");
      if (colors_used(g) > 3 || e.k > 3) o.fail(label + " too many colours");
    }
    for (std::size_t t = 3; t <= 5; ++t) {
      for (const auto& legs : all_leg_lengths(t, 4)) {
        const std::string label = "spider t=" + std::to_string(t);
        CwExpr e = gen_spider(t, legs);
        strict(e, label);
        const ColoredGraph g = evaluate(e);
        if (!(g.graph == spider_graph(legs))) o.fail(label + " wrong graph");
        if (colors_used(g) > t + 3 || e.k > static_cast<int>(t) + 3) o.fail(label + " too many colours");
      }
    }
    for (std::size_t n : {4u, 5u}) {
      for (std::size_t c : {0u, 1u, 7u}) {
        const std::string label = "K" + std::to_string(n) + " x" + std::to_string(c);
        CwExpr e = gen_subdivided_clique(n, c);
        strict(e, label);
        const ColoredGraph g = evaluate(e);
        if (!(g.graph == clique_graph_subdivided(n, c))) o.fail(label + " wrong graph");
        if (colors_used(g) > n + 2 || e.k > static_cast<int>(n) + 2) o.fail(label + " too many colours");
      }
    }
    o.detail = std::to_string(count) + " generator outputs compared vertex for vertex";
    return o;
  });

  run(5, "7-subdivision of K4", [&] {
    Outcome o;
    const Graph k4 = complete_graph(4);
    CwExpr e = gen_subdivided_clique(4, 7);
    const ColoredGraph g = evaluate(e);
    // (a)
    if (e.k > 6 || colors_used(g) > 6) o.fail("(a) more than 6 colours");
    if (!(g.graph == clique_graph_subdivided(4, 7))) o.fail("(a) wrong graph");
    // (b)
    MinorModelResult mm = build_minor_model(k4, g.graph, identity_map(g.graph), 1.0);
    if (auto why = check_minor_model(g.graph, k4, mm.model)) o.fail("(b) " + *why);
    Distance branch_sep = Distance::infinite();
    for (const auto& [a, xa] : mm.facts.source_branch_sets) {
      for (const auto& [b, xb] : mm.facts.source_branch_sets) {
        if (a < b) branch_sep = std::min(branch_sep, set_distance(g.graph, xa, xb));
      }
    }
    Distance path_sep = Distance::infinite();
    for (const auto& [e1, p1] : mm.facts.source_edge_paths) {
      for (const auto& [e2, p2] : mm.facts.source_edge_paths) {
        if (e1 < e2) path_sep = std::min(path_sep, set_distance(g.graph, p1, p2));
      }
    }
    if (!(branch_sep >= Distance(4))) o.fail("(b) branch sets closer than 4");
    if (!(path_sep >= Distance(4))) o.fail("(b) edge paths closer than 4");
    if (!is_minor_model(g.graph, k4, contract_model(g.graph, k4, mm.model))) o.fail("(b) contracted model invalid");
    // (c)
    const bool minor = has_minor(g.graph, k4);
    if (!minor) o.fail("(c) has_minor says no");
    // (d)
    const DecompositionResult r = decompose(e);
    const Graph q = quotient(g.graph, r.partition).graph;
    const int tw = brute_treewidth(q);
    if (tw < 3) o.fail("(d) quotient treewidth " + std::to_string(tw));
    std::ostringstream s;
    s << "k " << e.k << ", colours " << colors_used(g) << ", branch separation " << branch_sep.value()
      << ", path separation " << path_sep.value() << ", has_minor " << (minor ? "yes" : "no") << ", quotient "
      << q.vertex_count() << " vertices treewidth " << tw;
    o.detail = s.str();
    return o;
  });

  run(6, "cover pullback through c = 3 projections", [&] {
    Outcome o;
    std::size_t triples = 0;
    std::size_t graphs = 0;
    double worst_ratio = 0;
    for (const auto& d : decomposed) {
      if (d.result.partition.size() < 2 || d.graph.graph.vertex_count() < 4) continue;
      ++graphs;
      QiMap m = projection_map(d.graph.graph, d.result.partition);
      m.c = 3;
      for (double r : {1.0, 2.0, 5.0}) {
        const double rp = m.c * r + m.c;
        const CoverFamily target = banded_cover(m.target, rp);
        const ControlDilation dp(std::max(1.0, std::ceil(target.bound / rp)));
        CoverFamily out = pullback_cover(m, target, r, dp);
        ++triples;
        const double allowed = 3 * dp(6 * r) + 9 * r;
        out.bound = allowed;
        const CoverReport rep = validate_cover(d.graph.graph, out);
        if (!rep.passed()) o.fail(d.inst->label + " r=" + std::to_string(r) + ": " + rep.witness);
        if (rep.max_weak_diameter.is_finite()) {
          worst_ratio = std::max(worst_ratio, static_cast<double>(rep.max_weak_diameter.value()) / allowed);
        }
      }
      if (triples >= 3 * 60) break;
    }
    if (triples < kMinCoverTriples) o.fail("only " + std::to_string(triples) + " triples");
    std::ostringstream s;
    s << triples << " triples over " << graphs << " graphs, r in {1, 2, 5}, worst diameter/bound " << worst_ratio;
    o.detail = s.str();
    return o;
  });

  run(7, "mutations caught by verify_result", [&] {
    Outcome o;
    std::mt19937_64 rng(kCorpusSeed + 7);
    std::map<Mutation, int> applied;
    std::size_t skipped = 0;
    for (std::size_t round = 0; round < 20000; ++round) {
      bool done = true;
      for (Mutation m : kAllMutations) done = done && applied[m] >= kMutationsPerKind;
      if (done) break;
      const auto& d = decomposed[rng() % decomposed.size()];
      const Mutation m = kAllMutations[round % kAllMutations.size()];
      if (applied[m] >= kMutationsPerKind) continue;
      auto bad = mutate(d.result, m, rng);
      if (!bad) continue;
      // Only genuine damage counts: the reference checker must see a violation.
      if (naive_violations(d.graph, *bad).empty()) {
        ++skipped;
        continue;
      }
      ++applied[m];
      const VerificationReport rep = verify_result(d.graph, *bad);
      bool caught = false;
      for (const auto& c : rep.checks) caught = caught || (!c.passed && !c.witness.empty());
      if (!caught) o.fail(mutation_name(m) + " on " + d.inst->label + " went unnoticed");
    }
    std::ostringstream s;
    for (Mutation m : kAllMutations) {
      s << mutation_name(m) << " " << applied[m] << ", ";
      if (applied[m] < kMutationsPerKind) o.fail(mutation_name(m) + " applied only " + std::to_string(applied[m]) + " times");
    }
    s << "harmless draws skipped " << skipped;
    o.detail = s.str();
    return o;
  });

  std::cout << (g_failures == 0 ? "ALL PASS" : std::to_string(g_failures) + " criteria FAILED") << std::endl;
  return g_failures == 0 ? 0 : 1;
}
