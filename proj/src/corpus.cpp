#include "cwq/corpus.hpp"

#include <algorithm>
#include <set>

#include "cwq/errors.hpp"
#include "cwq/treedecomp.hpp"

namespace cwq {

namespace {

struct Component {
  ExprPtr expr;
  std::vector<std::size_t> members;  // global vertex numbers
};

class Builder {
 public:
  Builder(std::mt19937_64& rng, int k) : rng_(rng), k_(k) {}

  Component leaf() {
    const std::size_t v = colors_.size();
    const Color c = pick(1, k_);
    colors_.push_back(c);
    return Component{make_leaf("v" + std::to_string(v), c), {v}};
  }

  static Component unite(Component a, Component b) {
    a.members.insert(a.members.end(), b.members.begin(), b.members.end());
    return Component{make_union(a.expr, b.expr), std::move(a.members)};
  }

  // Applies one random strict unary operation; false when none exists.
  bool unary(Component& c, double join_weight) {
    std::set<Color> used;
    for (std::size_t v : c.members) used.insert(colors_[v]);
    std::vector<std::pair<Color, Color>> joins;
    std::vector<std::pair<Color, Color>> recolors;
    for (Color i : used) {
      for (Color j : used) {
        if (i == j) continue;
        recolors.emplace_back(i, j);
        if (i < j && join_adds_edge(c, i, j)) joins.emplace_back(i, j);
      }
    }
    if (joins.empty() && recolors.empty()) return false;
    const bool do_join = !joins.empty() && (recolors.empty() || chance(join_weight));
    if (do_join) {
      auto [i, j] = joins[pick_index(joins.size())];
      for (std::size_t u : c.members) {
        for (std::size_t v : c.members) {
          if (colors_[u] == i && colors_[v] == j) edges_.insert({std::min(u, v), std::max(u, v)});
        }
      }
      c.expr = chance(0.5) ? make_join(i, j, c.expr) : make_join(j, i, c.expr);
    } else {
      auto [i, j] = recolors[pick_index(recolors.size())];
      for (std::size_t v : c.members) {
        if (colors_[v] == i) colors_[v] = j;
      }
      c.expr = make_recolor(i, j, c.expr);
    }
    return true;
  }

  bool chance(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p; }
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::size_t pick_index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

 private:
  bool join_adds_edge(const Component& c, Color i, Color j) const {
    for (std::size_t u : c.members) {
      if (colors_[u] != i) continue;
      for (std::size_t v : c.members) {
        if (colors_[v] == j && !edges_.count({std::min(u, v), std::max(u, v)})) return true;
      }
    }
    return false;
  }

  std::mt19937_64& rng_;
  int k_;
  std::vector<Color> colors_;
  std::set<std::pair<std::size_t, std::size_t>> edges_;
};

}  // namespace

CwExpr random_strict_expression(std::mt19937_64& rng, int k, std::size_t max_leaves) {
  if (k < 1) throw InputError("palette must be at least 1");
  if (max_leaves < 1) throw InputError("need at least one leaf");
  Builder b(rng, k);
  const auto leaves = static_cast<std::size_t>(b.pick(1, static_cast<int>(max_leaves)));
  std::vector<Component> pool;
  for (std::size_t v = 0; v < leaves; ++v) pool.push_back(b.leaf());

  // Unary runs on the final component before stopping.
  int tail = b.pick(0, 4);
  while (pool.size() > 1 || tail > 0) {
    if (pool.size() > 1 && b.chance(0.35)) {
      const std::size_t a = b.pick_index(pool.size());
      Component first = std::move(pool[a]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(a));
      const std::size_t c = b.pick_index(pool.size());
      Component second = std::move(pool[c]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(c));
      pool.push_back(Builder::unite(std::move(first), std::move(second)));
      continue;
    }
    Component& target = pool[b.pick_index(pool.size())];
    const int run = b.pick(1, 4);
    bool applied = false;
    for (int step = 0; step < run; ++step) {
      if (!b.unary(target, 0.7)) break;
      applied = true;
    }
    if (pool.size() == 1) {
      if (!applied) break;
      --tail;
    }
  }
  return CwExpr{k, pool.front().expr};
}

std::vector<CwExpr> generate_corpus(const CorpusOptions& options) {
  if (options.max_k < 1) throw InputError("max_k must be at least 1");
  std::mt19937_64 rng(options.seed);
  std::vector<CwExpr> out;
  out.reserve(options.count);
  for (std::size_t n = 0; n < options.count; ++n) {
    const int k = std::uniform_int_distribution<int>(1, options.max_k)(rng);
    out.push_back(random_strict_expression(rng, k, options.max_leaves));
  }
  return out;
}

bool InstanceReport::all_passed() const {
  return strict && error.empty() && verification.all_passed() && partqi && partqi->passed && qi && qi->passed() &&
         treewidth_ok;
}

InstanceReport audit_expression(const CwExpr& e, std::size_t oracle_cap) {
  InstanceReport report;
  try {
    report.strict = validate_strict(e).strict_valid();
    if (!report.strict) return report;
    const ColoredGraph g = evaluate(e);
    report.vertices = g.graph.vertex_count();
    report.edges = g.graph.edge_count();
    const DecompositionResult result = decompose(e);
    report.parts = result.partition.size();
    report.width = width(result.tree);
    report.verification = verify_result(g, result);
    report.partqi = check_partqi_tight(g.graph, result.partition, 2);
    QiMap projection = projection_map(g.graph, result.partition);
    projection.c = 3;
    report.qi = check_qi(projection);
    if (report.parts <= oracle_cap) {
      TreewidthOptions options;
      options.cap = oracle_cap;
      report.quotient_treewidth = brute_treewidth(projection.target, options);
      report.treewidth_ok = *report.quotient_treewidth <= e.k - 1;
    }
  } catch (const Error& ex) {
    report.error = ex.what();
  }
  return report;
}

}  // namespace cwq
