#include "cwq/decomposer.hpp"

#include <algorithm>

#include "cwq/errors.hpp"

namespace cwq {

namespace {

std::string_view why_needed(Rule rule) {
  switch (rule) {
    case Rule::DupVertex: return "leaf vertices must be distinct so that every union is disjoint";
    case Rule::ColorRange: return "bag sizes are bounded by the palette size, so colours must lie in 1..k";
    case Rule::Op2IUnused:
    case Rule::Op2JUnused:
      return "the recolour step needs both colours present at the rainbow node so the merged colour class "
             "still spans a subtree";
    case Rule::Op3NoNewEdge:
      return "the join step needs both colours in use so the merged parts are nonempty and dominated";
    case Rule::EmptyOperand: return "union operands must be nonempty";
  }
  return "";
}

class Decomposer {
 public:
  explicit Decomposer(int k) : k_(k) {}

  struct Sub {
    std::map<Color, std::vector<PartId>> parts_by_color;
    TreeNode q = 0;
    std::vector<TreeNode> nodes;
  };

  Sub leaf(const Leaf& op) {
    if (!parts_.emplace(op.vertex, VertexSet{op.vertex}).second) {
      throw ContractError("part id '" + op.vertex + "' is already taken");
    }
    colors_[op.vertex] = op.color;
    TreeNode t = new_node(Bag{op.vertex});
    Sub s;
    s.parts_by_color[op.color].push_back(op.vertex);
    s.q = t;
    s.nodes.push_back(t);
    return s;
  }

  Sub unite(Sub a, Sub b) {
    // Minimal rainbow subset of the two rainbow bags: one part per colour,
    // preferring the left bag, then the smallest part id.
    std::set<Color> used;
    for (const auto& [c, ps] : a.parts_by_color) used.insert(c);
    for (const auto& [c, ps] : b.parts_by_color) used.insert(c);
    Bag rainbow;
    for (Color c : used) {
      auto pick = first_of_color(bags_[a.q], c);
      if (!pick) pick = first_of_color(bags_[b.q], c);
      if (!pick) throw ContractError("union: colour " + std::to_string(c) + " missing from both rainbow bags");
      rainbow.insert(*pick);
    }
    TreeNode q = new_node(std::move(rainbow));
    edges_.emplace_back(q, a.q);
    edges_.emplace_back(q, b.q);
    union_children_[q] = {a.q, b.q};

    for (auto& [c, ps] : b.parts_by_color) {
      auto& dst = a.parts_by_color[c];
      dst.insert(dst.end(), ps.begin(), ps.end());
    }
    a.nodes.insert(a.nodes.end(), b.nodes.begin(), b.nodes.end());
    a.nodes.push_back(q);
    a.q = q;
    return a;
  }

  void recolor(Sub& s, Color from, Color to) {
    auto it = s.parts_by_color.find(from);
    std::vector<PartId> moved = std::move(it->second);
    s.parts_by_color.erase(it);
    for (const auto& p : moved) colors_[p] = to;
    auto& dst = s.parts_by_color[to];
    dst.insert(dst.end(), moved.begin(), moved.end());
  }

  void join(Sub& s, Color first, Color second) {
    const PartId merged_first = merge_class(s, first);
    const PartId merged_second = merge_class(s, second);
    const Bag& bag = bags_[s.q];
    if (!bag.count(merged_first) || !bag.count(merged_second)) {
      throw ContractError("join " + std::to_string(first) + " " + std::to_string(second) +
                          ": rainbow bag does not hold both merged parts");
    }
  }

  DecompositionResult finish(const Sub& root) {
    DecompositionResult r;
    r.k = k_;
    r.partition = Partition(std::move(parts_));
    r.part_colors = std::move(colors_);
    r.tree.bags = std::move(bags_);
    r.tree.edges = std::move(edges_);
    r.rainbow_node = root.q;
    r.union_children = std::move(union_children_);
    return r;
  }

 private:
  TreeNode new_node(Bag bag) {
    bags_.push_back(std::move(bag));
    return bags_.size() - 1;
  }

  std::optional<PartId> first_of_color(const Bag& bag, Color c) const {
    for (const auto& p : bag) {
      if (colors_.at(p) == c) return p;
    }
    return std::nullopt;
  }

  // Replaces every part of colour c in this subtree by their union and
  // rewrites the subtree's bags. Returns the id of the resulting part.
  PartId merge_class(Sub& s, Color c) {
    auto& members = s.parts_by_color.at(c);
    if (members.size() == 1) return members.front();
    PartId merged = "merge(" + std::to_string(c) + "," + std::to_string(merge_seq_++) + ")";
    VertexSet vertices;
    for (const auto& p : members) {
      auto node = parts_.extract(p);
      vertices.merge(node.mapped());
      colors_.erase(p);
    }
    if (!parts_.emplace(merged, std::move(vertices)).second) {
      throw ContractError("part id '" + merged + "' is already taken");
    }
    colors_[merged] = c;
    const std::set<PartId> old(members.begin(), members.end());
    for (TreeNode t : s.nodes) {
      Bag& bag = bags_[t];
      bool hit = false;
      for (auto it = bag.begin(); it != bag.end();) {
        if (old.count(*it)) {
          it = bag.erase(it);
          hit = true;
        } else {
          ++it;
        }
      }
      if (hit) bag.insert(merged);
    }
    members.assign(1, merged);
    return merged;
  }

  int k_;
  std::map<PartId, VertexSet> parts_;
  std::map<PartId, Color> colors_;
  std::vector<Bag> bags_;
  std::vector<std::pair<TreeNode, TreeNode>> edges_;
  std::map<TreeNode, std::pair<TreeNode, TreeNode>> union_children_;
  std::size_t merge_seq_ = 0;
};

}  // namespace

DecompositionResult decompose(const CwExpr& e) {
  if (!e.root) throw InputError("empty expression");
  ValidationReport report = validate_strict(e);
  if (!report.strict_valid()) {
    const Violation& v = report.violations.front();
    throw ContractError("expression is not strict: " + std::string(rule_name(v.rule)) + " at " + v.path + ": " +
                        v.message + " (" + std::string(why_needed(v.rule)) + ")");
  }
  Decomposer d(e.k);
  using Sub = Decomposer::Sub;
  Sub root = fold<Sub>(*e.root, [&](const ExprNode& node, std::span<Sub> kids, const std::string&) {
    return std::visit(
        [&](const auto& op) -> Sub {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, Leaf>) {
            return d.leaf(op);
          } else if constexpr (std::is_same_v<T, Union>) {
            return d.unite(std::move(kids[0]), std::move(kids[1]));
          } else if constexpr (std::is_same_v<T, Recolor>) {
            d.recolor(kids[0], op.from, op.to);
            return std::move(kids[0]);
          } else {
            d.join(kids[0], op.first, op.second);
            return std::move(kids[0]);
          }
        },
        node.op);
  });
  return d.finish(root);
}

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.passed; });
}

const PropertyCheck& VerificationReport::at(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw InputError("no check named '" + name + "'");
}

VerificationReport verify_result(const ColoredGraph& g, const DecompositionResult& r) {
  VerificationReport report;
  auto record = [&](std::string name, bool ok, std::string witness = {}) {
    report.checks.push_back({std::move(name), ok, ok ? std::string() : std::move(witness)});
  };
  const auto& parts = r.partition.parts();

  bool partition_ok = true;
  try {
    r.partition.validate_for(g.graph);
  } catch (const Error& err) {
    partition_ok = false;
    record("partition", false, err.what());
  }
  if (partition_ok) record("partition", true);

  // Colours straight from the graph; part colour = colour of its first vertex.
  auto actual_color = [&](const PartId& p) -> std::optional<Color> {
    auto it = parts.find(p);
    if (it == parts.end()) return std::nullopt;
    auto c = g.color.find(*it->second.begin());
    if (c == g.color.end()) return std::nullopt;
    return c->second;
  };

  {
    std::string witness;
    for (const auto& [p, members] : parts) {
      auto recorded = r.part_colors.find(p);
      auto actual = actual_color(p);
      if (recorded == r.part_colors.end()) {
        witness = "part '" + p + "' has no recorded colour";
      } else if (!actual || *actual != recorded->second) {
        witness = "part '" + p + "' recorded as colour " + std::to_string(recorded->second) + " but coloured " +
                  (actual ? std::to_string(*actual) : std::string("?"));
      }
      if (!witness.empty()) break;
    }
    if (witness.empty() && r.part_colors.size() != parts.size()) {
      for (const auto& [p, c] : r.part_colors) {
        if (!parts.count(p)) {
          witness = "colour recorded for unknown part '" + p + "'";
          break;
        }
      }
    }
    record("part_colors", witness.empty(), witness);
  }

  {
    std::string witness;
    for (const auto& [p, members] : parts) {
      std::optional<Color> first;
      for (const auto& v : members) {
        auto c = g.color.find(v);
        if (c == g.color.end()) continue;
        if (first && *first != c->second) {
          witness = "part '" + p + "' mixes colours " + std::to_string(*first) + " and " + std::to_string(c->second);
          break;
        }
        first = c->second;
      }
      if (!witness.empty()) break;
    }
    record("monochromatic", witness.empty(), witness);
  }

  if (partition_ok) {
    std::string witness;
    for (const auto& [p, members] : parts) {
      if (!dominating_vertex(g.graph, members)) {
        witness = "part '" + p + "' is not contained in any closed neighbourhood";
        break;
      }
    }
    record("dominated", witness.empty(), witness);
  } else {
    record("dominated", false, "partition invalid");
  }

  const bool tree_ok = is_tree(r.tree);
  record("tree", tree_ok,
         std::to_string(r.tree.node_count()) + " nodes and " + std::to_string(r.tree.edges.size()) +
             " edges do not form a tree");

  std::string unknown;
  for (TreeNode t = 0; t < r.tree.node_count() && unknown.empty(); ++t) {
    for (const auto& p : r.tree.bags[t]) {
      if (!parts.count(p)) {
        unknown = "bag " + std::to_string(t) + " holds unknown part '" + p + "'";
        break;
      }
    }
  }
  if (tree_ok && partition_ok && unknown.empty()) {
    Quotient q = quotient(g.graph, r.partition);
    TdReport td = validate_td(q.graph, r.tree);
    record("td1", td.td1, td.td1_witness);
    record("td2", td.td2, td.td2_witness);
  } else {
    std::string why = !tree_ok ? "tree invalid" : !partition_ok ? "partition invalid" : unknown;
    record("td1", false, why);
    record("td2", false, why);
  }

  if (r.tree.node_count() == 0) {
    record("width", false, "no tree nodes");
  } else {
    const int w = width(r.tree);
    record("width", w <= g.k - 1, "width " + std::to_string(w) + " exceeds k - 1 = " + std::to_string(g.k - 1));
  }

  const std::set<Color> used = g.used_colors();
  if (r.rainbow_node >= r.tree.node_count()) {
    record("rainbow", false, "rainbow node " + std::to_string(r.rainbow_node) + " does not exist");
  } else {
    std::set<Color> present;
    for (const auto& p : r.tree.bags[r.rainbow_node]) {
      if (auto c = actual_color(p)) present.insert(*c);
    }
    std::string witness;
    for (Color c : used) {
      if (!present.count(c)) {
        witness = "bag " + std::to_string(r.rainbow_node) + " has no part of colour " + std::to_string(c);
        break;
      }
    }
    record("rainbow", witness.empty(), witness);
  }

  if (tree_ok) {
    std::string witness;
    for (Color c : used) {
      bool ok = nodes_form_subtree(r.tree, [&](TreeNode t) {
        return std::any_of(r.tree.bags[t].begin(), r.tree.bags[t].end(),
                           [&](const PartId& p) { return actual_color(p) == c; });
      });
      if (!ok) {
        witness = "nodes with a part of colour " + std::to_string(c) + " do not form a nonempty subtree";
        break;
      }
    }
    record("color_subtrees", witness.empty(), witness);
  } else {
    record("color_subtrees", false, "tree invalid");
  }
  return report;
}

}  // namespace cwq
