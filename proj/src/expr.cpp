#include "cwq/expr.hpp"

#include <algorithm>
#include <numeric>

#include "cwq/errors.hpp"
#include "expr_engine.hpp"

namespace cwq {

using detail::Evaluation;

namespace {

void require_child(const ExprPtr& child, const char* what) {
  if (!child) throw InputError(std::string(what) + " needs a child expression");
}

void require_color(Color c) {
  if (c < 1) throw InputError("colour " + std::to_string(c) + " must be positive");
}

std::string color_list(Color a, Color b) { return std::to_string(a) + " " + std::to_string(b); }

}  // namespace

ExprPtr make_leaf(VertexId vertex, Color color, SourcePos pos) {
  if (vertex.empty()) throw InputError("leaf vertex id must be nonempty");
  require_color(color);
  return std::make_shared<const ExprNode>(ExprNode{Leaf{std::move(vertex), color}, pos});
}

ExprPtr make_union(ExprPtr left, ExprPtr right, SourcePos pos) {
  require_child(left, "union");
  require_child(right, "union");
  return std::make_shared<const ExprNode>(ExprNode{Union{std::move(left), std::move(right)}, pos});
}

ExprPtr make_recolor(Color from, Color to, ExprPtr child, SourcePos pos) {
  require_child(child, "recolor");
  require_color(from);
  require_color(to);
  if (from == to) throw InputError("recolor " + color_list(from, to) + ": i and j must differ");
  return std::make_shared<const ExprNode>(ExprNode{Recolor{from, to, std::move(child)}, pos});
}

ExprPtr make_join(Color first, Color second, ExprPtr child, SourcePos pos) {
  require_child(child, "join");
  require_color(first);
  require_color(second);
  if (first == second) throw InputError("join " + color_list(first, second) + ": i and j must differ");
  return std::make_shared<const ExprNode>(ExprNode{Join{first, second, std::move(child)}, pos});
}

std::size_t leaf_count(const ExprNode& root) {
  return fold<std::size_t>(root, [](const ExprNode& node, std::span<std::size_t> kids, const std::string&) {
    if (std::holds_alternative<Leaf>(node.op)) return std::size_t{1};
    return std::accumulate(kids.begin(), kids.end(), std::size_t{0});
  });
}

std::size_t node_count(const ExprNode& root) {
  return fold<std::size_t>(root, [](const ExprNode&, std::span<std::size_t> kids, const std::string&) {
    return std::accumulate(kids.begin(), kids.end(), std::size_t{1});
  });
}

Color max_color(const ExprNode& root) {
  return fold<Color>(root, [](const ExprNode& node, std::span<Color> kids, const std::string&) {
    Color best = kids.empty() ? 0 : *std::max_element(kids.begin(), kids.end());
    std::visit(
        [&](const auto& op) {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, Leaf>) best = std::max(best, op.color);
          if constexpr (std::is_same_v<T, Recolor>) best = std::max({best, op.from, op.to});
          if constexpr (std::is_same_v<T, Join>) best = std::max({best, op.first, op.second});
        },
        node.op);
    return best;
  });
}

ColoredGraph evaluate(const CwExpr& e) {
  if (!e.root) throw InputError("empty expression");
  Evaluation eval;
  fold<Evaluation::Sub>(*e.root, [&](const ExprNode& node, std::span<Evaluation::Sub> kids, const std::string&) {
    return std::visit(
        [&](const auto& op) -> Evaluation::Sub {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, Leaf>) {
            return eval.leaf(op.vertex, op.color);
          } else if constexpr (std::is_same_v<T, Union>) {
            return Evaluation::unite(std::move(kids[0]), std::move(kids[1]));
          } else if constexpr (std::is_same_v<T, Recolor>) {
            eval.recolor(kids[0], op.from, op.to);
            return std::move(kids[0]);
          } else {
            eval.join(kids[0], op.first, op.second);
            return std::move(kids[0]);
          }
        },
        node.op);
  });
  return eval.finish(e.k);
}

std::string_view rule_name(Rule rule) {
  switch (rule) {
    case Rule::DupVertex: return "DUP_VERTEX";
    case Rule::ColorRange: return "COLOR_RANGE";
    case Rule::Op2IUnused: return "OP2_I_UNUSED";
    case Rule::Op2JUnused: return "OP2_J_UNUSED";
    case Rule::Op3NoNewEdge: return "OP3_NO_NEW_EDGE";
    case Rule::EmptyOperand: return "EMPTY_OPERAND";
  }
  return "UNKNOWN";
}

ValidationReport validate_strict(const CwExpr& e) {
  ValidationReport report;
  if (!e.root) {
    report.violations.push_back({"/", Rule::EmptyOperand, "expression is empty"});
    return report;
  }
  Evaluation eval;
  std::map<VertexId, std::string> first_seen;
  auto add = [&](const std::string& path, Rule rule, std::string message) {
    report.violations.push_back({path, rule, std::move(message)});
  };
  auto check_range = [&](const std::string& path, Color c) {
    if (c < 1 || c > e.k) {
      add(path, Rule::ColorRange, "colour " + std::to_string(c) + " is outside 1.." + std::to_string(e.k));
    }
  };

  fold<Evaluation::Sub>(*e.root, [&](const ExprNode& node, std::span<Evaluation::Sub> kids, const std::string& path) {
    return std::visit(
        [&](const auto& op) -> Evaluation::Sub {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, Leaf>) {
            check_range(path, op.color);
            auto [it, fresh] = first_seen.emplace(op.vertex, path);
            if (!fresh) add(path, Rule::DupVertex, "vertex '" + op.vertex + "' already defined at " + it->second);
            return eval.leaf(op.vertex, op.color);
          } else if constexpr (std::is_same_v<T, Union>) {
            if (kids[0].size == 0 || kids[1].size == 0) add(path, Rule::EmptyOperand, "union operand defines no vertex");
            return Evaluation::unite(std::move(kids[0]), std::move(kids[1]));
          } else if constexpr (std::is_same_v<T, Recolor>) {
            check_range(path, op.from);
            check_range(path, op.to);
            if (!kids[0].uses(op.from)) {
              add(path, Rule::Op2IUnused, "recolor " + color_list(op.from, op.to) + ": colour " +
                                              std::to_string(op.from) + " is not used by the child");
            }
            if (!kids[0].uses(op.to)) {
              add(path, Rule::Op2JUnused, "recolor " + color_list(op.from, op.to) + ": colour " +
                                              std::to_string(op.to) + " is not used by the child");
            }
            eval.recolor(kids[0], op.from, op.to);
            return std::move(kids[0]);
          } else {
            check_range(path, op.first);
            check_range(path, op.second);
            if (eval.join(kids[0], op.first, op.second) == 0) {
              add(path, Rule::Op3NoNewEdge, "join " + color_list(op.first, op.second) + " adds no new edge");
            }
            return std::move(kids[0]);
          }
        },
        node.op);
  });
  return report;
}

ExprPtr permute_colors(const ExprPtr& root, std::span<const Color> perm) {
  auto map = [&](Color c) { return c >= 0 && static_cast<std::size_t>(c) < perm.size() ? perm[c] : c; };
  return fold<ExprPtr>(*root, [&](const ExprNode& node, std::span<ExprPtr> kids, const std::string&) {
    return std::visit(
        [&](const auto& op) -> ExprPtr {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, Leaf>) {
            return make_leaf(op.vertex, map(op.color), node.pos);
          } else if constexpr (std::is_same_v<T, Union>) {
            return make_union(std::move(kids[0]), std::move(kids[1]), node.pos);
          } else if constexpr (std::is_same_v<T, Recolor>) {
            return make_recolor(map(op.from), map(op.to), std::move(kids[0]), node.pos);
          } else {
            return make_join(map(op.first), map(op.second), std::move(kids[0]), node.pos);
          }
        },
        node.op);
  });
}

namespace {

struct Rebuilt {
  ExprPtr expr;
  Evaluation::Sub sub;
};

std::vector<Color> transposition(Color a, Color b) {
  std::vector<Color> perm(static_cast<std::size_t>(std::max(a, b)) + 1);
  std::iota(perm.begin(), perm.end(), 0);
  std::swap(perm[a], perm[b]);
  return perm;
}

}  // namespace

CwExpr normalize(const CwExpr& e) {
  evaluate(e);  // precondition: e evaluates
  Evaluation eval;
  auto out = fold<Rebuilt>(*e.root, [&](const ExprNode& node, std::span<Rebuilt> kids, const std::string&) {
    return std::visit(
        [&](const auto& op) -> Rebuilt {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, Leaf>) {
            return {make_leaf(op.vertex, op.color, node.pos), eval.leaf(op.vertex, op.color)};
          } else if constexpr (std::is_same_v<T, Union>) {
            ExprPtr joined = make_union(kids[0].expr, kids[1].expr, node.pos);
            return {joined, Evaluation::unite(std::move(kids[0].sub), std::move(kids[1].sub))};
          } else if constexpr (std::is_same_v<T, Recolor>) {
            Rebuilt child = std::move(kids[0]);
            if (!child.sub.uses(op.from)) return child;
            if (!child.sub.uses(op.to)) {
              // Pure renaming: permute the subtree instead.
              auto perm = transposition(op.from, op.to);
              child.expr = permute_colors(child.expr, perm);
              eval.swap_colors(child.sub, op.from, op.to);
              return child;
            }
            eval.recolor(child.sub, op.from, op.to);
            child.expr = make_recolor(op.from, op.to, child.expr, node.pos);
            return child;
          } else {
            Rebuilt child = std::move(kids[0]);
            if (eval.join(child.sub, op.first, op.second) == 0) return child;
            child.expr = make_join(op.first, op.second, child.expr, node.pos);
            return child;
          }
        },
        node.op);
  });
  return CwExpr{e.k, std::move(out.expr)};
}

}  // namespace cwq
