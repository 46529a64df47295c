#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "cwq/graph.hpp"

namespace cwq {

// Clique-width expressions under the strict operation rules: union of
// nonempty operands, recolour i->j with both colours in use, and join i-j
// adding at least one edge.

struct SourcePos {
  int line = 0;  // 0 = not from source text
  int column = 0;
};

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct Leaf {
  VertexId vertex;
  Color color;
};

struct Union {
  ExprPtr left;
  ExprPtr right;
};

// Every vertex coloured `from` becomes `to`.
struct Recolor {
  Color from;
  Color to;
  ExprPtr child;
};

// Adds all edges between vertices coloured `first` and vertices coloured `second`.
struct Join {
  Color first;
  Color second;
  ExprPtr child;
};

struct ExprNode {
  std::variant<Leaf, Union, Recolor, Join> op;
  SourcePos pos;
};

// Node factories. Recolor and Join reject equal colours and null children
// with InputError; colours must be positive.
ExprPtr make_leaf(VertexId vertex, Color color, SourcePos pos = {});
ExprPtr make_union(ExprPtr left, ExprPtr right, SourcePos pos = {});
ExprPtr make_recolor(Color from, Color to, ExprPtr child, SourcePos pos = {});
ExprPtr make_join(Color first, Color second, ExprPtr child, SourcePos pos = {});

// An expression together with its declared palette size k.
struct CwExpr {
  int k = 1;
  ExprPtr root;
};

std::size_t leaf_count(const ExprNode& root);
std::size_t node_count(const ExprNode& root);
// Highest colour mentioned anywhere in the expression.
Color max_color(const ExprNode& root);

// --- text format ---------------------------------------------------------
//
//   cw k=<int>
//   (join 1 2
//     (union
//       (v a 1)
//       (v b 2)))

// Parses a full document: header line followed by one expression.
CwExpr parse(std::string_view text);
// Parses a bare expression against the given palette.
CwExpr parse_expression(std::string_view text, int k);
// Canonical form: header line, then one node per line with two-space indent.
std::string print(const CwExpr& e);

// --- evaluation and strictness -------------------------------------------

// Throws InputError on duplicate leaf ids or colours outside 1..k.
ColoredGraph evaluate(const CwExpr& e);

enum class Rule { DupVertex, ColorRange, Op2IUnused, Op2JUnused, Op3NoNewEdge, EmptyOperand };

std::string_view rule_name(Rule rule);

struct Violation {
  std::string path;  // "/" for the root, then /left, /right, /child segments
  Rule rule;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool strict_valid() const noexcept { return violations.empty(); }
};

ValidationReport validate_strict(const CwExpr& e);

// Rewrites an expression into an equivalent strict one: vacuous joins and
// recolours of unused colours are dropped; a recolour i->j with j unused is
// replaced by swapping i and j throughout its subtree. The result evaluates
// to exactly the same coloured graph. Throws InputError if e does not evaluate.
CwExpr normalize(const CwExpr& e);

// Same expression with every colour mapped through perm (perm[c] for c in 1..).
ExprPtr permute_colors(const ExprPtr& root, std::span<const Color> perm);

// --- traversal -----------------------------------------------------------

// Post-order fold without recursion. visit(node, children_results, path)
// returns the result for node; children results are in left/right order.
template <class Result, class Visitor>
Result fold(const ExprNode& root, Visitor&& visit) {
  struct Frame {
    const ExprNode* node;
    std::string path;
    bool expanded;
  };
  std::vector<Frame> stack;
  std::vector<Result> results;
  stack.push_back({&root, "/", false});
  while (!stack.empty()) {
    Frame& top = stack.back();
    const ExprNode* node = top.node;
    const std::string base = top.path == "/" ? std::string() : top.path;
    if (!top.expanded) {
      top.expanded = true;
      if (auto* u = std::get_if<Union>(&node->op)) {
        stack.push_back({u->right.get(), base + "/right", false});
        stack.push_back({u->left.get(), base + "/left", false});
      } else if (auto* r = std::get_if<Recolor>(&node->op)) {
        stack.push_back({r->child.get(), base + "/child", false});
      } else if (auto* j = std::get_if<Join>(&node->op)) {
        stack.push_back({j->child.get(), base + "/child", false});
      }
      continue;
    }
    const std::size_t arity = std::holds_alternative<Leaf>(node->op)    ? 0
                              : std::holds_alternative<Union>(node->op) ? 2
                                                                        : 1;
    std::string path = std::move(top.path);
    stack.pop_back();
    std::span<Result> children(results.data() + (results.size() - arity), arity);
    Result out = visit(*node, children, path);
    results.erase(results.end() - static_cast<std::ptrdiff_t>(arity), results.end());
    results.push_back(std::move(out));
  }
  return std::move(results.back());
}

}  // namespace cwq
