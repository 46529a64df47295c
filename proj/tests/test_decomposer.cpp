#include <gtest/gtest.h>

#include "cwq/corpus.hpp"
#include "cwq/decomposer.hpp"
#include "cwq/errors.hpp"
#include "cwq/generators.hpp"
#include "mutations.hpp"
#include "support.hpp"

using namespace cwq;
using namespace cwq::testing;

namespace {

std::set<std::string> failed_checks(const VerificationReport& rep) {
  std::set<std::string> out;
  for (const auto& c : rep.checks) {
    if (!c.passed) out.insert(c.name);
  }
  return out;
}

DecompositionResult checked(const CwExpr& e) {
  DecompositionResult r = decompose(e);
  const ColoredGraph g = evaluate(e);
  EXPECT_TRUE(naive_violations(g, r).empty());
  EXPECT_TRUE(verify_result(g, r).all_passed());
  return r;
}

}  // namespace

TEST(Decompose, SingleLeaf) {
  DecompositionResult r = checked(parse("cw k=1\n(v a 1)"));
  EXPECT_EQ(r.partition.size(), 1u);
  EXPECT_EQ(r.tree.bags.size(), 1u);
  EXPECT_EQ(r.tree.bags[0], (Bag{"a"}));
  EXPECT_EQ(r.part_colors.at("a"), 1);
}

TEST(Decompose, SingleEdge) {
  DecompositionResult r = checked(parse("cw k=2\n(join 1 2 (union (v a 1) (v b 2)))"));
  EXPECT_EQ(r.partition.size(), 2u);
  EXPECT_LE(width(r.tree), 1);
}

TEST(Decompose, JoinMergesSameColouredParts) {
  // Star with centre c coloured 2 and leaves a, b coloured 1.
  DecompositionResult r = checked(parse("cw k=2\n(join 1 2 (union (union (v a 1) (v b 1)) (v c 2)))"));
  ASSERT_EQ(r.partition.size(), 2u);
  EXPECT_EQ(r.partition.part("c"), (VertexSet{"c"}));
  bool merged = false;
  for (const auto& [id, members] : r.partition.parts()) {
    if (id.rfind("merge(1,", 0) == 0) merged = members == VertexSet{"a", "b"};
  }
  EXPECT_TRUE(merged);
}

TEST(Decompose, RejectsNonStrictInput) {
  EXPECT_THROW(decompose(parse("cw k=2\n(join 1 2 (v a 1))")), ContractError);
}

TEST(Decompose, PathOfLengthFive) {
  CwExpr e = gen_path("x", "y", 5, 3, 1, 2, 1);
  DecompositionResult r = checked(e);
  EXPECT_LE(width(r.tree), 2);
}

TEST(Decompose, SubdividedK4QuotientNeedsWidthThree) {
  CwExpr e = gen_subdivided_clique(4, 1);
  DecompositionResult r = checked(e);
  const int tw = brute_treewidth(quotient(evaluate(e).graph, r.partition).graph);
  EXPECT_GE(tw, 3);
  EXPECT_LE(tw, e.k - 1);
}

TEST(Decompose, Deterministic) {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 20; ++round) {
    CwExpr e = random_strict_expression(rng, 1 + round % 5, 25);
    EXPECT_EQ(decompose(e), decompose(e));
  }
}

TEST(Decompose, RandomCorpusVerifiesAndMatchesOracle) {
  CorpusOptions opt;
  opt.seed = 42;
  opt.count = 150;
  opt.max_k = 6;
  opt.max_leaves = 30;
  for (const auto& e : generate_corpus(opt)) {
    const ColoredGraph g = evaluate(e);
    DecompositionResult r = decompose(e);
    ASSERT_TRUE(naive_violations(g, r).empty()) << print(e);
    ASSERT_TRUE(verify_result(g, r).all_passed()) << print(e);
    const Graph q = quotient(g.graph, r.partition).graph;
    if (q.vertex_count() <= 10) ASSERT_LE(permutation_treewidth(q), e.k - 1);
  }
}

TEST(Verify, ReportsEveryCheckByName) {
  CwExpr e = parse("cw k=2\n(join 1 2 (union (v a 1) (v b 2)))");
  VerificationReport rep = verify_result(evaluate(e), decompose(e));
  std::vector<std::string> names;
  for (const auto& c : rep.checks) names.push_back(c.name);
  EXPECT_EQ(names, (std::vector<std::string>{"partition", "part_colors", "monochromatic", "dominated", "tree", "td1",
                                             "td2", "width", "rainbow", "color_subtrees"}));
  EXPECT_THROW(rep.at("nope"), InputError);
}

TEST(Verify, DeletedBagMemberBreaksEdgeCover) {
  CwExpr e = parse("cw k=2\n(join 1 2 (union (v a 1) (v b 2)))");
  DecompositionResult r = decompose(e);
  for (auto& bag : r.tree.bags) bag.erase("b");
  r.tree.bags[r.rainbow_node].insert("b");
  r.tree.bags[r.rainbow_node].erase("a");
  VerificationReport rep = verify_result(evaluate(e), r);
  EXPECT_FALSE(rep.at("td2").passed);
  EXPECT_FALSE(rep.at("td2").witness.empty());
}

TEST(Verify, OversizedBagBreaksWidth) {
  CwExpr e = parse("cw k=1\n(union (v a 1) (v b 1))");
  DecompositionResult r = decompose(e);
  r.tree.bags[0] = {"a", "b"};
  EXPECT_FALSE(verify_result(evaluate(e), r).at("width").passed);
}

TEST(Verify, UndominatedPartIsReported) {
  Graph g = make_graph({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}});
  ColoredGraph cg(g, 1, {{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}});
  DecompositionResult r;
  r.k = 1;
  r.partition = Partition::whole(g);
  r.part_colors[r.partition.parts().begin()->first] = 1;
  r.tree.bags = {{r.partition.parts().begin()->first}};
  VerificationReport rep = verify_result(cg, r);
  EXPECT_FALSE(rep.at("dominated").passed);
  EXPECT_TRUE(rep.at("monochromatic").passed);
}

// Every mutation kind, on many instances: verify_result flags exactly the
// checks the naive oracle says are broken.
TEST(Verify, MutationsAgreeWithNaiveOracle) {
  std::mt19937_64 rng(43);
  CorpusOptions opt;
  opt.seed = 44;
  opt.count = 60;
  opt.max_k = 6;
  opt.max_leaves = 25;
  std::map<Mutation, int> caught;
  for (const auto& e : generate_corpus(opt)) {
    const ColoredGraph g = evaluate(e);
    const DecompositionResult r = decompose(e);
    for (Mutation m : kAllMutations) {
      for (int attempt = 0; attempt < 4; ++attempt) {
        auto bad = mutate(r, m, rng);
        if (!bad) break;
        const auto expected = naive_violations(g, *bad);
        const auto rep = verify_result(g, *bad);
        const auto flagged = failed_checks(rep);
        // Once the tree itself is broken the subtree conditions lose their
        // meaning, so only the tree verdict is compared.
        if (expected.count("tree")) {
          ASSERT_TRUE(flagged.count("tree")) << print(e);
        } else {
          ASSERT_EQ(flagged, expected) << mutation_name(m) << "\n" << print(e);
        }
        for (const auto& c : rep.checks) {
          if (!c.passed) ASSERT_FALSE(c.witness.empty()) << c.name;
        }
        if (!expected.empty()) ++caught[m];
      }
    }
  }
  for (Mutation m : kAllMutations) EXPECT_GT(caught[m], 0) << mutation_name(m);
}
