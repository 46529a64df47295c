#include <gtest/gtest.h>

#include <filesystem>

#include "cwq/andim.hpp"
#include "cwq/errors.hpp"
#include "cwq/generators.hpp"
#include "cwq/io.hpp"
#include "support.hpp"

using namespace cwq;
using namespace cwq::testing;
using cwq::io::Json;

TEST(Json, GraphRoundTrip) {
  Graph g = grid_graph(2, 3);
  Json j = io::to_json(g);
  EXPECT_EQ(j["vertices"].size(), 6u);
  EXPECT_EQ(io::graph_from_json(io::parse_json(j.dump())), g);
}

TEST(Json, ColoredGraphRoundTrip) {
  ColoredGraph g = evaluate(gen_subdivided_clique(4, 1));
  Json j = io::to_json(g);
  EXPECT_EQ(j["k"], 6);
  ColoredGraph back = io::colored_graph_from_json(j);
  EXPECT_EQ(back.graph, g.graph);
  EXPECT_EQ(back.color, g.color);
  EXPECT_EQ(back.k, g.k);
}

TEST(Json, DecompositionRoundTrip) {
  std::mt19937_64 rng(81);
  for (int round = 0; round < 20; ++round) {
    CwExpr e = random_strict_expression(rng, 1 + round % 6, 30);
    DecompositionResult r = decompose(e);
    EXPECT_EQ(io::decomposition_from_json(io::parse_json(io::to_json(r).dump())), r);
  }
}

TEST(Json, TreeDecompositionShapes) {
  TreeDecomposition td{{{"a", "b"}, {"b", "c"}}, {{0, 1}}};
  Json j = io::to_json(td);
  EXPECT_TRUE(j["bags"].is_object());
  EXPECT_EQ(io::tree_decomposition_from_json(j), td);
  Json as_array = Json::parse(R"({"edges": [[0, 1]], "bags": [["a", "b"], ["b", "c"]]})");
  EXPECT_EQ(io::tree_decomposition_from_json(as_array), td);
}

TEST(Json, PartitionMapAndCoverRoundTrip) {
  Graph g = path_graph(4);
  Partition p({{"L", {"p0", "p1"}}, {"R", {"p2", "p3"}}});
  EXPECT_EQ(io::partition_from_json(io::to_json(p)), p);

  QiMap m = projection_map(g, p);
  QiMap back = io::map_from_json(io::map_to_json(m), m.source, m.target);
  EXPECT_EQ(back.f, m.f);
  EXPECT_DOUBLE_EQ(back.c, m.c);

  CoverFamily cf = banded_cover(g, 1);
  EXPECT_EQ(io::cover_from_json(io::parse_json(io::to_json(cf).dump())), cf);
}

TEST(Json, MalformedInput) {
  try {
    io::parse_json("{\n  \"vertices\": [1,\n}");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  EXPECT_THROW(io::graph_from_json(Json::parse(R"({"vertices": "x"})")), InputError);
  EXPECT_THROW(io::graph_from_json(Json::parse(R"({"vertices": ["a"], "edges": [["a", "b"]]})")), InputError);
  EXPECT_THROW(io::partition_from_json(Json::parse("[1, 2]")), InputError);
  Graph g = path_graph(2);
  EXPECT_THROW(io::map_from_json(Json::parse(R"({"f": {"p0": "q"}, "c": 1})"), g, g), InputError);
}

TEST(Dot, GraphsAndDecompositions) {
  ColoredGraph g = evaluate(parse("cw k=2\n(join 1 2 (union (v a 1) (v b 2)))"));
  const std::string dot = io::to_dot(g);
  EXPECT_EQ(dot.rfind("graph", 0), 0u);
  EXPECT_NE(dot.find("a:1"), std::string::npos);
  EXPECT_NE(dot.find("--"), std::string::npos);
  TreeDecomposition td{{{"a"}, {"a", "b"}}, {{0, 1}}};
  const std::string tdot = io::to_dot(td, 1);
  EXPECT_NE(tdot.find("{a, b}"), std::string::npos);
}

TEST(Files, ReadWrite) {
  const auto dir = std::filesystem::temp_directory_path() / "cwq_io_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "x.txt").string();
  io::write_file(path, "hello");
  EXPECT_EQ(io::read_file(path), "hello");
  EXPECT_THROW(io::read_file((dir / "missing").string()), InputError);
  std::filesystem::remove_all(dir);
}
