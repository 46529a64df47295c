#pragma once

#include <string>

#include <json.hpp>

#include "cwq/andim.hpp"
#include "cwq/corpus.hpp"
#include "cwq/decomposer.hpp"
#include "cwq/generators.hpp"
#include "cwq/graph.hpp"
#include "cwq/quasi_iso.hpp"
#include "cwq/treedecomp.hpp"

namespace cwq::io {

using Json = nlohmann::ordered_json;

// Graphs: {"vertices": [...], "edges": [[u, v], ...]} plus, for coloured
// graphs, "k" and "colors": {vertex: colour}.
Json to_json(const Graph& g);
Json to_json(const ColoredGraph& g);
Graph graph_from_json(const Json& j);
// Throws InputError when "colors" or "k" is missing.
ColoredGraph colored_graph_from_json(const Json& j);

// Partitions: {part id: [vertices]}.
Json to_json(const Partition& p);
Partition partition_from_json(const Json& j);

// {"nodes": [0, 1, ...], "edges": [[a, b], ...], "bags": {"0": [...], ...}}
// Reading also accepts "bags" as a plain array indexed by node.
Json to_json(const TreeDecomposition& td);
TreeDecomposition tree_decomposition_from_json(const Json& j);

Json to_json(const DecompositionResult& r);
DecompositionResult decomposition_from_json(const Json& j);

Json to_json(const VerificationReport& r);
Json to_json(const ValidationReport& r);
Json to_json(const TdReport& r);

// {"f": {source: target}, "c": real}; the graphs travel separately.
Json map_to_json(const QiMap& m);
QiMap map_from_json(const Json& j, const Graph& source, const Graph& target);
Json to_json(const QiReport& r);
Json to_json(const PartQiReport& r);

// {"n": int, "r": real, "bound": real, "collections": [[[...], ...], ...]}
Json to_json(const CoverFamily& cf);
CoverFamily cover_from_json(const Json& j);
Json to_json(const CoverReport& r);

// {"branch_sets": {v: [...]}, "edge_paths": [{"edge": [u, v], "vertices": [...]}]}
Json to_json(const MinorModel& m);
Json to_json(const MinorModelFacts& f);

Json to_json(const InstanceReport& r);

Json parse_json(const std::string& text);  // ParseError on malformed JSON
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

// Graphviz output. Colours, when given, become node labels "<id>:<colour>".
std::string to_dot(const Graph& g);
std::string to_dot(const ColoredGraph& g);
std::string to_dot(const TreeDecomposition& td, std::optional<TreeNode> highlight = std::nullopt);

}  // namespace cwq::io
