#include "cwq/io.hpp"

#include <fstream>
#include <sstream>

#include "cwq/errors.hpp"

namespace cwq::io {

namespace {

// Runs a decoder, turning JSON type/shape errors into InputError.
template <class F>
auto decode(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("malformed ") + what + " JSON: " + ex.what());
  }
}

Json set_to_json(const VertexSet& s) {
  Json out = Json::array();
  for (const auto& v : s) out.push_back(v);
  return out;
}

VertexSet set_from_json(const Json& j) {
  VertexSet out;
  for (const auto& v : j) out.insert(v.get<std::string>());
  return out;
}

Json pair_json(const std::optional<VertexPair>& p) {
  if (!p) return nullptr;
  return Json::array({p->x, p->y});
}

Json distance_json(const Distance& d) {
  if (d.is_infinite()) return "INFINITE";
  return d.value();
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

Json to_json(const Graph& g) {
  Json j;
  j["vertices"] = g.vertices();
  Json edges = Json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back(Json::array({u, v}));
  j["edges"] = std::move(edges);
  return j;
}

Json to_json(const ColoredGraph& g) {
  Json j = to_json(g.graph);
  j["k"] = g.k;
  Json colors = Json::object();
  for (const auto& [v, c] : g.color) colors[v] = c;
  j["colors"] = std::move(colors);
  return j;
}

Graph graph_from_json(const Json& j) {
  return decode("graph", [&] {
    std::vector<VertexId> vertices = j.at("vertices").get<std::vector<std::string>>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw InputError("an edge must be a pair of vertex ids");
      edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    return Graph(std::move(vertices), edges);
  });
}

ColoredGraph colored_graph_from_json(const Json& j) {
  return decode("coloured graph", [&] {
    if (!j.contains("colors") || !j.contains("k")) throw InputError("coloured graph needs \"k\" and \"colors\"");
    std::map<VertexId, Color> colors;
    for (const auto& [v, c] : j.at("colors").items()) colors.emplace(v, c.get<int>());
    return ColoredGraph(graph_from_json(j), j.at("k").get<int>(), std::move(colors));
  });
}

Json to_json(const Partition& p) {
  Json j = Json::object();
  for (const auto& [id, members] : p.parts()) j[id] = set_to_json(members);
  return j;
}

Partition partition_from_json(const Json& j) {
  return decode("partition", [&] {
    std::map<PartId, VertexSet> parts;
    for (const auto& [id, members] : j.items()) parts.emplace(id, set_from_json(members));
    return Partition(std::move(parts));
  });
}

Json to_json(const TreeDecomposition& td) {
  Json j;
  Json nodes = Json::array();
  Json bags = Json::object();
  for (TreeNode t = 0; t < td.node_count(); ++t) {
    nodes.push_back(t);
    bags[std::to_string(t)] = set_to_json(td.bags[t]);
  }
  j["nodes"] = std::move(nodes);
  Json edges = Json::array();
  for (auto [a, b] : td.edges) edges.push_back(Json::array({a, b}));
  j["edges"] = std::move(edges);
  j["bags"] = std::move(bags);
  return j;
}

TreeDecomposition tree_decomposition_from_json(const Json& j) {
  return decode("tree decomposition", [&] {
    TreeDecomposition td;
    const Json& bags = j.at("bags");
    if (bags.is_array()) {
      for (const auto& bag : bags) td.bags.push_back(set_from_json(bag));
    } else {
      // Keyed by node index; nodes must be exactly 0..n-1.
      td.bags.resize(bags.size());
      std::vector<bool> seen(bags.size(), false);
      for (const auto& [key, bag] : bags.items()) {
        std::size_t used = 0;
        std::size_t t = 0;
        try {
          t = std::stoul(key, &used);
        } catch (const std::logic_error&) {
          used = 0;
        }
        if (used != key.size() || t >= bags.size() || seen[t]) {
          throw InputError("tree nodes must be numbered 0..n-1, found '" + key + "'");
        }
        seen[t] = true;
        td.bags[t] = set_from_json(bag);
      }
    }
    if (j.contains("nodes") && j.at("nodes").size() != td.bags.size()) {
      throw InputError("tree decomposition node list does not match its bags");
    }
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw InputError("a tree edge must be a pair of node indices");
      td.edges.emplace_back(e[0].get<TreeNode>(), e[1].get<TreeNode>());
    }
    return td;
  });
}

Json to_json(const DecompositionResult& r) {
  Json j;
  j["k"] = r.k;
  j["parts"] = to_json(r.partition);
  Json colors = Json::object();
  for (const auto& [id, c] : r.part_colors) colors[id] = c;
  j["part_colors"] = std::move(colors);
  j["tree"] = to_json(r.tree);
  j["rainbow_node"] = r.rainbow_node;
  j["width"] = r.tree.bags.empty() ? -1 : width(r.tree);
  Json unions = Json::array();
  for (const auto& [node, kids] : r.union_children) unions.push_back(Json::array({node, kids.first, kids.second}));
  j["union_children"] = std::move(unions);
  return j;
}

DecompositionResult decomposition_from_json(const Json& j) {
  return decode("decomposition", [&] {
    DecompositionResult r;
    r.k = j.at("k").get<int>();
    r.partition = partition_from_json(j.at("parts"));
    for (const auto& [id, c] : j.at("part_colors").items()) r.part_colors.emplace(id, c.get<int>());
    r.tree = tree_decomposition_from_json(j.at("tree"));
    r.rainbow_node = j.at("rainbow_node").get<TreeNode>();
    if (j.contains("union_children")) {
      for (const auto& u : j.at("union_children")) {
        r.union_children.emplace(u.at(0).get<TreeNode>(), std::pair{u.at(1).get<TreeNode>(), u.at(2).get<TreeNode>()});
      }
    }
    return r;
  });
}

Json to_json(const VerificationReport& r) {
  Json j;
  j["all_passed"] = r.all_passed();
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json entry{{"name", c.name}, {"passed", c.passed}};
    if (!c.witness.empty()) entry["witness"] = c.witness;
    checks.push_back(std::move(entry));
  }
  j["checks"] = std::move(checks);
  return j;
}

Json to_json(const ValidationReport& r) {
  Json j;
  j["strict_valid"] = r.strict_valid();
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"path", v.path}, {"rule", std::string(rule_name(v.rule))}, {"message", v.message}});
  }
  j["violations"] = std::move(violations);
  return j;
}

Json to_json(const TdReport& r) {
  Json j{{"valid", r.valid()}, {"td1", r.td1}, {"td2", r.td2}, {"width", r.width}};
  if (!r.td1_witness.empty()) j["td1_witness"] = r.td1_witness;
  if (!r.td2_witness.empty()) j["td2_witness"] = r.td2_witness;
  return j;
}

Json map_to_json(const QiMap& m) {
  Json f = Json::object();
  for (const auto& [x, y] : m.f) f[x] = y;
  return Json{{"f", std::move(f)}, {"c", m.c}};
}

QiMap map_from_json(const Json& j, const Graph& source, const Graph& target) {
  return decode("map", [&] {
    QiMap m;
    m.source = source;
    m.target = target;
    for (const auto& [x, y] : j.at("f").items()) m.f.emplace(x, y.get<std::string>());
    m.c = j.at("c").get<double>();
    validate_map(m);
    return m;
  });
}

Json to_json(const QiReport& r) {
  Json j{{"passed", r.passed()}, {"qi1", r.qi1}, {"qi2", r.qi2}};
  j["lower_margin"] = r.lower_margin ? Json(*r.lower_margin) : Json(nullptr);
  j["lower_witness"] = pair_json(r.lower_witness);
  j["upper_margin"] = r.upper_margin ? Json(*r.upper_margin) : Json(nullptr);
  j["upper_witness"] = pair_json(r.upper_witness);
  j["infinity_mismatch"] = pair_json(r.infinity_mismatch);
  j["worst_cover"] = distance_json(r.worst_cover);
  j["worst_cover_vertex"] = r.worst_cover_vertex ? Json(*r.worst_cover_vertex) : Json(nullptr);
  return j;
}

Json to_json(const PartQiReport& r) {
  Json j{{"passed", r.passed}, {"c", r.c}};
  j["lower_violation"] = pair_json(r.lower_violation);
  j["upper_violation"] = pair_json(r.upper_violation);
  j["max_contraction"] = r.max_contraction;
  j["most_contracted"] = pair_json(r.most_contracted);
  j["min_lower_slack"] = r.min_lower_slack ? Json(*r.min_lower_slack) : Json(nullptr);
  j["tightest_lower"] = pair_json(r.tightest_lower);
  return j;
}

Json to_json(const CoverFamily& cf) {
  Json collections = Json::array();
  for (const auto& collection : cf.collections) {
    Json sets = Json::array();
    for (const auto& s : collection) sets.push_back(set_to_json(s));
    collections.push_back(std::move(sets));
  }
  return Json{{"n", cf.n}, {"r", cf.r}, {"bound", cf.bound}, {"collections", std::move(collections)}};
}

CoverFamily cover_from_json(const Json& j) {
  return decode("cover", [&] {
    CoverFamily cf;
    cf.n = j.at("n").get<int>();
    cf.r = j.at("r").get<double>();
    cf.bound = j.at("bound").get<double>();
    for (const auto& collection : j.at("collections")) {
      auto& out = cf.collections.emplace_back();
      for (const auto& s : collection) out.push_back(set_from_json(s));
    }
    return cf;
  });
}

Json to_json(const CoverReport& r) {
  Json j{{"passed", r.passed()}, {"well_formed", r.well_formed}, {"cf1", r.cf1}, {"cf2", r.cf2}, {"cf3", r.cf3}};
  j["max_weak_diameter"] = distance_json(r.max_weak_diameter);
  if (!r.witness.empty()) j["witness"] = r.witness;
  return j;
}

Json to_json(const MinorModel& m) {
  Json branch = Json::object();
  for (const auto& [v, s] : m.branch_sets) branch[v] = set_to_json(s);
  Json paths = Json::array();
  for (const auto& [e, s] : m.edge_paths) {
    paths.push_back({{"edge", Json::array({e.first, e.second})}, {"vertices", set_to_json(s)}});
  }
  return Json{{"branch_sets", std::move(branch)}, {"edge_paths", std::move(paths)}};
}

Json to_json(const MinorModelFacts& f) {
  return Json{{"radius", f.radius},
              {"required_separation", f.required_separation},
              {"min_branch_separation", distance_json(f.min_branch_separation)},
              {"min_path_separation", distance_json(f.min_path_separation)}};
}

Json to_json(const InstanceReport& r) {
  Json j{{"passed", r.all_passed()}, {"strict", r.strict}, {"vertices", r.vertices}, {"edges", r.edges},
         {"parts", r.parts}, {"width", r.width}};
  if (!r.error.empty()) j["error"] = r.error;
  j["verification"] = to_json(r.verification);
  j["partqi"] = r.partqi ? to_json(*r.partqi) : Json(nullptr);
  j["qi"] = r.qi ? to_json(*r.qi) : Json(nullptr);
  j["quotient_treewidth"] = r.quotient_treewidth ? Json(*r.quotient_treewidth) : Json(nullptr);
  j["treewidth_ok"] = r.treewidth_ok;
  return j;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& ex) {
    int line = 1;
    int column = 1;
    for (std::size_t at = 0; at + 1 < ex.byte && at < text.size(); ++at) {
      if (text[at] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(std::string("invalid JSON: ") + ex.what(), line, column);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw InputError("failed writing '" + path + "'");
}

std::string to_dot(const Graph& g) {
  std::string out = "graph G {\n";
  for (const auto& v : g.vertices()) out += "  " + quote(v) + ";\n";
  for (const auto& [u, v] : g.edges()) out += "  " + quote(u) + " -- " + quote(v) + ";\n";
  return out + "}\n";
}

std::string to_dot(const ColoredGraph& g) {
  std::string out = "graph G {\n";
  for (const auto& v : g.graph.vertices()) {
    out += "  " + quote(v) + " [label=" + quote(v + ":" + std::to_string(g.color.at(v))) + "];\n";
  }
  for (const auto& [u, v] : g.graph.edges()) out += "  " + quote(u) + " -- " + quote(v) + ";\n";
  return out + "}\n";
}

std::string to_dot(const TreeDecomposition& td, std::optional<TreeNode> highlight) {
  std::string out = "graph T {\n  node [shape=box];\n";
  for (TreeNode t = 0; t < td.node_count(); ++t) {
    std::string label = std::to_string(t) + ": {";
    bool first = true;
    for (const auto& v : td.bags[t]) {
      label += (first ? "" : ", ") + v;
      first = false;
    }
    label += "}";
    out += "  n" + std::to_string(t) + " [label=" + quote(label) + (highlight == t ? ", style=bold" : "") + "];\n";
  }
  for (auto [a, b] : td.edges) out += "  n" + std::to_string(a) + " -- n" + std::to_string(b) + ";\n";
  return out + "}\n";
}

}  // namespace cwq::io
